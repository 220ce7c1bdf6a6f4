#pragma once
#include <string>

#include "crosscap/metric.hpp"

namespace crosscap {

// Built-in surface generators, all given as immersions so fixtures never
// depend on user files:
//   plane               (u, v, 0)
//   sphere              (cos u cos v, sin u cos v, sin v), poles outside the box
//   crosscap            (u, u v, v^2)
//   west(a02,a11,a20)   (u, u v, a02/2 v^2 + a11 u v + a20/2 u^2), a02 > 0
struct BuiltinSurface {
    Immersion3 immersion;
    MetricField metric;
};

bool is_builtin_surface(const std::string& name);
BuiltinSurface builtin_surface(const std::string& name);

// The degree-2 normal-form immersion for arbitrary coefficients.
Immersion3 west_immersion(double a02, double a11, double a20, Box2 box = {-1, 1, -1, 1});

} // namespace crosscap
