#pragma once
#include <vector>

#include "crosscap/curvature.hpp"
#include "crosscap/metric.hpp"

namespace crosscap {

// A chart region bounded by piecewise-smooth curves.  Edges are listed in
// traversal order for a positively oriented boundary (region on the left);
// corners mark the junctions where the tangent is allowed to jump.
struct Corner {
    int edge = 0;      // junction at the end of this edge
    double t = 0.0;    // traversal end parameter of that edge
};

struct Region {
    std::vector<Curve2> edges;
    std::vector<Corner> corners;
    int euler_char = 1;
    std::vector<Vec2> singular_points;
    std::vector<double> polar_radii;  // per singular point; <= 0 means default
};

struct QuadOptions {
    int nodes = 32;       // Gauss-Legendre nodes per axis; refinement doubles this
    double tolerance = 1e-4;  // two-level difference gate
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Checks closure, corner placement, smoothness of unlisted junctions,
// curve regularity, and that the singular-point discs fit the region.
void validate_region(const MetricField& m, const Region& reg);

// Winding-number test against a sampled boundary polygon; points within
// boundary_tol of the boundary count as contained.
bool region_contains(const Region& reg, Vec2 p, double boundary_tol = 1e-6);

// Integral of K dA over the region.  The area integral is taken edge by edge
// in cone coordinates around a center point (the singular point when there is
// one): the radial scaling desingularizes K sqrt(lambda), which matches the
// polar smoothness of K dA at an intrinsic cross cap.  The disc of polar
// radius r0 around the singular point and the remainder are integrated as
// separate radial pieces, each by tensor Gauss-Legendre with one refinement
// level for the error estimate.
QuadratureResult integrate_curvature(const MetricField& m, const Region& reg,
                                     const QuadOptions& opts = {});

// Integral of kappa_g ds over the boundary.  Panels touching a parameter
// where the curve meets a singular point stop short of it and append the
// extrapolated limit value over the skipped sliver.
QuadratureResult integrate_boundary(const MetricField& m, const Region& reg,
                                    const QuadOptions& opts = {});

// Interior angles at the listed corners, measured with the metric inner
// product; the convex/reflex branch comes from the metric area form.
std::vector<double> corner_angles(const MetricField& m, const Region& reg);

struct GBReport {
    double interior_integral = 0.0;
    double boundary_integral = 0.0;
    double corner_defect = 0.0;  // sum of (pi - interior angle)
    double total = 0.0;
    double target = 0.0;         // 2 pi chi
    double residual = 0.0;
    double error_estimate = 0.0;
};

GBReport gauss_bonnet_check(const MetricField& m, const Region& reg,
                            const QuadOptions& opts = {});

// Canonical region builders used by fixtures and the CLI.
Region disc_region(Vec2 center, double radius);
Region half_disc_region(Vec2 center, double radius);  // v >= center.v half
Region rect_region(const Box2& box);
Region triangle_region(Vec2 a, Vec2 b, Vec2 c);

} // namespace crosscap
