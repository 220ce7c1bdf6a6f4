#pragma once
#include <vector>

namespace crosscap {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence; results are cached.
const GaussLegendre& gauss_legendre(int n);

// Deterministic order-independent accumulation.
double pairwise_sum(std::vector<double>& values);

} // namespace crosscap
