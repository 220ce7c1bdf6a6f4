#include "crosscap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "crosscap/errors.hpp"

namespace crosscap {

namespace {

GaussLegendre compute_rule(int n) {
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw Error(Error::Kind::Internal, "gauss_legendre needs n >= 1");
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double pairwise_sum(std::vector<double>& values) {
    if (values.empty()) return 0.0;
    std::size_t n = values.size();
    while (n > 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i) values[i] = values[2 * i] + values[2 * i + 1];
        if (n % 2 == 1) values[n / 2] = values[n - 1];
        n = half;
    }
    return values[0];
}

} // namespace crosscap
