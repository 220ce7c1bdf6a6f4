#pragma once
#include <cstddef>
#include <utility>
#include <vector>

namespace crosscap {

// Polynomial (Neville) extrapolation of samples f(x_k) to x = 0 over a
// strictly decreasing abscissa ladder.  Order is capped so that late samples
// use a sliding window; with a geometric ladder this is plain Richardson
// extrapolation.
class RichardsonExtrapolator {
public:
    explicit RichardsonExtrapolator(int max_order = 4) : max_order_(max_order) {}

    void add(double x, double f);

    std::size_t size() const { return xs_.size(); }
    // Best extrapolant seen so far and the associated step-to-step change.
    double value() const { return best_value_; }
    double error_estimate() const { return best_error_; }
    // Most recent extrapolant/change (used to detect the rounding floor).
    double last_value() const { return last_value_; }
    double last_error() const { return last_error_; }

private:
    int max_order_;
    std::vector<double> xs_;
    std::vector<double> diag_;   // last tableau row
    double prev_ = 0.0;
    double best_value_ = 0.0;
    double best_error_ = 0.0;
    double last_value_ = 0.0;
    double last_error_ = 0.0;
};

// Weighted least-squares fit of g(x) ~ c0 + c1 x + ... + c_{deg} x^deg with
// weights 1/x (small abscissas dominate).  Returns the coefficients.
std::vector<double> wls_polynomial_fit(const std::vector<std::pair<double, double>>& samples,
                                       int degree);

} // namespace crosscap
