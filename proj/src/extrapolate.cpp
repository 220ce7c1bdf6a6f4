#include "crosscap/extrapolate.hpp"

#include <cmath>

#include "crosscap/errors.hpp"

namespace crosscap {

void RichardsonExtrapolator::add(double x, double f) {
    if (!xs_.empty() && x >= xs_.back()) {
        throw Error(Error::Kind::Internal, "extrapolation abscissas must decrease");
    }
    xs_.push_back(x);
    const std::size_t k = xs_.size() - 1;
    std::vector<double> row(std::min<std::size_t>(k, static_cast<std::size_t>(max_order_)) + 1);
    row[0] = f;
    for (std::size_t m = 1; m < row.size(); ++m) {
        const double xk = xs_[k];
        const double xkm = xs_[k - m];
        row[m] = (xkm * row[m - 1] - xk * diag_[m - 1]) / (xkm - xk);
    }
    const double value = row.back();
    if (k == 0) {
        best_value_ = last_value_ = value;
        best_error_ = last_error_ = std::abs(value);
    } else {
        last_error_ = std::abs(value - prev_);
        last_value_ = value;
        if (last_error_ < best_error_) {
            best_error_ = last_error_;
            best_value_ = value;
        }
    }
    prev_ = value;
    diag_ = std::move(row);
}

std::vector<double> wls_polynomial_fit(const std::vector<std::pair<double, double>>& samples,
                                       int degree) {
    const int n = degree + 1;
    if (static_cast<int>(samples.size()) < n) {
        throw Error(Error::Kind::Internal, "not enough samples for polynomial fit");
    }
    // Rescale abscissas to [0, 1] for conditioning; the constant term is
    // unaffected, higher coefficients are unscaled before returning.
    double xmax = 0.0;
    for (const auto& [x, g] : samples) xmax = std::max(xmax, std::abs(x));
    if (xmax == 0.0) xmax = 1.0;

    std::vector<double> ata(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> atb(static_cast<std::size_t>(n), 0.0);
    for (const auto& [x, g] : samples) {
        const double w = 1.0 / std::max(std::abs(x), 1e-300);
        std::vector<double> phi(static_cast<std::size_t>(n));
        phi[0] = 1.0;
        for (int i = 1; i < n; ++i) phi[i] = phi[i - 1] * (x / xmax);
        for (int i = 0; i < n; ++i) {
            atb[i] += w * phi[i] * g;
            for (int j = 0; j < n; ++j) ata[static_cast<std::size_t>(i) * n + j] += w * phi[i] * phi[j];
        }
    }
    // Gaussian elimination with partial pivoting.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(ata[static_cast<std::size_t>(r) * n + col]) >
                std::abs(ata[static_cast<std::size_t>(pivot) * n + col])) {
                pivot = r;
            }
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(ata[static_cast<std::size_t>(col) * n + j],
                          ata[static_cast<std::size_t>(pivot) * n + j]);
            }
            std::swap(atb[col], atb[pivot]);
        }
        const double d = ata[static_cast<std::size_t>(col) * n + col];
        if (d == 0.0) throw Error(Error::Kind::Internal, "singular normal equations");
        for (int r = col + 1; r < n; ++r) {
            const double m = ata[static_cast<std::size_t>(r) * n + col] / d;
            if (m == 0.0) continue;
            for (int j = col; j < n; ++j) {
                ata[static_cast<std::size_t>(r) * n + j] -= m * ata[static_cast<std::size_t>(col) * n + j];
            }
            atb[r] -= m * atb[col];
        }
    }
    std::vector<double> coeffs(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        double acc = atb[r];
        for (int j = r + 1; j < n; ++j) acc -= ata[static_cast<std::size_t>(r) * n + j] * coeffs[j];
        coeffs[r] = acc / ata[static_cast<std::size_t>(r) * n + r];
    }
    double scale = 1.0;
    for (int i = 1; i < n; ++i) {
        scale /= xmax;
        coeffs[i] *= scale;
    }
    return coeffs;
}

} // namespace crosscap
