#include "crosscap/jet.hpp"

#include <cmath>

#include "crosscap/errors.hpp"

namespace crosscap {

namespace {

void require_compatible(const Jet2& a, const Jet2& b) {
    if (a.order() != b.order() || a.base().u != b.base().u || a.base().v != b.base().v) {
        throw Error(Error::Kind::Internal, "jet arithmetic on mismatched order or base point");
    }
}

void require_compatible(const Jet1& a, const Jet1& b) {
    if (a.order() != b.order() || a.base() != b.base()) {
        throw Error(Error::Kind::Internal, "jet arithmetic on mismatched order or base point");
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

// ---------------------------------------------------------------------------
// Jet2

Jet2::Jet2(int order, Vec2 base)
    : order_(order), base_(base), c_(static_cast<std::size_t>(coeff_count(order)), 0.0) {
    if (order < 0) throw Error(Error::Kind::Internal, "negative jet order");
}

Jet2 Jet2::constant(double value, int order, Vec2 base) {
    Jet2 j(order, base);
    j.c_[0] = value;
    return j;
}

Jet2 Jet2::variable_u(Vec2 base, int order) {
    Jet2 j(order, base);
    j.c_[0] = base.u;
    if (order >= 1) j.coeff(1, 0) = 1.0;
    return j;
}

Jet2 Jet2::variable_v(Vec2 base, int order) {
    Jet2 j(order, base);
    j.c_[0] = base.v;
    if (order >= 1) j.coeff(0, 1) = 1.0;
    return j;
}

double Jet2::partial(int i, int j) const {
    if (i + j > order_) throw Error(Error::Kind::Internal, "partial order exceeds jet order");
    return factorial(i) * factorial(j) * coeff(i, j);
}

Jet2 Jet2::derivative_u() const {
    if (order_ == 0) throw Error(Error::Kind::Internal, "derivative of order-0 jet");
    Jet2 out(order_ - 1, base_);
    for (int i = 0; i <= order_ - 1; ++i)
        for (int j = 0; i + j <= order_ - 1; ++j)
            out.coeff(i, j) = (i + 1) * coeff(i + 1, j);
    return out;
}

Jet2 Jet2::derivative_v() const {
    if (order_ == 0) throw Error(Error::Kind::Internal, "derivative of order-0 jet");
    Jet2 out(order_ - 1, base_);
    for (int i = 0; i <= order_ - 1; ++i)
        for (int j = 0; i + j <= order_ - 1; ++j)
            out.coeff(i, j) = (j + 1) * coeff(i, j + 1);
    return out;
}

double Jet2::eval(Vec2 p) const {
    const double x = p.u - base_.u;
    const double y = p.v - base_.v;
    double result = 0.0;
    for (int d = 0; d <= order_; ++d) {
        for (int j = 0; j <= d; ++j) {
            double term = coeff(d - j, j);
            if (term == 0.0) continue;
            for (int k = 0; k < d - j; ++k) term *= x;
            for (int k = 0; k < j; ++k) term *= y;
            result += term;
        }
    }
    return result;
}

Jet2 Jet2::operator-() const {
    Jet2 out = *this;
    for (double& x : out.c_) x = -x;
    return out;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    require_compatible(a, b);
    Jet2 out = a;
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] += b.c_[k];
    return out;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    require_compatible(a, b);
    Jet2 out = a;
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] -= b.c_[k];
    return out;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    require_compatible(a, b);
    const int K = a.order();
    Jet2 out(K, a.base());
    for (int i1 = 0; i1 <= K; ++i1) {
        for (int j1 = 0; i1 + j1 <= K; ++j1) {
            const double av = a.coeff(i1, j1);
            if (av == 0.0) continue;
            const int rest = K - i1 - j1;
            for (int i2 = 0; i2 <= rest; ++i2)
                for (int j2 = 0; i2 + j2 <= rest; ++j2)
                    out.coeff(i1 + i2, j1 + j2) += av * b.coeff(i2, j2);
        }
    }
    return out;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    require_compatible(a, b);
    const int K = a.order();
    const double b0 = b.value();
    if (std::abs(b0) < kJetSingularEps) {
        throw Error(Error::Kind::SingularDivision,
                    "jet division by series with constant term " + fmt17(b0));
    }
    Jet2 q(K, a.base());
    // Solve q*b = a degree by degree; all referenced q entries have lower
    // total degree, so graded order is sufficient.
    for (int d = 0; d <= K; ++d) {
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            double acc = a.coeff(i, j);
            for (int p = 0; p <= i; ++p) {
                for (int r = 0; r <= j; ++r) {
                    if (p == 0 && r == 0) continue;
                    const double bv = b.coeff(p, r);
                    if (bv == 0.0) continue;
                    acc -= bv * q.coeff(i - p, j - r);
                }
            }
            q.coeff(i, j) = acc / b0;
        }
    }
    return q;
}

Jet2 operator+(double s, const Jet2& a) { Jet2 o = a; o.coeff(0, 0) += s; return o; }
Jet2 operator+(const Jet2& a, double s) { return s + a; }
Jet2 operator-(double s, const Jet2& a) { Jet2 o = -a; o.coeff(0, 0) += s; return o; }
Jet2 operator-(const Jet2& a, double s) { Jet2 o = a; o.coeff(0, 0) -= s; return o; }
Jet2 operator*(double s, const Jet2& a) {
    Jet2 o = a;
    for (double& x : o.c_) x *= s;
    return o;
}
Jet2 operator*(const Jet2& a, double s) { return s * a; }
Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
Jet2 operator/(double s, const Jet2& a) {
    return Jet2::constant(s, a.order(), a.base()) / a;
}

// Horner evaluation of a univariate series in the zero-constant part of x.
Jet2 compose_series2(const std::vector<double>& series, const Jet2& x) {
    const int K = x.order();
    Jet2 xt = x;
    xt.coeff(0, 0) = 0.0;
    Jet2 acc = Jet2::constant(series[K], K, x.base());
    for (int n = K - 1; n >= 0; --n) {
        acc = acc * xt;
        acc.coeff(0, 0) += series[n];
    }
    return acc;
}

Jet1 compose_series1(const std::vector<double>& series, const Jet1& x) {
    const int K = x.order();
    Jet1 xt = x;
    xt.coeff(0) = 0.0;
    Jet1 acc = Jet1::constant(series[K], K, x.base());
    for (int n = K - 1; n >= 0; --n) {
        acc = acc * xt;
        acc.coeff(0) += series[n];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Elementary series

std::vector<double> elementary_series_pow(double x0, double r, int order, double eps) {
    if (x0 <= eps) {
        throw Error(Error::Kind::JetDomain,
                    "fractional power of jet with non-positive constant term " + fmt17(x0));
    }
    std::vector<double> a(static_cast<std::size_t>(order) + 1);
    // a_n = binom(r, n) x0^{r-n}
    a[0] = std::pow(x0, r);
    double binom = 1.0;
    for (int n = 1; n <= order; ++n) {
        binom *= (r - (n - 1)) / n;
        a[n] = binom * std::pow(x0, r - n);
    }
    return a;
}

std::vector<double> elementary_series_sqrt(double x0, int order, double eps) {
    return elementary_series_pow(x0, 0.5, order, eps);
}

std::vector<double> elementary_series_sin(double x0, int order) {
    std::vector<double> a(static_cast<std::size_t>(order) + 1);
    const double s = std::sin(x0), c = std::cos(x0);
    const double cycle[4] = {s, c, -s, -c};
    double invfact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) invfact /= n;
        a[n] = cycle[n % 4] * invfact;
    }
    return a;
}

std::vector<double> elementary_series_cos(double x0, int order) {
    std::vector<double> a(static_cast<std::size_t>(order) + 1);
    const double s = std::sin(x0), c = std::cos(x0);
    const double cycle[4] = {c, -s, -c, s};
    double invfact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) invfact /= n;
        a[n] = cycle[n % 4] * invfact;
    }
    return a;
}

std::vector<double> elementary_series_exp(double x0, int order) {
    std::vector<double> a(static_cast<std::size_t>(order) + 1);
    const double e = std::exp(x0);
    double invfact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) invfact /= n;
        a[n] = e * invfact;
    }
    return a;
}

Jet2 sqrt(const Jet2& x, double eps) { return compose_series2(elementary_series_sqrt(x.value(), x.order(), eps), x); }
Jet2 sin(const Jet2& x) { return compose_series2(elementary_series_sin(x.value(), x.order()), x); }
Jet2 cos(const Jet2& x) { return compose_series2(elementary_series_cos(x.value(), x.order()), x); }
Jet2 exp(const Jet2& x) { return compose_series2(elementary_series_exp(x.value(), x.order()), x); }
Jet2 pow(const Jet2& x, double r, double eps) { return compose_series2(elementary_series_pow(x.value(), r, x.order(), eps), x); }

Jet2 ipow(const Jet2& x, long long n, double eps) {
    if (n < 0) {
        const Jet2 one = Jet2::constant(1.0, x.order(), x.base());
        if (std::abs(x.value()) < eps) {
            throw Error(Error::Kind::SingularDivision, "negative power of jet with zero constant term");
        }
        return one / ipow(x, -n, eps);
    }
    Jet2 result = Jet2::constant(1.0, x.order(), x.base());
    Jet2 base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Jet2 compose_linear(const Jet2& f, const Mat2& A, Vec2 new_base) {
    const int K = f.order();
    // Offsets in the new chart, as jets with zero constant term.
    Jet2 X(K, new_base);
    if (K >= 1) {
        X.coeff(1, 0) = A.a;
        X.coeff(0, 1) = A.b;
    }
    Jet2 Y(K, new_base);
    if (K >= 1) {
        Y.coeff(1, 0) = A.c;
        Y.coeff(0, 1) = A.d;
    }
    // Powers of X and Y up to K.
    std::vector<Jet2> xp, yp;
    xp.reserve(K + 1);
    yp.reserve(K + 1);
    xp.push_back(Jet2::constant(1.0, K, new_base));
    yp.push_back(Jet2::constant(1.0, K, new_base));
    for (int k = 1; k <= K; ++k) {
        xp.push_back(xp.back() * X);
        yp.push_back(yp.back() * Y);
    }
    Jet2 out(K, new_base);
    for (int i = 0; i <= K; ++i) {
        for (int j = 0; i + j <= K; ++j) {
            const double cv = f.coeff(i, j);
            if (cv == 0.0) continue;
            out = out + cv * (xp[i] * yp[j]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jet1

Jet1::Jet1(int order, double base)
    : order_(order), base_(base), c_(static_cast<std::size_t>(order) + 1, 0.0) {
    if (order < 0) throw Error(Error::Kind::Internal, "negative jet order");
}

Jet1 Jet1::constant(double value, int order, double base) {
    Jet1 j(order, base);
    j.c_[0] = value;
    return j;
}

Jet1 Jet1::variable(double base, int order) {
    Jet1 j(order, base);
    j.c_[0] = base;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

double Jet1::derivative(int i) const {
    if (i > order_) throw Error(Error::Kind::Internal, "derivative order exceeds jet order");
    return factorial(i) * c_[i];
}

double Jet1::eval(double t) const {
    const double x = t - base_;
    double r = 0.0;
    for (int i = order_; i >= 0; --i) r = r * x + c_[i];
    return r;
}

Jet1 Jet1::operator-() const {
    Jet1 out = *this;
    for (double& x : out.c_) x = -x;
    return out;
}

Jet1 operator+(const Jet1& a, const Jet1& b) {
    require_compatible(a, b);
    Jet1 out = a;
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] += b.c_[k];
    return out;
}

Jet1 operator-(const Jet1& a, const Jet1& b) {
    require_compatible(a, b);
    Jet1 out = a;
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] -= b.c_[k];
    return out;
}

Jet1 operator*(const Jet1& a, const Jet1& b) {
    require_compatible(a, b);
    const int K = a.order();
    Jet1 out(K, a.base());
    for (int i = 0; i <= K; ++i) {
        const double av = a.coeff(i);
        if (av == 0.0) continue;
        for (int j = 0; i + j <= K; ++j) out.coeff(i + j) += av * b.coeff(j);
    }
    return out;
}

Jet1 operator/(const Jet1& a, const Jet1& b) {
    require_compatible(a, b);
    const int K = a.order();
    const double b0 = b.value();
    if (std::abs(b0) < kJetSingularEps) {
        throw Error(Error::Kind::SingularDivision,
                    "jet division by series with constant term " + fmt17(b0));
    }
    Jet1 q(K, a.base());
    for (int i = 0; i <= K; ++i) {
        double acc = a.coeff(i);
        for (int p = 1; p <= i; ++p) acc -= b.coeff(p) * q.coeff(i - p);
        q.coeff(i) = acc / b0;
    }
    return q;
}

Jet1 operator+(double s, const Jet1& a) { Jet1 o = a; o.coeff(0) += s; return o; }
Jet1 operator+(const Jet1& a, double s) { return s + a; }
Jet1 operator-(double s, const Jet1& a) { Jet1 o = -a; o.coeff(0) += s; return o; }
Jet1 operator-(const Jet1& a, double s) { Jet1 o = a; o.coeff(0) -= s; return o; }
Jet1 operator*(double s, const Jet1& a) {
    Jet1 o = a;
    for (double& x : o.c_) x *= s;
    return o;
}
Jet1 operator*(const Jet1& a, double s) { return s * a; }
Jet1 operator/(const Jet1& a, double s) { return a * (1.0 / s); }
Jet1 operator/(double s, const Jet1& a) { return Jet1::constant(s, a.order(), a.base()) / a; }

Jet1 sqrt(const Jet1& x, double eps) { return compose_series1(elementary_series_sqrt(x.value(), x.order(), eps), x); }
Jet1 sin(const Jet1& x) { return compose_series1(elementary_series_sin(x.value(), x.order()), x); }
Jet1 cos(const Jet1& x) { return compose_series1(elementary_series_cos(x.value(), x.order()), x); }
Jet1 exp(const Jet1& x) { return compose_series1(elementary_series_exp(x.value(), x.order()), x); }
Jet1 pow(const Jet1& x, double r, double eps) { return compose_series1(elementary_series_pow(x.value(), r, x.order(), eps), x); }

Jet1 ipow(const Jet1& x, long long n, double eps) {
    if (n < 0) {
        if (std::abs(x.value()) < eps) {
            throw Error(Error::Kind::SingularDivision, "negative power of jet with zero constant term");
        }
        return Jet1::constant(1.0, x.order(), x.base()) / ipow(x, -n, eps);
    }
    Jet1 result = Jet1::constant(1.0, x.order(), x.base());
    Jet1 base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

} // namespace crosscap
