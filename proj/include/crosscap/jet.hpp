#pragma once
#include <vector>

#include "crosscap/types.hpp"

namespace crosscap {

// Truncated Taylor arithmetic in one and two variables.  A jet holds the
// coefficients of the Taylor polynomial of a function at a base point, so
// composing jet operations yields partial derivatives that are exact up to
// floating-point rounding.  Values are immutable in spirit: every operation
// returns a fresh jet.

inline constexpr int kDefaultJetOrder = 6;

// Guard on constant terms for division, sqrt and fractional powers.
inline constexpr double kJetSingularEps = 1e-12;

// Bivariate jet: sum of c[i][j] (u-u0)^i (v-v0)^j over i+j <= order.
class Jet2 {
public:
    Jet2() : Jet2(kDefaultJetOrder, Vec2{}) {}
    Jet2(int order, Vec2 base);

    static Jet2 constant(double value, int order, Vec2 base);
    static Jet2 variable_u(Vec2 base, int order);
    static Jet2 variable_v(Vec2 base, int order);

    int order() const { return order_; }
    Vec2 base() const { return base_; }

    static int coeff_count(int order) { return (order + 1) * (order + 2) / 2; }
    // Triangular layout: degree d block starts at d(d+1)/2, entry j within it.
    static int index(int i, int j) {
        const int d = i + j;
        return d * (d + 1) / 2 + j;
    }

    double coeff(int i, int j) const { return c_[index(i, j)]; }
    double& coeff(int i, int j) { return c_[index(i, j)]; }
    double value() const { return c_[0]; }

    // Partial derivative d^{i+j} f / du^i dv^j at the base point.
    double partial(int i, int j) const;

    // Jet of df/du (resp. df/dv), one order lower.
    Jet2 derivative_u() const;
    Jet2 derivative_v() const;

    // Polynomial evaluation at an arbitrary point (testing aid).
    double eval(Vec2 p) const;

    Jet2 operator-() const;
    friend Jet2 operator+(const Jet2& a, const Jet2& b);
    friend Jet2 operator-(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);
    friend Jet2 operator/(const Jet2& a, const Jet2& b);

    friend Jet2 operator+(double s, const Jet2& a);
    friend Jet2 operator+(const Jet2& a, double s);
    friend Jet2 operator-(double s, const Jet2& a);
    friend Jet2 operator-(const Jet2& a, double s);
    friend Jet2 operator*(double s, const Jet2& a);
    friend Jet2 operator*(const Jet2& a, double s);
    friend Jet2 operator/(const Jet2& a, double s);
    friend Jet2 operator/(double s, const Jet2& a);

    const std::vector<double>& coeffs() const { return c_; }

private:
    int order_;
    Vec2 base_;
    std::vector<double> c_;

    friend Jet2 compose_series2(const std::vector<double>& series, const Jet2& x);
};

Jet2 sqrt(const Jet2& x, double eps = kJetSingularEps);
Jet2 sin(const Jet2& x);
Jet2 cos(const Jet2& x);
Jet2 exp(const Jet2& x);
// x^r for real r; integer exponents should go through ipow instead.
Jet2 pow(const Jet2& x, double r, double eps = kJetSingularEps);
// x^n by repeated squaring; negative n inverts (requires nonzero constant term).
Jet2 ipow(const Jet2& x, long long n, double eps = kJetSingularEps);

// Jet of f(old_base + A * (w - new_base)) at new_base, given the jet of f at
// old_base.  This is the coefficient-level substitution old-offset = A * new-offset.
Jet2 compose_linear(const Jet2& f, const Mat2& A, Vec2 new_base);

// Univariate jet: sum of c[i] (t-t0)^i for i <= order.
class Jet1 {
public:
    Jet1() : Jet1(kDefaultJetOrder, 0.0) {}
    Jet1(int order, double base);

    static Jet1 constant(double value, int order, double base);
    static Jet1 variable(double base, int order);

    int order() const { return order_; }
    double base() const { return base_; }

    double coeff(int i) const { return c_[i]; }
    double& coeff(int i) { return c_[i]; }
    double value() const { return c_[0]; }

    // i-th derivative at the base point (i! * c[i]).
    double derivative(int i) const;

    double eval(double t) const;

    Jet1 operator-() const;
    friend Jet1 operator+(const Jet1& a, const Jet1& b);
    friend Jet1 operator-(const Jet1& a, const Jet1& b);
    friend Jet1 operator*(const Jet1& a, const Jet1& b);
    friend Jet1 operator/(const Jet1& a, const Jet1& b);

    friend Jet1 operator+(double s, const Jet1& a);
    friend Jet1 operator+(const Jet1& a, double s);
    friend Jet1 operator-(double s, const Jet1& a);
    friend Jet1 operator-(const Jet1& a, double s);
    friend Jet1 operator*(double s, const Jet1& a);
    friend Jet1 operator*(const Jet1& a, double s);
    friend Jet1 operator/(const Jet1& a, double s);
    friend Jet1 operator/(double s, const Jet1& a);

    const std::vector<double>& coeffs() const { return c_; }

private:
    int order_;
    double base_;
    std::vector<double> c_;

    friend Jet1 compose_series1(const std::vector<double>& series, const Jet1& x);
};

Jet1 sqrt(const Jet1& x, double eps = kJetSingularEps);
Jet1 sin(const Jet1& x);
Jet1 cos(const Jet1& x);
Jet1 exp(const Jet1& x);
Jet1 pow(const Jet1& x, double r, double eps = kJetSingularEps);
Jet1 ipow(const Jet1& x, long long n, double eps = kJetSingularEps);

// Taylor coefficients a_n = f^(n)(x0)/n! for the supported elementary
// functions, shared by the Jet1/Jet2 composition paths.
std::vector<double> elementary_series_sqrt(double x0, int order, double eps);
std::vector<double> elementary_series_pow(double x0, double r, int order, double eps);
std::vector<double> elementary_series_sin(double x0, int order);
std::vector<double> elementary_series_cos(double x0, int order);
std::vector<double> elementary_series_exp(double x0, int order);

} // namespace crosscap
