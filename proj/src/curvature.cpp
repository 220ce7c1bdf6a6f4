#include "crosscap/curvature.hpp"

#include <cmath>
#include <limits>

#include "crosscap/errors.hpp"
#include "crosscap/extrapolate.hpp"

namespace crosscap {

Curve2::Curve2(std::string name, ExprPtr u, ExprPtr v, double t0, double t1, bool reversed)
    : name_(std::move(name)), u_(std::move(u)), v_(std::move(v)), t0_(t0), t1_(t1),
      reversed_(reversed) {}

Curve2::Jets Curve2::jets(double t, int order) const {
    if (!reversed_) {
        return {eval_jet_t(u_, t, order), eval_jet_t(v_, t, order)};
    }
    // Traversal parameter t corresponds to underlying parameter t0+t1-t;
    // precomposing with the mirror flips the sign of odd coefficients.
    const double mirrored = t0_ + t1_ - t;
    Jet1 uj = eval_jet_t(u_, mirrored, order);
    Jet1 vj = eval_jet_t(v_, mirrored, order);
    for (int i = 1; i <= order; i += 2) {
        uj.coeff(i) = -uj.coeff(i);
        vj.coeff(i) = -vj.coeff(i);
    }
    return {uj, vj};
}

Vec2 Curve2::point(double t) const {
    const auto j = jets(t, 0);
    return {j.u.value(), j.v.value()};
}

Vec2 Curve2::velocity(double t) const {
    const auto j = jets(t, 1);
    return {j.u.coeff(1), j.v.coeff(1)};
}

Curve2 Curve2::reversed() const {
    Curve2 c = *this;
    c.reversed_ = !reversed_;
    c.name_ = name_ + "~";
    return c;
}

CurvatureSample geodesic_curvature(const MetricField& m, const Curve2& c, double t) {
    const auto cj = c.jets(t, 2);
    const double udot = cj.u.derivative(1), vdot = cj.v.derivative(1);
    const double uddot = cj.u.derivative(2), vddot = cj.v.derivative(2);
    if (udot * udot + vdot * vdot <= kCurveRegularityEps) {
        throw Error(Error::Kind::IrregularCurve,
                    "curve is irregular at t = " + fmt17(t));
    }
    const Vec2 q{cj.u.value(), cj.v.value()};
    const auto g = m.jets(q, 1);
    const double E = g.E.value(), F = g.F.value(), G = g.G.value();
    const double Eu = g.E.partial(1, 0), Ev = g.E.partial(0, 1);
    const double Fu = g.F.partial(1, 0), Fv = g.F.partial(0, 1);
    const double Gu = g.G.partial(1, 0), Gv = g.G.partial(0, 1);
    const double lambda = E * G - F * F;
    if (lambda <= MetricField::regularity_eps({E, F, G})) {
        throw Error(Error::Kind::DegenerateMetric,
                    "degenerate metric on curve at t = " + fmt17(t));
    }
    const double speed2 = udot * udot * E + 2.0 * udot * vdot * F + vdot * vdot * G;

    // Five-term geodesic curvature, assembled over the common denominator
    // 2 sqrt(lambda) speed2^{3/2}; the numerator is shared with the fused
    // kappa_g * ds/dt so the product stays finite where the factors are not.
    const double accel = udot * vddot - vdot * uddot;
    const double b1 = udot * udot * udot * (2.0 * E * Fu - E * Ev - F * Eu);
    const double b2 = vdot * vdot * vdot * (2.0 * G * Fv - G * Gu - F * Gv);
    const double b3 = udot * udot * vdot * (2.0 * E * Gu - 3.0 * F * Ev - G * Eu + 2.0 * F * Fu);
    const double b4 = udot * vdot * vdot * (2.0 * G * Ev - 3.0 * F * Gu - E * Gv + 2.0 * F * Fv);
    const double numerator = 2.0 * accel * lambda + b1 - b2 + b3 - b4;

    const double sqrt_lambda = std::sqrt(lambda);
    CurvatureSample s;
    s.t = t;
    s.speed2 = speed2;
    s.ds_dt = std::sqrt(speed2);
    s.kappa_g = numerator / (2.0 * sqrt_lambda * speed2 * s.ds_dt);
    s.kappa_ds_dt = numerator / (2.0 * sqrt_lambda * speed2);
    return s;
}

namespace {

double quantity_value(const MetricField& m, const Curve2& c, CurveQuantity q, double t) {
    const CurvatureSample s = geodesic_curvature(m, c, t);
    return q == CurveQuantity::KappaG ? s.kappa_g : s.kappa_ds_dt;
}

} // namespace

LimitEstimate limit_at_singularity(const MetricField& m, const Curve2& c, CurveQuantity quantity,
                                   const LimitOptions& opts) {
    const double anchor = c.t0();
    double h0 = opts.t_start > anchor ? opts.t_start - anchor : 0.5 * (c.t1() - anchor);
    if (h0 <= 0.0) throw Error(Error::Kind::Internal, "empty curve domain");

    RichardsonExtrapolator extr(4);
    std::vector<std::pair<double, double>> samples;  // (abscissa, value)
    LimitEstimate est;
    int growth_run = 0;
    double prev_abs = 0.0;
    double first_abs = 0.0;
    bool diverged = false;

    double h = h0;
    for (int k = 0; k < opts.max_samples; ++k, h *= 0.5) {
        const double t = anchor + h;
        const double x = opts.abscissa ? opts.abscissa(t) : h;
        const double f = quantity_value(m, c, quantity, t);
        samples.emplace_back(x, f);
        est.samples_used = k + 1;

        if (k == 0) first_abs = std::abs(f);
        if (k > 0) {
            const bool grew = std::abs(f) >= 1.8 * prev_abs &&
                              std::abs(f) > 1e-6 * (1.0 + first_abs);
            growth_run = grew ? growth_run + 1 : 0;
            if (growth_run >= 4) diverged = true;
        }
        prev_abs = std::abs(f);

        if (!diverged) {
            extr.add(x, f);
            if (k >= 4 && extr.error_estimate() < opts.tolerance) {
                est.value = extr.value();
                est.error_estimate = extr.error_estimate();
                est.converged = true;
                return est;
            }
        }
    }

    if (diverged) {
        est.diverged = true;
        est.converged = false;
        est.value = samples.back().second > 0 ? std::numeric_limits<double>::infinity()
                                              : -std::numeric_limits<double>::infinity();
        // 1/t rate: weighted least-squares on x * f(x); the constant term of
        // the fit is the rate coefficient.
        std::vector<std::pair<double, double>> scaled;
        const std::size_t take = std::min<std::size_t>(samples.size(), 16);
        for (std::size_t i = samples.size() - take; i < samples.size(); ++i) {
            scaled.emplace_back(samples[i].first, samples[i].first * samples[i].second);
        }
        const int degree = static_cast<int>(std::min<std::size_t>(3, scaled.size() - 1));
        const auto fit_full = wls_polynomial_fit(scaled, degree);
        est.rate = fit_full[0];
        const std::size_t half = scaled.size() / 2;
        if (half > static_cast<std::size_t>(degree)) {
            std::vector<std::pair<double, double>> tail(scaled.end() - half, scaled.end());
            const auto fit_tail = wls_polynomial_fit(tail, degree);
            est.error_estimate = std::abs(fit_full[0] - fit_tail[0]);
        } else {
            est.error_estimate = std::abs(fit_full[0]);
        }
        return est;
    }

    est.value = extr.value();
    est.error_estimate = extr.error_estimate();
    est.converged = est.error_estimate < opts.tolerance;
    return est;
}

double transversal_limit_formula(const WestCoefficients& w, double vdot0) {
    const double s = w.alpha11 + w.alpha02 * vdot0;
    const double numerator =
        2.0 * vdot0 + s * (w.alpha20 + vdot0 * (2.0 * w.alpha11 + w.alpha02 * vdot0));
    return numerator / std::sqrt(1.0 + s * s);
}

TangentialSeries tangential_series_formula(const WestCoefficients& w, double udd0, double u3_0,
                                           double u4_0) {
    const double a02 = w.alpha02, a11 = w.alpha11, a20 = w.alpha20;
    const double a02_2 = a02 * a02;
    const double udd2 = udd0 * udd0;
    const double q = a02_2 + udd2;

    TangentialSeries s;
    s.c_minus1 = (8.0 * a02_2 * a11 * udd2 - 2.0 * u3_0 * a02_2 * a02 +
                  u3_0 * a02 * udd2 - a11 * udd2 * udd2) /
                 (2.0 * std::pow(q, 2.5));

    const double brace =
        udd0 * (-12.0 * std::pow(a02, 6) +
                18.0 * std::pow(a02, 4) * udd2 * (2.0 * a02 * a20 - 15.0 * a11 * a11 + 3.0) +
                9.0 * a02_2 * udd2 * udd2 * (4.0 * a02 * a20 + 15.0 * a11 * a11 + 7.0) +
                2.0 * u3_0 * a02 * a11 *
                    (70.0 * std::pow(a02, 4) - 64.0 * a02_2 * udd2 + udd2 * udd2) +
                45.0 * u3_0 * u3_0 * std::pow(a02, 4) - 3.0 * std::pow(udd0, 6)) -
        12.0 * u4_0 * std::pow(a02, 4) * q;
    s.c0 = brace / (24.0 * a02 * std::pow(q, 3.5));
    return s;
}

bool boundedness_predicate(const WestCoefficients& w, double udd0, double u3_0,
                           double tolerance) {
    const double a02 = w.alpha02, a11 = w.alpha11;
    const double udd2 = udd0 * udd0;
    const double t1 = 8.0 * a02 * a02 * a11 * udd2;
    const double t2 = -2.0 * u3_0 * a02 * a02 * a02;
    const double t3 = u3_0 * a02 * udd2;
    const double t4 = -a11 * udd2 * udd2;
    const double value = t1 + t2 + t3 + t4;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
    return std::abs(value) <= tolerance * (1.0 + scale);
}

double k_asymptotic(const WestCoefficients& w, double theta) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double mix = w.alpha11 * ct + w.alpha02 * st;
    const double den = ct * ct + mix * mix;
    return w.alpha02 * (w.alpha20 * ct * ct - w.alpha02 * st * st) / (den * den);
}

namespace {

// T(s) with v(T(s)) = s, for v(0) = 0 and v'(0) != 0, by fixed-point
// iteration on the truncated series (each pass fixes one more order).
Jet1 revert_series(const Jet1& v) {
    const int K = v.order();
    const double b1 = v.coeff(1);
    if (std::abs(b1) < 1e-12) {
        throw Error(Error::Kind::IrregularCurve, "series reversion needs nonzero linear term");
    }
    const Jet1 S = [K] {
        Jet1 s(K, 0.0);
        if (K >= 1) s.coeff(1) = 1.0;
        return s;
    }();
    Jet1 T = S * (1.0 / b1);
    for (int pass = 0; pass < K; ++pass) {
        // tail(T) = sum_{i >= 2} b_i T^i
        Jet1 tail(K, 0.0);
        Jet1 power = T * T;
        for (int i = 2; i <= K; ++i) {
            tail = tail + v.coeff(i) * power;
            if (i < K) power = power * T;
        }
        T = (S - tail) * (1.0 / b1);
    }
    return T;
}

Jet1 compose_poly(const Jet1& f, const Jet1& inner) {
    // f(inner(s)) for inner with zero constant term; Horner.
    const int K = f.order();
    Jet1 acc = Jet1::constant(f.coeff(K), K, 0.0);
    for (int i = K - 1; i >= 0; --i) {
        acc = acc * inner;
        acc.coeff(0) += f.coeff(i);
    }
    return acc;
}

} // namespace

SeriesComparison compare_series(const MetricField& m, const Curve2& c,
                                const WestCoefficients& w, const CompareOptions& opts) {
    const auto cj = c.jets(c.t0(), 4);
    const double udot = cj.u.derivative(1);
    const double vdot = cj.v.derivative(1);
    if (udot * udot + vdot * vdot <= kCurveRegularityEps) {
        throw Error(Error::Kind::IrregularCurve, "curve is irregular at its start point");
    }

    SeriesComparison cmp;
    cmp.transversal = std::abs(udot) > 1e-9 * std::max(1.0, std::abs(vdot));

    LimitOptions lopts;
    lopts.tolerance = 1e-9;
    if (cmp.transversal) {
        const double u_at_start = cj.u.value();
        lopts.abscissa = [&c, u_at_start](double t) {
            return std::abs(c.point(t).u - u_at_start);
        };
        const LimitEstimate oracle = limit_at_singularity(m, c, CurveQuantity::KappaG, lopts);
        cmp.oracle_diverges = oracle.diverged;
        cmp.oracle_value = oracle.diverged ? oracle.rate : oracle.value;
        cmp.formula_value = transversal_limit_formula(w, vdot / udot);
    } else {
        if (vdot < 0.0) {
            throw Error(Error::Kind::IrregularCurve,
                        "tangential comparison expects the curve to run into v > 0");
        }
        // Move to the v-parameterization v(s) = s by series reversion, then
        // read off the curve derivatives the printed series is phrased in.
        Jet1 v_offset = cj.v;
        v_offset.coeff(0) = 0.0;
        const Jet1 T = revert_series(v_offset);
        Jet1 u_offset = cj.u;
        u_offset.coeff(0) = 0.0;
        const Jet1 u_of_s = compose_poly(u_offset, T);
        const double udd = u_of_s.derivative(2);
        const double u3 = u_of_s.derivative(3);
        const double u4 = u_of_s.derivative(4);
        const TangentialSeries series = tangential_series_formula(w, udd, u3, u4);
        cmp.printed_c_minus1 = series.c_minus1;
        cmp.printed_c0 = series.c0;

        const double v_at_start = cj.v.value();
        lopts.abscissa = [&c, v_at_start](double t) { return c.point(t).v - v_at_start; };
        const LimitEstimate oracle = limit_at_singularity(m, c, CurveQuantity::KappaG, lopts);
        cmp.oracle_diverges = oracle.diverged;
        if (oracle.diverged) {
            cmp.oracle_value = oracle.rate;
            cmp.formula_value = series.c_minus1;
        } else {
            cmp.oracle_value = oracle.value;
            cmp.formula_value = series.c0;
        }
    }

    cmp.abs_diff = std::abs(cmp.formula_value - cmp.oracle_value);
    cmp.rel_diff = cmp.abs_diff / std::max(1e-300, std::abs(cmp.oracle_value));
    cmp.ratio = std::abs(cmp.oracle_value) > 1e-12 ? cmp.formula_value / cmp.oracle_value : 0.0;
    cmp.consistent = cmp.abs_diff <= std::max(opts.atol, opts.rtol * std::abs(cmp.formula_value));
    return cmp;
}

} // namespace crosscap
