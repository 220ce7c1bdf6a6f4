#include "crosscap/metric.hpp"

#include <cmath>
#include <utility>

#include "crosscap/errors.hpp"

namespace crosscap {

Immersion3::Jets Immersion3::jets(Vec2 p, int order) const {
    return {eval_jet_uv(x, p, order), eval_jet_uv(y, p, order), eval_jet_uv(z, p, order)};
}

MetricField::MetricField(std::string name, Box2 box, ScalarField E, ScalarField F, ScalarField G)
    : name_(std::move(name)), box_(box), E_(std::move(E)), F_(std::move(F)), G_(std::move(G)) {}

MetricField MetricField::from_exprs(std::string name, Box2 box,
                                    ExprPtr E, ExprPtr F, ExprPtr G) {
    auto field = [](ExprPtr e) {
        return [e = std::move(e)](Vec2 p, int order) { return eval_jet_uv(e, p, order); };
    };
    return MetricField(std::move(name), box, field(std::move(E)), field(std::move(F)),
                       field(std::move(G)));
}

MetricField MetricField::pullback(const Immersion3& im) {
    // A jet of order K of f_u needs f to order K+1.
    auto dot_uu = [im](Vec2 p, int order) {
        const auto f = im.jets(p, order + 1);
        const Jet2 xu = f.x.derivative_u(), yu = f.y.derivative_u(), zu = f.z.derivative_u();
        return xu * xu + yu * yu + zu * zu;
    };
    auto dot_uv = [im](Vec2 p, int order) {
        const auto f = im.jets(p, order + 1);
        const Jet2 xu = f.x.derivative_u(), yu = f.y.derivative_u(), zu = f.z.derivative_u();
        const Jet2 xv = f.x.derivative_v(), yv = f.y.derivative_v(), zv = f.z.derivative_v();
        return xu * xv + yu * yv + zu * zv;
    };
    auto dot_vv = [im](Vec2 p, int order) {
        const auto f = im.jets(p, order + 1);
        const Jet2 xv = f.x.derivative_v(), yv = f.y.derivative_v(), zv = f.z.derivative_v();
        return xv * xv + yv * yv + zv * zv;
    };
    return MetricField(im.name, im.box, dot_uu, dot_uv, dot_vv);
}

MetricField MetricField::transformed(const AffineMap2& map, std::optional<Box2> new_box) const {
    Box2 box;
    if (new_box) {
        box = *new_box;
    } else {
        // Largest centered square guaranteed to land inside the old box.
        const Vec2 old_c = box_.center();
        const Vec2 c_new = map.apply_inverse(old_c);
        const double margin_u = std::min(old_c.u - box_.u_min, box_.u_max - old_c.u);
        const double margin_v = std::min(old_c.v - box_.v_min, box_.v_max - old_c.v);
        // Linear map can stretch offsets by at most its operator norm; bound
        // it crudely by the entrywise sum.
        const double amp = std::abs(map.A.a) + std::abs(map.A.b) +
                           std::abs(map.A.c) + std::abs(map.A.d);
        double half = std::min(margin_u, margin_v) / std::max(amp, 1e-12);
        half = std::max(half, 1e-3 * box_.diagonal());
        box = {c_new.u - half, c_new.u + half, c_new.v - half, c_new.v + half};
    }

    const Mat2 A = map.A;
    auto component = [this, map, A](double w_uu, double w_uv, double w_vv) {
        return [this, map, A, w_uu, w_uv, w_vv](Vec2 w, int order) {
            const Vec2 p = map.apply(w);
            const Jet2 E = compose_linear(E_(p, order), A, w);
            const Jet2 F = compose_linear(F_(p, order), A, w);
            const Jet2 G = compose_linear(G_(p, order), A, w);
            return w_uu * E + w_uv * F + w_vv * G;
        };
    };
    // g' = A^T g A with columns A e1 = (a,c), A e2 = (b,d).
    ScalarField E2 = component(A.a * A.a, 2.0 * A.a * A.c, A.c * A.c);
    ScalarField F2 = component(A.a * A.b, A.a * A.d + A.b * A.c, A.c * A.d);
    ScalarField G2 = component(A.b * A.b, 2.0 * A.b * A.d, A.d * A.d);
    return MetricField(name_ + "'", box, std::move(E2), std::move(F2), std::move(G2));
}

MetricJets MetricField::jets(Vec2 p, int order) const {
    return {E_(p, order), F_(p, order), G_(p, order)};
}

MetricValues MetricField::values(Vec2 p) const {
    return {E_(p, 0).value(), F_(p, 0).value(), G_(p, 0).value()};
}

Jet2 MetricField::lambda_jet(Vec2 p, int order) const {
    const auto g = jets(p, order);
    return g.E * g.G - g.F * g.F;
}

ChristoffelAt MetricField::christoffel(Vec2 p) const {
    const auto g = jets(p, 1);
    const double E = g.E.value(), F = g.F.value(), G = g.G.value();
    const double Eu = g.E.partial(1, 0), Ev = g.E.partial(0, 1);
    const double Fu = g.F.partial(1, 0), Fv = g.F.partial(0, 1);
    const double Gu = g.G.partial(1, 0), Gv = g.G.partial(0, 1);
    const double lambda = E * G - F * F;
    if (lambda <= regularity_eps({E, F, G})) {
        throw Error(Error::Kind::DegenerateMetric,
                    "degenerate metric (EG - F^2 = " + fmt17(lambda) + ") at (" +
                        fmt17(p.u) + ", " + fmt17(p.v) + ")");
    }
    const double den = 2.0 * lambda;
    ChristoffelAt c{};
    c.p = p;
    c.g1_11 = (G * Eu - 2.0 * F * Fu + F * Ev) / den;
    c.g2_11 = (2.0 * E * Fu - E * Ev - F * Eu) / den;
    c.g1_12 = (G * Ev - F * Gu) / den;
    c.g2_12 = (E * Gu - F * Ev) / den;
    c.g1_22 = (2.0 * G * Fv - G * Gu - F * Gv) / den;
    c.g2_22 = (E * Gv - 2.0 * F * Fv + F * Gu) / den;
    return c;
}

namespace {

double det3(double a11, double a12, double a13,
            double a21, double a22, double a23,
            double a31, double a32, double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
}

// Brioschi numerator det M1 - det M2; K = numerator / lambda^2.
double brioschi_numerator(const MetricJets& g) {
    const double E = g.E.value(), F = g.F.value(), G = g.G.value();
    const double Eu = g.E.partial(1, 0), Ev = g.E.partial(0, 1);
    const double Fu = g.F.partial(1, 0), Fv = g.F.partial(0, 1);
    const double Gu = g.G.partial(1, 0), Gv = g.G.partial(0, 1);
    const double Evv = g.E.partial(0, 2);
    const double Fuv = g.F.partial(1, 1);
    const double Guu = g.G.partial(2, 0);
    const double m1 = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
                           Fv - 0.5 * Gu, E, F,
                           0.5 * Gv, F, G);
    const double m2 = det3(0.0, 0.5 * Ev, 0.5 * Gu,
                           0.5 * Ev, E, F,
                           0.5 * Gu, F, G);
    return m1 - m2;
}

} // namespace

double MetricField::gaussian_curvature(Vec2 p) const {
    const auto g = jets(p, 2);
    const double E = g.E.value(), F = g.F.value(), G = g.G.value();
    const double lambda = E * G - F * F;
    if (lambda <= regularity_eps({E, F, G})) {
        throw Error(Error::Kind::DegenerateMetric,
                    "degenerate metric at (" + fmt17(p.u) + ", " + fmt17(p.v) + ")");
    }
    return brioschi_numerator(g) / (lambda * lambda);
}

double MetricField::curvature_density(Vec2 p) const {
    const auto g = jets(p, 2);
    const double E = g.E.value(), F = g.F.value(), G = g.G.value();
    const double lambda = E * G - F * F;
    if (lambda <= 0.0) {
        throw Error(Error::Kind::DegenerateMetric,
                    "degenerate metric at (" + fmt17(p.u) + ", " + fmt17(p.v) + ")");
    }
    return brioschi_numerator(g) / (lambda * std::sqrt(lambda));
}

} // namespace crosscap
