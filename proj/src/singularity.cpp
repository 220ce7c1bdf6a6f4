#include "crosscap/singularity.hpp"

#include <algorithm>
#include <cmath>

#include "crosscap/errors.hpp"

namespace crosscap {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Regular: return "regular";
        case Classification::IntrinsicCrossCap: return "intrinsic_cross_cap";
        case Classification::DegenerateSingular: return "degenerate_singular";
    }
    return "?";
}

double singular_lambda_tol(const MetricField& m, int grid_n) {
    const Box2& box = m.box();
    double max_lambda = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const Vec2 p{box.u_min + box.width() * i / (grid_n - 1),
                         box.v_min + box.height() * j / (grid_n - 1)};
            max_lambda = std::max(max_lambda, std::abs(m.lambda(p)));
        }
    }
    return 1e-9 * (1.0 + max_lambda);
}

std::vector<Vec2> find_singular_points(const MetricField& m, const SingularityOptions& opts) {
    const Box2& box = m.box();
    const double tol_lambda = singular_lambda_tol(m, opts.grid_n);
    const double margin = 0.5 * box.diagonal();

    std::vector<Vec2> found;
    for (int i = 0; i < opts.grid_n; ++i) {
        for (int j = 0; j < opts.grid_n; ++j) {
            Vec2 q{box.u_min + box.width() * i / (opts.grid_n - 1),
                   box.v_min + box.height() * j / (opts.grid_n - 1)};
            bool converged = false;
            for (int it = 0; it < opts.max_iterations; ++it) {
                const Jet2 lam = m.lambda_jet(q, 2);
                const double gu = lam.partial(1, 0), gv = lam.partial(0, 1);
                if (std::hypot(gu, gv) < opts.gradient_tol) {
                    converged = true;
                    break;
                }
                const double huu = lam.partial(2, 0);
                const double huv = lam.partial(1, 1);
                const double hvv = lam.partial(0, 2);
                const double det = huu * hvv - huv * huv;
                if (std::abs(det) < 1e-14 * (1.0 + huu * huu + huv * huv + hvv * hvv)) break;
                q.u -= (hvv * gu - huv * gv) / det;
                q.v -= (-huv * gu + huu * gv) / det;
                if (q.u < box.u_min - margin || q.u > box.u_max + margin ||
                    q.v < box.v_min - margin || q.v > box.v_max + margin) {
                    break;
                }
            }
            if (!converged || !box.contains(q)) continue;
            if (std::abs(m.lambda(q)) > tol_lambda) continue;
            bool duplicate = false;
            for (const Vec2& r : found) {
                if ((q - r).norm() < opts.merge_radius) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) found.push_back(q);
        }
    }
    std::sort(found.begin(), found.end(), [](Vec2 a, Vec2 b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return found;
}

NullSpace null_space(const MetricField& m, Vec2 p) {
    const MetricValues g = m.values(p);
    const double tr = g.E + g.G;
    const double disc = std::sqrt(std::max(0.0, (g.E - g.G) * (g.E - g.G) + 4.0 * g.F * g.F));
    NullSpace ns;
    ns.eigen_large = 0.5 * (tr + disc);
    ns.eigen_small = 0.5 * (tr - disc);
    const double tol = 1e-9 * (1.0 + std::abs(tr));
    ns.dim = (ns.eigen_small < tol ? 1 : 0) + (ns.eigen_large < tol ? 1 : 0);
    if (ns.dim == 1) {
        // Eigenvector of the smallest eigenvalue of [[E,F],[F,G]].
        Vec2 d;
        const double r1 = std::hypot(g.E - ns.eigen_small, g.F);
        const double r2 = std::hypot(g.F, g.G - ns.eigen_small);
        if (r1 >= r2) {
            d = {-g.F, g.E - ns.eigen_small};
        } else {
            d = {-(g.G - ns.eigen_small), g.F};
        }
        const double n = d.norm();
        d = d * (1.0 / n);
        // Deterministic sign: dominant component positive.
        if (std::abs(d.u) > std::abs(d.v) ? d.u < 0.0 : d.v < 0.0) d = d * -1.0;
        ns.dir = d;
    }
    return ns;
}

double admissibility_residual(const MetricField& m, Vec2 p) {
    const NullSpace ns = null_space(m, p);
    if (ns.dim == 0) {
        throw Error(Error::Kind::NoNullSpace,
                    "no null space at (" + fmt17(p.u) + ", " + fmt17(p.v) + ")");
    }
    auto residual_for = [&](Vec2 z) {
        const auto g = m.jets(p, 1);
        const double Eu = g.E.partial(1, 0), Ev = g.E.partial(0, 1);
        const double Fu = g.F.partial(1, 0), Fv = g.F.partial(0, 1);
        const double Gu = g.G.partial(1, 0), Gv = g.G.partial(0, 1);
        // Gamma(d_i, d_j, Z) = (d_i g_{jZ} + d_j g_{iZ} - Z g_{ij}) / 2 for
        // coordinate fields and constant Z.
        const double g11 = 0.5 * (z.u * Eu + z.v * (2.0 * Fu - Ev));
        const double g12 = 0.5 * (z.u * Ev + z.v * Gu);
        const double g22 = 0.5 * (z.u * (2.0 * Fv - Gu) + z.v * Gv);
        return std::max({std::abs(g11), std::abs(g12), std::abs(g22)});
    };
    if (ns.dim == 2) {
        return std::max(residual_for({1.0, 0.0}), residual_for({0.0, 1.0}));
    }
    return residual_for(ns.dir);
}

AdjustedChart adjusted_chart(const MetricField& m, Vec2 p) {
    const NullSpace ns = null_space(m, p);
    if (ns.dim != 1) {
        throw Error(Error::Kind::NoNullSpace,
                    "adjusted chart needs a one-dimensional null space, got dim " +
                        std::to_string(ns.dim));
    }
    // Rotation taking e2 to the null direction; p goes to the origin.
    const Mat2 A{ns.dir.v, ns.dir.u, -ns.dir.u, ns.dir.v};
    const AffineMap2 map{A, p};
    return {map, m.transformed(map)};
}

SingularityReport classify(const MetricField& m, Vec2 p, const SingularityOptions& opts) {
    SingularityReport rep;
    rep.p = p;

    const Jet2 lam = m.lambda_jet(p, 2);
    rep.lambda_value = lam.value();
    rep.grad_lambda[0] = lam.partial(1, 0);
    rep.grad_lambda[1] = lam.partial(0, 1);
    rep.hessian[0] = lam.partial(2, 0);
    rep.hessian[1] = lam.partial(1, 1);
    rep.hessian[2] = lam.partial(0, 2);
    rep.H_lambda = rep.hessian[0] * rep.hessian[2] - rep.hessian[1] * rep.hessian[1];

    const NullSpace ns = null_space(m, p);
    rep.null_dim = ns.dim;
    if (ns.dim == 1) rep.null_dir = ns.dir;
    if (ns.dim == 0) {
        rep.classification = Classification::Regular;
        return rep;
    }

    rep.admissibility_residual = admissibility_residual(m, p);

    const double hessian_scale =
        rep.hessian[0] * rep.hessian[0] + rep.hessian[1] * rep.hessian[1] +
        rep.hessian[2] * rep.hessian[2];
    const double morse_threshold = 1e-8 * (1.0 + hessian_scale);
    const double grad_tol = 1e-7 * (1.0 + std::sqrt(hessian_scale));
    const double lambda_tol = singular_lambda_tol(m, opts.grid_n);
    const MetricValues g = m.values(p);
    const double adm_tol =
        1e-8 * (1.0 + std::abs(g.E) + std::abs(g.G) + std::sqrt(hessian_scale));

    const bool morse = std::abs(rep.H_lambda) > morse_threshold;
    const bool critical = std::hypot(rep.grad_lambda[0], rep.grad_lambda[1]) < grad_tol;
    const bool at_zero = std::abs(rep.lambda_value) < lambda_tol;
    const bool admissible = rep.admissibility_residual < adm_tol;

    if (!(ns.dim == 1 && morse && critical && at_zero && admissible)) {
        rep.classification = Classification::DegenerateSingular;
        return rep;
    }

    // Delta, alpha and alpha02 live in the adjusted chart at the origin.
    const AdjustedChart chart = adjusted_chart(m, p);
    const Vec2 origin{0.0, 0.0};
    const auto gj = chart.metric.jets(origin, 2);
    const double E0 = gj.E.value();
    const double Fu = gj.F.partial(1, 0), Fv = gj.F.partial(0, 1);
    const double Guu = gj.G.partial(2, 0), Guv = gj.G.partial(1, 1), Gvv = gj.G.partial(0, 2);
    const double delta =
        E0 * (0.25 * Guu * Gvv - 0.25 * Guv * Guv) -
        Fu * (0.5 * Fu * Gvv - 0.5 * Fv * Guv) +
        Fv * (0.5 * Fu * Guv - 0.5 * Fv * Guu);
    rep.Delta = delta;

    const Jet2 lam_adj = chart.metric.lambda_jet(origin, 2);
    const double h_adj =
        lam_adj.partial(2, 0) * lam_adj.partial(0, 2) - lam_adj.partial(1, 1) * lam_adj.partial(1, 1);
    rep.alpha = 0.5 * lam_adj.partial(0, 2);
    rep.relation_residual = std::abs(h_adj - 4.0 * E0 * delta) / (1.0 + std::abs(h_adj));

    if (rep.alpha <= 0.0 || std::abs(delta) < 1e-14 * (1.0 + hessian_scale)) {
        rep.classification = Classification::DegenerateSingular;
        return rep;
    }
    rep.alpha02 = std::sqrt(E0) * std::pow(rep.alpha, 1.5) / delta;
    rep.classification = Classification::IntrinsicCrossCap;
    return rep;
}

WestCoefficients west_extract(const MetricField& adjusted_metric, double tolerance) {
    const Vec2 origin{0.0, 0.0};
    const auto g = adjusted_metric.jets(origin, 2);
    auto c = [](const Jet2& j, int i, int k) { return j.coeff(i, k); };

    const double g02 = c(g.G, 0, 2);
    if (g02 < 1e-12) {
        throw NotWestChartError(g02, "not a West-type chart: v^2 coefficient of G is " +
                                         fmt17(g02) + ", expected (alpha02)^2 > 0");
    }
    WestCoefficients w;
    w.alpha02 = std::sqrt(g02);
    w.alpha11 = c(g.G, 1, 1) / (2.0 * w.alpha02);
    const double mag20 = std::sqrt(std::max(0.0, c(g.E, 2, 0)));
    double sign_source;
    if (std::abs(w.alpha11) > 1e-9) {
        // uv coefficient of E is 2 alpha11 alpha20.
        sign_source = c(g.E, 1, 1) / (2.0 * w.alpha11);
    } else {
        // uv coefficient of F is 1 + alpha11^2 + alpha02 alpha20.
        sign_source = c(g.F, 1, 1) - 1.0 - w.alpha11 * w.alpha11;
    }
    w.alpha20 = sign_source < 0.0 ? -mag20 : mag20;

    const double a02 = w.alpha02, a11 = w.alpha11, a20 = w.alpha20;
    const double expect_E[6] = {1.0, 0.0, 0.0, a20 * a20, 2.0 * a11 * a20, 1.0 + a11 * a11};
    const double expect_F[6] = {0.0, 0.0, 0.0, a11 * a20, 1.0 + a11 * a11 + a02 * a20, a02 * a11};
    const double expect_G[6] = {0.0, 0.0, 0.0, 1.0 + a11 * a11, 2.0 * a02 * a11, a02 * a02};
    const int idx[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    double residual = 0.0;
    for (int k = 0; k < 6; ++k) {
        residual = std::max(residual, std::abs(c(g.E, idx[k][0], idx[k][1]) - expect_E[k]));
        residual = std::max(residual, std::abs(c(g.F, idx[k][0], idx[k][1]) - expect_F[k]));
        residual = std::max(residual, std::abs(c(g.G, idx[k][0], idx[k][1]) - expect_G[k]));
    }
    w.fit_residual = residual;
    if (residual > tolerance) {
        throw NotWestChartError(residual,
                                "not a West-type chart of second order: coefficient residual " +
                                    fmt17(residual) + " exceeds " + fmt17(tolerance));
    }
    return w;
}

} // namespace crosscap
