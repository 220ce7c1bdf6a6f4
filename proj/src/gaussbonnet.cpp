#include "crosscap/gaussbonnet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crosscap/errors.hpp"
#include "crosscap/extrapolate.hpp"
#include "crosscap/quadrature.hpp"
#include "crosscap/singularity.hpp"

namespace crosscap {

namespace {

constexpr int kEdgeScanSamples = 256;

struct EdgeGeometry {
    Vec2 point;
    Vec2 velocity;
};

EdgeGeometry edge_geometry(const Curve2& e, double t) {
    const auto j = e.jets(t, 1);
    return {{j.u.value(), j.v.value()}, {j.u.coeff(1), j.v.coeff(1)}};
}

std::vector<Vec2> boundary_polygon(const Region& reg, int per_edge = 128) {
    std::vector<Vec2> poly;
    for (const Curve2& e : reg.edges) {
        for (int i = 0; i < per_edge; ++i) {
            const double t = e.t0() + (e.t1() - e.t0()) * i / per_edge;
            poly.push_back(e.point(t));
        }
    }
    return poly;
}

double polygon_winding(const std::vector<Vec2>& poly, Vec2 p) {
    double total = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i] - p;
        const Vec2 b = poly[(i + 1) % poly.size()] - p;
        total += std::atan2(cross(a, b), dot(a, b));
    }
    return total / (2.0 * std::numbers::pi);
}

double min_distance(const std::vector<Vec2>& poly, Vec2 p) {
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2& q : poly) d = std::min(d, (q - p).norm());
    return d;
}

// Parameters where the edge meets the point p, if any.
std::vector<double> singular_params_on_edge(const Curve2& e, Vec2 p, double scale) {
    const double hit_tol = 1e-8 * (1.0 + scale);
    std::vector<double> hits;
    for (int i = 0; i <= kEdgeScanSamples; ++i) {
        double t = e.t0() + (e.t1() - e.t0()) * i / kEdgeScanSamples;
        const double d0 = (e.point(t) - p).norm();
        if (d0 > (e.t1() - e.t0()) * 4.0 / kEdgeScanSamples + 100.0 * hit_tol) continue;
        // Newton on the derivative of the squared distance.
        for (int it = 0; it < 40; ++it) {
            const auto j = e.jets(t, 2);
            const Vec2 d{j.u.value() - p.u, j.v.value() - p.v};
            const Vec2 dv{j.u.coeff(1), j.v.coeff(1)};
            const Vec2 da{2.0 * j.u.coeff(2), 2.0 * j.v.coeff(2)};
            const double psi = dot(d, dv);
            const double dpsi = dot(dv, dv) + dot(d, da);
            if (std::abs(dpsi) < 1e-300) break;
            const double step = psi / dpsi;
            t -= step;
            t = std::clamp(t, e.t0(), e.t1());
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
        }
        if ((e.point(t) - p).norm() < hit_tol) {
            bool known = false;
            for (double h : hits) {
                if (std::abs(h - t) < 1e-9 * (1.0 + std::abs(t))) known = true;
            }
            if (!known) hits.push_back(t);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

double region_scale(const Region& reg) {
    double s = 1.0;
    for (const Curve2& e : reg.edges) {
        s = std::max({s, std::abs(e.t0()), std::abs(e.t1())});
        const Vec2 p = e.point(e.t0());
        s = std::max({s, std::abs(p.u), std::abs(p.v)});
    }
    return s;
}

} // namespace

bool region_contains(const Region& reg, Vec2 p, double boundary_tol) {
    const auto poly = boundary_polygon(reg);
    if (min_distance(poly, p) < boundary_tol * region_scale(reg)) return true;
    return std::abs(polygon_winding(poly, p)) >= 0.5;
}

void validate_region(const MetricField& m, const Region& reg) {
    if (reg.edges.empty()) {
        throw ConfigError("region.edges", "region needs at least one boundary edge");
    }
    const double scale = region_scale(reg);
    const double close_tol = 1e-9 * scale;
    const std::size_t n = reg.edges.size();

    for (std::size_t i = 0; i < n; ++i) {
        const Curve2& e = reg.edges[i];
        if (!(e.t0() < e.t1())) {
            throw ConfigError("region.edges[" + std::to_string(i) + "]", "empty parameter range");
        }
        for (int k = 1; k < 100; ++k) {
            const double t = e.t0() + (e.t1() - e.t0()) * k / 100.0;
            const Vec2 vel = e.velocity(t);
            if (dot(vel, vel) <= kCurveRegularityEps) {
                throw ConfigError("region.edges[" + std::to_string(i) + "]",
                                  "edge is irregular near t = " + fmt17(t));
            }
        }
        const Vec2 end = e.point(e.t1());
        const Vec2 next_start = reg.edges[(i + 1) % n].point(reg.edges[(i + 1) % n].t0());
        if ((end - next_start).norm() > close_tol) {
            throw ConfigError("region.edges[" + std::to_string(i) + "]",
                              "boundary does not close up: gap " + fmt17((end - next_start).norm()));
        }
    }

    std::vector<bool> is_corner(n, false);
    for (const Corner& c : reg.corners) {
        if (c.edge < 0 || c.edge >= static_cast<int>(n)) {
            throw ConfigError("region.corners", "edge index " + std::to_string(c.edge) + " out of range");
        }
        const Curve2& e = reg.edges[static_cast<std::size_t>(c.edge)];
        if (std::abs(c.t - e.t1()) > 1e-9 * (1.0 + std::abs(e.t1()))) {
            throw ConfigError("region.corners",
                              "corner parameter " + fmt17(c.t) + " is not the end of edge " +
                                  std::to_string(c.edge));
        }
        is_corner[static_cast<std::size_t>(c.edge)] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (is_corner[i]) continue;
        const Vec2 a = reg.edges[i].velocity(reg.edges[i].t1());
        const Vec2 b = reg.edges[(i + 1) % n].velocity(reg.edges[(i + 1) % n].t0());
        if (std::abs(cross(a, b)) > 1e-6 * a.norm() * b.norm() || dot(a, b) <= 0.0) {
            throw ConfigError("region.corners",
                              "junction after edge " + std::to_string(i) +
                                  " has a tangent break but is not listed as a corner");
        }
    }

    if (!reg.polar_radii.empty() && reg.polar_radii.size() != reg.singular_points.size()) {
        throw ConfigError("region.polar_radii", "expected one radius per singular point");
    }
    const auto poly = boundary_polygon(reg);
    for (std::size_t k = 0; k < reg.singular_points.size(); ++k) {
        const Vec2 p = reg.singular_points[k];
        if (!m.box().contains(p)) {
            throw ConfigError("region.singular_points", "point outside the chart box");
        }
        const double dist = min_distance(poly, p);
        const bool on_boundary = dist < 1e-6 * scale;
        if (!on_boundary && std::abs(polygon_winding(poly, p)) < 0.5) {
            throw ConfigError("region.singular_points",
                              "point (" + fmt17(p.u) + ", " + fmt17(p.v) + ") lies outside the region");
        }
        for (std::size_t l = k + 1; l < reg.singular_points.size(); ++l) {
            const double r_k = reg.polar_radii.empty() ? 0.0 : reg.polar_radii[k];
            const double r_l = reg.polar_radii.empty() ? 0.0 : reg.polar_radii[l];
            if ((reg.singular_points[l] - p).norm() <= r_k + r_l) {
                throw ConfigError("region.polar_radii", "polar discs overlap");
            }
        }
    }
}

namespace {

struct FanEdge {
    const Curve2* edge;
    double cross_scale;  // max |cross(e - c, e')| over samples
    double r_min;        // min |e - c| over samples
};

// value of one tensor Gauss-Legendre pass over an edge fan piece.
// sigma(t, s) in [0,1] is the radial coordinate along the chord from the
// center; radial_split <= 0 integrates sigma in [0,1] in one piece.
double fan_piece(const MetricField& m, const Curve2& e, Vec2 center, double r0, bool inner,
                 int n) {
    const auto& rule = gauss_legendre(n);
    const double tm = 0.5 * (e.t0() + e.t1());
    const double th = 0.5 * (e.t1() - e.t0());
    std::vector<double> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double t = tm + th * rule.nodes[static_cast<std::size_t>(i)];
        const auto gpt = edge_geometry(e, t);
        const Vec2 d = gpt.point - center;
        const double cr = cross(d, gpt.velocity);
        const double dist = d.norm();
        double s_lo = 0.0, s_hi = 1.0;
        if (r0 > 0.0) {
            const double s0 = std::min(r0 / dist, 1.0);
            if (inner) s_hi = s0;
            else s_lo = s0;
        }
        const double sh = 0.5 * (s_hi - s_lo);
        const double sm = 0.5 * (s_hi + s_lo);
        for (int j = 0; j < n; ++j) {
            const double sigma = sm + sh * rule.nodes[static_cast<std::size_t>(j)];
            const Vec2 q = center + d * sigma;
            const double f = m.curvature_density(q);
            cells.push_back(f * sigma * cr * rule.weights[static_cast<std::size_t>(i)] *
                            rule.weights[static_cast<std::size_t>(j)] * th * sh);
        }
    }
    return pairwise_sum(cells);
}

} // namespace

QuadratureResult integrate_curvature(const MetricField& m, const Region& reg,
                                     const QuadOptions& opts) {
    validate_region(m, reg);
    for (const Vec2& p : reg.singular_points) {
        const SingularityReport rep = classify(m, p);
        if (rep.classification != Classification::IntrinsicCrossCap) {
            throw Error(Error::Kind::UnclassifiedSingularity,
                        "singular point (" + fmt17(p.u) + ", " + fmt17(p.v) + ") classifies as " +
                            to_string(rep.classification) +
                            "; the interior integral needs intrinsic cross caps");
        }
    }
    if (reg.singular_points.size() > 1) {
        throw ConfigError("region.singular_points",
                          "more than one singular point per region is not supported; "
                          "split the region and use additivity");
    }

    const double scale = region_scale(reg);
    Vec2 center;
    const bool singular = !reg.singular_points.empty();
    if (singular) {
        center = reg.singular_points[0];
    } else {
        Vec2 acc{0.0, 0.0};
        int count = 0;
        for (const Curve2& e : reg.edges) {
            for (int i = 0; i < 64; ++i) {
                const double t = e.t0() + (e.t1() - e.t0()) * i / 64.0;
                acc = acc + e.point(t);
                ++count;
            }
        }
        center = acc * (1.0 / count);
    }

    // Classify edges relative to the center; radial edges contribute nothing.
    std::vector<FanEdge> fan;
    double r_min = std::numeric_limits<double>::infinity();
    for (const Curve2& e : reg.edges) {
        FanEdge fe{&e, 0.0, std::numeric_limits<double>::infinity()};
        for (int i = 0; i <= kEdgeScanSamples; ++i) {
            const double t = e.t0() + (e.t1() - e.t0()) * i / kEdgeScanSamples;
            const auto g = edge_geometry(e, t);
            const Vec2 d = g.point - center;
            fe.cross_scale = std::max(fe.cross_scale, std::abs(cross(d, g.velocity)));
            fe.r_min = std::min(fe.r_min, d.norm());
        }
        if (fe.cross_scale < 1e-12 * scale * scale) continue;  // radial edge
        fan.push_back(fe);
        r_min = std::min(r_min, fe.r_min);
    }
    if (fan.empty()) throw ConfigError("region.edges", "degenerate region boundary");

    double r0 = 0.0;
    if (singular) {
        r0 = reg.polar_radii.empty() || reg.polar_radii[0] <= 0.0 ? 0.4 * r_min
                                                                  : reg.polar_radii[0];
        if (r0 >= 0.95 * r_min) {
            throw ConfigError("region.polar_radii",
                              "polar radius " + fmt17(r0) + " reaches the boundary (min distance " +
                                  fmt17(r_min) + ")");
        }
    }

    auto total_at = [&](int n) {
        double acc = 0.0;
        for (const FanEdge& fe : fan) {
            if (singular) {
                acc += fan_piece(m, *fe.edge, center, r0, true, n);
                acc += fan_piece(m, *fe.edge, center, r0, false, n);
            } else {
                acc += fan_piece(m, *fe.edge, center, 0.0, true, n);
            }
        }
        return acc;
    };
    const double coarse = total_at(opts.nodes);
    const double fine = total_at(2 * opts.nodes);
    QuadratureResult r{fine, std::abs(fine - coarse)};
    if (r.error_estimate > opts.tolerance * (1.0 + std::abs(fine))) {
        throw Error(Error::Kind::NonConvergence,
                    "interior quadrature did not converge: two-level difference " +
                        fmt17(r.error_estimate));
    }
    return r;
}

namespace {

double boundary_panel(const MetricField& m, const Curve2& e, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double tm = 0.5 * (a + b);
    const double th = 0.5 * (b - a);
    std::vector<double> cells;
    cells.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = tm + th * rule.nodes[static_cast<std::size_t>(i)];
        cells.push_back(geodesic_curvature(m, e, t).kappa_ds_dt *
                        rule.weights[static_cast<std::size_t>(i)] * th);
    }
    return pairwise_sum(cells);
}

// Continuous extension of kappa_g ds/dt at a panel end meeting a singular
// point, by extrapolating along the approach direction.
double endpoint_limit(const MetricField& m, const Curve2& e, double anchor, double toward) {
    RichardsonExtrapolator extr(4);
    double h = std::abs(toward - anchor) / 8.0;
    const double dir = toward > anchor ? 1.0 : -1.0;
    for (int k = 0; k < 28; ++k, h *= 0.5) {
        const double v = geodesic_curvature(m, e, anchor + dir * h).kappa_ds_dt;
        extr.add(h, v);
        if (k >= 4 && extr.error_estimate() < 1e-10) break;
    }
    return extr.value();
}

} // namespace

QuadratureResult integrate_boundary(const MetricField& m, const Region& reg,
                                    const QuadOptions& opts) {
    validate_region(m, reg);
    const double scale = region_scale(reg);

    auto edge_total = [&](const Curve2& e, int n) {
        std::vector<double> breaks = {e.t0(), e.t1()};
        for (const Vec2& p : reg.singular_points) {
            for (double t : singular_params_on_edge(e, p, scale)) breaks.push_back(t);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [&](double x, double y) { return std::abs(x - y) < 1e-12 * scale; }),
                     breaks.end());
        auto is_singular_param = [&](double t) {
            for (const Vec2& p : reg.singular_points) {
                if ((e.point(t) - p).norm() < 1e-7 * (1.0 + scale)) return true;
            }
            return false;
        };
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            double a = breaks[k], b = breaks[k + 1];
            const bool sing_a = is_singular_param(a);
            const bool sing_b = is_singular_param(b);
            const double delta = std::min(1e-8, 1e-4 * (b - a));
            if (sing_a) {
                acc += endpoint_limit(m, e, a, b) * delta;
                a += delta;
            }
            if (sing_b) {
                acc += endpoint_limit(m, e, b, a) * delta;
                b -= delta;
            }
            acc += boundary_panel(m, e, a, b, n);
        }
        return acc;
    };

    double coarse = 0.0, fine = 0.0;
    for (const Curve2& e : reg.edges) {
        coarse += edge_total(e, opts.nodes);
        fine += edge_total(e, 2 * opts.nodes);
    }
    QuadratureResult r{fine, std::abs(fine - coarse)};
    if (r.error_estimate > opts.tolerance * (1.0 + std::abs(fine))) {
        throw Error(Error::Kind::NonConvergence,
                    "boundary quadrature did not converge: two-level difference " +
                        fmt17(r.error_estimate));
    }
    return r;
}

std::vector<double> corner_angles(const MetricField& m, const Region& reg) {
    validate_region(m, reg);
    const std::size_t n = reg.edges.size();
    std::vector<double> angles;
    angles.reserve(reg.corners.size());
    for (const Corner& c : reg.corners) {
        const Curve2& e_in = reg.edges[static_cast<std::size_t>(c.edge)];
        const Curve2& e_out = reg.edges[(static_cast<std::size_t>(c.edge) + 1) % n];
        const Vec2 q = e_in.point(e_in.t1());
        const Vec2 a = e_in.velocity(e_in.t1());
        const Vec2 b = e_out.velocity(e_out.t0());

        const MetricValues g = m.values(q);
        const double lambda = g.lambda();
        if (lambda <= MetricField::regularity_eps(g)) {
            throw Error(Error::Kind::CornerAtSingularity,
                        "corner at (" + fmt17(q.u) + ", " + fmt17(q.v) +
                            ") sits at a degenerate point");
        }
        auto inner = [&g](Vec2 x, Vec2 y) {
            return g.E * x.u * y.u + g.F * (x.u * y.v + x.v * y.u) + g.G * x.v * y.v;
        };
        if (inner(a, a) <= kCurveRegularityEps || inner(b, b) <= kCurveRegularityEps) {
            throw Error(Error::Kind::DegenerateTangent, "degenerate tangent at a corner");
        }
        // Exterior turn: cos from the metric inner product, sin from the
        // metric area form; the interior angle is pi minus the turn.
        const double sin_turn = std::sqrt(lambda) * cross(a, b);
        const double cos_turn = inner(a, b);
        angles.push_back(std::numbers::pi - std::atan2(sin_turn, cos_turn));
    }
    return angles;
}

GBReport gauss_bonnet_check(const MetricField& m, const Region& reg, const QuadOptions& opts) {
    const QuadratureResult interior = integrate_curvature(m, reg, opts);
    const QuadratureResult boundary = integrate_boundary(m, reg, opts);
    const std::vector<double> angles = corner_angles(m, reg);

    GBReport rep;
    rep.interior_integral = interior.value;
    rep.boundary_integral = boundary.value;
    rep.corner_defect = 0.0;
    for (double ang : angles) rep.corner_defect += std::numbers::pi - ang;
    rep.total = rep.interior_integral + rep.boundary_integral + rep.corner_defect;
    rep.target = 2.0 * std::numbers::pi * reg.euler_char;
    rep.residual = std::abs(rep.total - rep.target);
    rep.error_estimate = interior.error_estimate + boundary.error_estimate;
    return rep;
}

// ---------------------------------------------------------------------------
// Canonical regions

namespace {

const std::vector<std::string> kCurveVars = {"t"};

ExprPtr num(double x) { return Expr::make_number(x); }
ExprPtr tvar() { return Expr::make_var(0); }

ExprPtr affine_of_t(double offset, double scale) {
    if (scale == 0.0) return num(offset);
    ExprPtr term = scale == 1.0 ? tvar() : Expr::make_binary('*', num(scale), tvar());
    if (offset == 0.0) return term;
    return Expr::make_binary('+', num(offset), term);
}

Curve2 line_edge(const std::string& name, Vec2 a, Vec2 b) {
    return Curve2(name, affine_of_t(a.u, b.u - a.u), affine_of_t(a.v, b.v - a.v), 0.0, 1.0);
}

Curve2 arc_edge(const std::string& name, Vec2 center, double radius, double th0, double th1) {
    // center + radius * (cos t, sin t), t in [th0, th1]
    ExprPtr u = Expr::make_binary(
        '+', num(center.u), Expr::make_binary('*', num(radius), Expr::make_call(ExprFunc::Cos, tvar())));
    ExprPtr v = Expr::make_binary(
        '+', num(center.v), Expr::make_binary('*', num(radius), Expr::make_call(ExprFunc::Sin, tvar())));
    return Curve2(name, u, v, th0, th1);
}

} // namespace

Region disc_region(Vec2 center, double radius) {
    Region reg;
    reg.edges.push_back(arc_edge("circle", center, radius, 0.0, 2.0 * std::numbers::pi));
    reg.euler_char = 1;
    return reg;
}

Region half_disc_region(Vec2 center, double radius) {
    Region reg;
    reg.edges.push_back(line_edge("diameter", {center.u - radius, center.v},
                                  {center.u + radius, center.v}));
    reg.edges.push_back(arc_edge("arc", center, radius, 0.0, std::numbers::pi));
    reg.corners.push_back({0, 1.0});
    reg.corners.push_back({1, std::numbers::pi});
    reg.euler_char = 1;
    return reg;
}

Region rect_region(const Box2& box) {
    Region reg;
    const Vec2 a{box.u_min, box.v_min}, b{box.u_max, box.v_min};
    const Vec2 c{box.u_max, box.v_max}, d{box.u_min, box.v_max};
    reg.edges.push_back(line_edge("bottom", a, b));
    reg.edges.push_back(line_edge("right", b, c));
    reg.edges.push_back(line_edge("top", c, d));
    reg.edges.push_back(line_edge("left", d, a));
    for (int i = 0; i < 4; ++i) reg.corners.push_back({i, 1.0});
    reg.euler_char = 1;
    return reg;
}

Region triangle_region(Vec2 a, Vec2 b, Vec2 c) {
    Region reg;
    reg.edges.push_back(line_edge("ab", a, b));
    reg.edges.push_back(line_edge("bc", b, c));
    reg.edges.push_back(line_edge("ca", c, a));
    for (int i = 0; i < 3; ++i) reg.corners.push_back({i, 1.0});
    reg.euler_char = 1;
    return reg;
}

} // namespace crosscap
