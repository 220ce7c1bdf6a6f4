#pragma once
#include <functional>
#include <optional>
#include <string>

#include "crosscap/expr.hpp"
#include "crosscap/jet.hpp"

namespace crosscap {

// A scalar field over the chart, evaluated as a jet of requested order.
using ScalarField = std::function<Jet2(Vec2, int)>;

// Parametric surface in R^3 over a chart box.  Singular immersions (rank
// drops of df) are the interesting case, so no regularity invariant here.
struct Immersion3 {
    std::string name;
    Box2 box;
    ExprPtr x, y, z;

    struct Jets {
        Jet2 x, y, z;
    };
    Jets jets(Vec2 p, int order) const;
};

struct MetricValues {
    double E, F, G;
    double lambda() const { return E * G - F * F; }
};

struct MetricJets {
    Jet2 E, F, G;
};

// Christoffel symbols at a regular point; symmetric in the lower indices.
struct ChristoffelAt {
    Vec2 p;
    double g1_11, g2_11;
    double g1_12, g2_12;
    double g1_22, g2_22;
};

// Positive semi-definite metric E du^2 + 2F du dv + G dv^2 on a single chart.
// Coefficients are arbitrary scalar fields so that pullbacks and chart
// changes can be composed without symbolic rewriting.
class MetricField {
public:
    MetricField(std::string name, Box2 box, ScalarField E, ScalarField F, ScalarField G);

    static MetricField from_exprs(std::string name, Box2 box,
                                  ExprPtr E, ExprPtr F, ExprPtr G);
    // First fundamental form of an immersion: E = f_u.f_u, F = f_u.f_v,
    // G = f_v.f_v, realized as composed jet evaluators.
    static MetricField pullback(const Immersion3& im);

    // Metric after the chart change old = map(new), with the usual bilinear
    // transformation of the coefficients.  The new chart box defaults to a
    // conservative axis-aligned box inside the preimage of the old one.
    MetricField transformed(const AffineMap2& map,
                            std::optional<Box2> new_box = std::nullopt) const;

    const std::string& name() const { return name_; }
    const Box2& box() const { return box_; }

    Jet2 E_jet(Vec2 p, int order) const { return E_(p, order); }
    Jet2 F_jet(Vec2 p, int order) const { return F_(p, order); }
    Jet2 G_jet(Vec2 p, int order) const { return G_(p, order); }
    MetricJets jets(Vec2 p, int order) const;
    MetricValues values(Vec2 p) const;

    Jet2 lambda_jet(Vec2 p, int order) const;
    double lambda(Vec2 p) const { return values(p).lambda(); }

    // Scale-aware regularity guard for EG - F^2.
    static double regularity_eps(const MetricValues& g) {
        return 1e-10 * (1.0 + std::abs(g.E) + std::abs(g.G));
    }

    ChristoffelAt christoffel(Vec2 p) const;

    // Intrinsic Gaussian curvature (Brioschi formula, first fundamental form
    // only).  Throws at degenerate points.
    double gaussian_curvature(Vec2 p) const;
    // K * sqrt(EG - F^2), the curvature density of the area integrand,
    // computed fused to avoid the 1/lambda^2 blowup.
    double curvature_density(Vec2 p) const;

private:
    std::string name_;
    Box2 box_;
    ScalarField E_, F_, G_;
};

} // namespace crosscap
