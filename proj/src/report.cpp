#include "crosscap/report.hpp"

#include <cmath>

namespace crosscap {

namespace {

// Infinities are divergence markers; JSON has no literal for them.
Json number_or_marker(double x) {
    if (std::isinf(x)) return x > 0 ? Json("+inf") : Json("-inf");
    return Json(x);
}

} // namespace

Json to_json(const SingularityReport& r) {
    Json j;
    j["p"] = {r.p.u, r.p.v};
    j["lambda_value"] = r.lambda_value;
    j["grad_lambda"] = {r.grad_lambda[0], r.grad_lambda[1]};
    j["hessian"] = {{r.hessian[0], r.hessian[1]}, {r.hessian[1], r.hessian[2]}};
    j["H_lambda"] = r.H_lambda;
    j["null_dir"] = {r.null_dir.u, r.null_dir.v};
    j["null_dim"] = r.null_dim;
    j["admissibility_residual"] = r.admissibility_residual;
    j["Delta"] = r.Delta;
    j["alpha"] = r.alpha;
    if (r.alpha02) j["alpha02"] = *r.alpha02;
    j["classification"] = to_string(r.classification);
    j["relation_residual"] = r.relation_residual;
    return j;
}

Json to_json(const WestCoefficients& w) {
    return Json{{"alpha02", w.alpha02},
                {"alpha11", w.alpha11},
                {"alpha20", w.alpha20},
                {"fit_residual", w.fit_residual}};
}

Json to_json(const LimitEstimate& e) {
    Json j;
    j["value"] = number_or_marker(e.value);
    j["error_estimate"] = e.error_estimate;
    j["samples_used"] = e.samples_used;
    j["converged"] = e.converged;
    j["diverged"] = e.diverged;
    if (e.diverged) j["rate"] = e.rate;
    return j;
}

Json to_json(const GBReport& r) {
    return Json{{"interior_integral", r.interior_integral},
                {"boundary_integral", r.boundary_integral},
                {"corner_defect", r.corner_defect},
                {"total", r.total},
                {"target", r.target},
                {"residual", r.residual},
                {"error_estimate", r.error_estimate}};
}

Json to_json(const SeriesComparison& c) {
    Json j;
    j["transversal"] = c.transversal;
    j["oracle_value"] = number_or_marker(c.oracle_value);
    j["oracle_kind"] = c.oracle_diverges ? "rate" : "limit";
    j["formula_value"] = c.formula_value;
    if (!c.transversal) {
        j["printed_c_minus1"] = c.printed_c_minus1;
        j["printed_c0"] = c.printed_c0;
    }
    j["abs_diff"] = c.abs_diff;
    j["rel_diff"] = c.rel_diff;
    j["ratio"] = c.ratio;
    j["verdict"] = c.consistent ? "consistent" : "inconsistent";
    return j;
}

} // namespace crosscap
