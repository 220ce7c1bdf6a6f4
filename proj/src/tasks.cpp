#include "crosscap/tasks.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "crosscap/errors.hpp"
#include "crosscap/report.hpp"

namespace crosscap {

namespace {

// Full analysis pipeline for one surface: locate, classify, and where the
// point is an intrinsic cross cap, extract the West coefficients in the
// adjusted chart.
Json analyze_surface(const SurfaceEntry& entry) {
    Json doc;
    doc["surface"] = entry.name;
    doc["reports"] = Json::array();
    const std::vector<Vec2> points = find_singular_points(entry.metric);
    for (const Vec2& p : points) {
        const SingularityReport rep = classify(entry.metric, p);
        Json jr = to_json(rep);
        if (rep.classification == Classification::IntrinsicCrossCap) {
            try {
                const AdjustedChart chart = adjusted_chart(entry.metric, p);
                jr["west"] = to_json(west_extract(chart.metric));
            } catch (const NotWestChartError& e) {
                jr["west"] = nullptr;
                jr["west_error"] = e.what();
            }
        }
        doc["reports"].push_back(std::move(jr));
    }
    return doc;
}

bool starts_at_singularity(const MetricField& m, const Curve2& c) {
    const Vec2 start = c.point(c.t0());
    if (!m.box().contains(start)) return false;
    return std::abs(m.lambda(start)) < singular_lambda_tol(m);
}

} // namespace

std::vector<TaskOutput> run_analyze_task(const Config& cfg, const Task& task) {
    Json doc;
    doc["task"] = "analyze";
    doc["surfaces"] = Json::array();
    if (task.surface.empty()) {
        for (const auto& s : cfg.surfaces) doc["surfaces"].push_back(analyze_surface(s));
    } else {
        doc["surfaces"].push_back(analyze_surface(cfg.find_surface(task.surface, "task.surface")));
    }
    return {{task.out, doc.dump(2) + "\n"}};
}

std::vector<TaskOutput> run_curve_task(const Config& cfg, const Task& task) {
    const CurveEntry& ce = cfg.find_curve(task.curve, "task.curve");
    const SurfaceEntry& se = cfg.find_surface(ce.surface, "task.surface");
    const Curve2& curve = ce.curve;
    const MetricField& metric = se.metric;

    // CSV over the sample grid; the grid starts one step after t0 so curves
    // anchored at a singular point stay evaluable.
    std::string csv = "t,speed2,kappa_g,ds_dt,kappa_ds_dt\n";
    const double t0 = curve.t0(), t1 = curve.t1();
    for (int i = 1; i <= task.samples; ++i) {
        const double t = t0 + (t1 - t0) * i / task.samples;
        const CurvatureSample s = geodesic_curvature(metric, curve, t);
        csv += fmt17(s.t) + "," + fmt17(s.speed2) + "," + fmt17(s.kappa_g) + "," +
               fmt17(s.ds_dt) + "," + fmt17(s.kappa_ds_dt) + "\n";
    }

    Json summary;
    summary["task"] = "curve";
    summary["curve"] = ce.name;
    summary["surface"] = se.name;
    const bool singular_start = starts_at_singularity(metric, curve);
    summary["starts_at_singularity"] = singular_start;
    if (task.limits && singular_start) {
        summary["limits"]["kappa_g"] =
            to_json(limit_at_singularity(metric, curve, CurveQuantity::KappaG));
        summary["limits"]["kappa_ds"] =
            to_json(limit_at_singularity(metric, curve, CurveQuantity::KappaDs));

        // The closed-form comparison needs the chart to be adjusted at the
        // origin; run it when that is the case, otherwise report why not.
        const Vec2 start = curve.point(t0);
        const SingularityReport rep = classify(metric, start);
        if (rep.classification == Classification::IntrinsicCrossCap &&
            start.norm() < 1e-9 && std::abs(rep.null_dir.u) < 1e-9) {
            try {
                const WestCoefficients w = west_extract(adjusted_chart(metric, start).metric);
                summary["west"] = to_json(w);
                summary["compare"] = to_json(compare_series(metric, curve, w));
                const auto cj = curve.jets(t0, 4);
                if (std::abs(cj.u.derivative(1)) < 1e-9) {
                    summary["bounded"] =
                        boundedness_predicate(w, cj.u.derivative(2), cj.u.derivative(3));
                }
            } catch (const NotWestChartError& e) {
                summary["compare"] = nullptr;
                summary["compare_skipped"] = e.what();
            }
        } else {
            summary["compare"] = nullptr;
            summary["compare_skipped"] = "chart is not adjusted at the origin for this curve";
        }
    }

    std::vector<TaskOutput> out;
    out.push_back({task.out, csv});
    out.push_back({task.summary_out, summary.dump(2) + "\n"});
    return out;
}

std::vector<TaskOutput> run_gauss_bonnet_task(const Config& cfg, const Task& task) {
    const RegionEntry& re = cfg.find_region(task.region, "task.region");
    const SurfaceEntry& se = cfg.find_surface(re.surface, "task.surface");

    Region region = re.region;
    region.singular_points.clear();
    for (const Vec2& p : find_singular_points(se.metric)) {
        if (region_contains(region, p)) region.singular_points.push_back(p);
    }
    if (!region.polar_radii.empty()) {
        region.polar_radii.resize(region.singular_points.size(), region.polar_radii[0]);
    }

    QuadOptions opts;
    if (task.refine > 0) opts.nodes = task.refine;
    const GBReport rep = gauss_bonnet_check(se.metric, region, opts);

    Json doc = to_json(rep);
    doc["task"] = "gauss-bonnet";
    doc["region"] = re.name;
    doc["surface"] = se.name;
    doc["singular_points"] = Json::array();
    for (const Vec2& p : region.singular_points) doc["singular_points"].push_back({p.u, p.v});
    return {{task.out, doc.dump(2) + "\n"}};
}

void emit_outputs(const std::vector<TaskOutput>& outputs) {
    for (const TaskOutput& o : outputs) {
        if (o.path.empty()) {
            std::cout << o.content;
        } else {
            std::ofstream f(o.path, std::ios::binary);
            if (!f) throw ConfigError(o.path, "cannot open output file");
            f << o.content;
        }
    }
}

} // namespace crosscap
