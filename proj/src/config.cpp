#include "crosscap/config.hpp"

#include <fstream>

#include "crosscap/builtins.hpp"
#include "crosscap/errors.hpp"

namespace crosscap {

namespace {

using nlohmann::json;

const std::vector<std::string> kSurfaceVars = {"u", "v"};
const std::vector<std::string> kCurveVars = {"t"};

std::string field_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

const json& require(const json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(field_path(path, key), "missing required field");
    return *it;
}

std::string require_string(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) throw ConfigError(field_path(path, key), "expected a string");
    return v.get<std::string>();
}

double require_number(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw ConfigError(field_path(path, key), "expected a number");
    return v.get<double>();
}

ExprPtr parse_field(const json& j, const std::string& key, const std::string& path,
                    const std::vector<std::string>& vars) {
    const std::string text = require_string(j, key, path);
    try {
        return parse(text, vars);
    } catch (const ParseError& e) {
        throw ConfigError(field_path(path, key), e.what());
    }
}

Box2 parse_box(const json& j, const std::string& path) {
    const json& b = require(j, "box", path);
    if (!b.is_array() || b.size() != 4 || !b[0].is_number()) {
        throw ConfigError(field_path(path, "box"), "expected [u_min, u_max, v_min, v_max]");
    }
    Box2 box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    if (box.empty()) throw ConfigError(field_path(path, "box"), "chart box is empty");
    return box;
}

SurfaceEntry parse_surface(const json& j, const std::string& path) {
    const std::string name = require_string(j, "name", path);
    const std::string kind = require_string(j, "kind", path);
    if (kind == "builtin") {
        const std::string which = require_string(j, "builtin", path);
        if (!is_builtin_surface(which)) {
            throw ConfigError(field_path(path, "builtin"), "unknown builtin surface '" + which + "'");
        }
        BuiltinSurface b = builtin_surface(which);
        return {name, std::move(b.metric), std::move(b.immersion)};
    }
    if (kind == "immersion") {
        Immersion3 im{name, parse_box(j, path), parse_field(j, "x", path, kSurfaceVars),
                      parse_field(j, "y", path, kSurfaceVars),
                      parse_field(j, "z", path, kSurfaceVars)};
        MetricField metric = MetricField::pullback(im);
        return {name, std::move(metric), std::move(im)};
    }
    if (kind == "metric") {
        const Box2 box = parse_box(j, path);
        MetricField metric = MetricField::from_exprs(
            name, box, parse_field(j, "E", path, kSurfaceVars),
            parse_field(j, "F", path, kSurfaceVars), parse_field(j, "G", path, kSurfaceVars));
        return {name, std::move(metric), std::nullopt};
    }
    throw ConfigError(field_path(path, "kind"),
                      "expected builtin|immersion|metric, got '" + kind + "'");
}

CurveEntry parse_curve(const json& j, const std::string& path) {
    CurveEntry entry;
    entry.name = require_string(j, "name", path);
    entry.surface = require_string(j, "surface", path);
    const json& dom = require(j, "domain", path);
    if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() || !dom[1].is_number()) {
        throw ConfigError(field_path(path, "domain"), "expected [t0, t1]");
    }
    const double t0 = dom[0].get<double>(), t1 = dom[1].get<double>();
    if (!(t0 < t1)) throw ConfigError(field_path(path, "domain"), "needs t0 < t1");
    entry.curve = Curve2(entry.name, parse_field(j, "u", path, kCurveVars),
                         parse_field(j, "v", path, kCurveVars), t0, t1);
    return entry;
}

RegionEntry parse_region(const json& j, const std::string& path, const Config& partial) {
    RegionEntry entry;
    entry.name = require_string(j, "name", path);
    entry.surface = require_string(j, "surface", path);

    const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "edges";
    if (kind == "disc" || kind == "half_disc") {
        const json& c = require(j, "center", path);
        if (!c.is_array() || c.size() != 2) {
            throw ConfigError(field_path(path, "center"), "expected [u, v]");
        }
        const Vec2 center{c[0].get<double>(), c[1].get<double>()};
        const double radius = require_number(j, "radius", path);
        if (radius <= 0.0) throw ConfigError(field_path(path, "radius"), "needs radius > 0");
        entry.region = kind == "disc" ? disc_region(center, radius)
                                      : half_disc_region(center, radius);
    } else if (kind == "rect") {
        entry.region = rect_region(parse_box(j, path));
    } else if (kind == "edges") {
        const json& edges = require(j, "edges", path);
        if (!edges.is_array() || edges.empty()) {
            throw ConfigError(field_path(path, "edges"), "expected a nonempty list of curve names");
        }
        for (const auto& e : edges) {
            std::string name = e.is_string() ? e.get<std::string>() : "";
            bool reversed = false;
            if (!name.empty() && name[0] == '~') {
                reversed = true;
                name = name.substr(1);
            }
            const CurveEntry& ce = partial.find_curve(name, field_path(path, "edges"));
            if (ce.surface != entry.surface) {
                throw ConfigError(field_path(path, "edges"),
                                  "edge '" + name + "' belongs to surface '" + ce.surface + "'");
            }
            entry.region.edges.push_back(reversed ? ce.curve.reversed() : ce.curve);
        }
        if (j.contains("corners")) {
            for (const auto& c : j["corners"]) {
                if (!c.is_number_integer()) {
                    throw ConfigError(field_path(path, "corners"), "expected edge indices");
                }
                const int idx = c.get<int>();
                if (idx < 0 || idx >= static_cast<int>(entry.region.edges.size())) {
                    throw ConfigError(field_path(path, "corners"),
                                      "edge index " + std::to_string(idx) + " out of range");
                }
                entry.region.corners.push_back({idx, entry.region.edges[idx].t1()});
            }
        }
    } else {
        throw ConfigError(field_path(path, "kind"), "expected disc|half_disc|rect|edges");
    }

    if (j.contains("euler_char")) {
        entry.region.euler_char = j["euler_char"].get<int>();
    }
    if (j.contains("polar_radius")) {
        entry.region.polar_radii = {j["polar_radius"].get<double>()};
    }
    return entry;
}

Task parse_task(const json& j, const std::string& path) {
    Task t;
    const std::string type = require_string(j, "type", path);
    if (type == "analyze") t.type = Task::Type::Analyze;
    else if (type == "curve") t.type = Task::Type::Curve;
    else if (type == "gauss-bonnet") t.type = Task::Type::GaussBonnet;
    else if (type == "verify") t.type = Task::Type::Verify;
    else throw ConfigError(field_path(path, "type"),
                           "expected analyze|curve|gauss-bonnet|verify, got '" + type + "'");

    if (j.contains("surface")) t.surface = j["surface"].get<std::string>();
    if (j.contains("curve")) t.curve = j["curve"].get<std::string>();
    if (j.contains("region")) t.region = j["region"].get<std::string>();
    if (j.contains("only")) t.only = j["only"].get<std::string>();
    if (j.contains("samples")) t.samples = j["samples"].get<int>();
    if (j.contains("limits")) t.limits = j["limits"].get<bool>();
    if (j.contains("refine")) t.refine = j["refine"].get<int>();
    if (j.contains("jet_order")) t.jet_order = j["jet_order"].get<int>();
    if (j.contains("out")) t.out = j["out"].get<std::string>();
    if (j.contains("summary_out")) t.summary_out = j["summary_out"].get<std::string>();
    if (t.samples <= 0) throw ConfigError(field_path(path, "samples"), "needs samples > 0");
    if (t.refine < 0) throw ConfigError(field_path(path, "refine"), "needs refine >= 0");
    if (t.jet_order < 2 || t.jet_order > 16) {
        throw ConfigError(field_path(path, "jet_order"), "jet order must be in [2, 16]");
    }
    return t;
}

} // namespace

const SurfaceEntry& Config::find_surface(const std::string& name, const std::string& path) const {
    for (const auto& s : surfaces) {
        if (s.name == name) return s;
    }
    throw ConfigError(path, "unknown surface '" + name + "'");
}

const CurveEntry& Config::find_curve(const std::string& name, const std::string& path) const {
    for (const auto& c : curves) {
        if (c.name == name) return c;
    }
    throw ConfigError(path, "unknown curve '" + name + "'");
}

const RegionEntry& Config::find_region(const std::string& name, const std::string& path) const {
    for (const auto& r : regions) {
        if (r.name == name) return r;
    }
    throw ConfigError(path, "unknown region '" + name + "'");
}

Config parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config root must be an object");
    Config cfg;
    if (doc.contains("surfaces")) {
        std::size_t i = 0;
        for (const auto& s : doc["surfaces"]) {
            cfg.surfaces.push_back(parse_surface(s, "surfaces[" + std::to_string(i) + "]"));
            ++i;
        }
    }
    if (doc.contains("curves")) {
        std::size_t i = 0;
        for (const auto& c : doc["curves"]) {
            const std::string path = "curves[" + std::to_string(i) + "]";
            CurveEntry entry = parse_curve(c, path);
            cfg.find_surface(entry.surface, field_path(path, "surface"));
            cfg.curves.push_back(std::move(entry));
            ++i;
        }
    }
    if (doc.contains("regions")) {
        std::size_t i = 0;
        for (const auto& r : doc["regions"]) {
            const std::string path = "regions[" + std::to_string(i) + "]";
            RegionEntry entry = parse_region(r, path, cfg);
            cfg.find_surface(entry.surface, field_path(path, "surface"));
            cfg.regions.push_back(std::move(entry));
            ++i;
        }
    }
    if (doc.contains("tasks")) {
        std::size_t i = 0;
        for (const auto& t : doc["tasks"]) {
            const std::string path = "tasks[" + std::to_string(i) + "]";
            Task task = parse_task(t, path);
            // Resolve references now so bad configs fail before running.
            if (!task.surface.empty()) cfg.find_surface(task.surface, field_path(path, "surface"));
            if (!task.curve.empty()) cfg.find_curve(task.curve, field_path(path, "curve"));
            if (!task.region.empty()) cfg.find_region(task.region, field_path(path, "region"));
            if (task.type == Task::Type::Curve && task.curve.empty()) {
                throw ConfigError(field_path(path, "curve"), "curve task needs a curve reference");
            }
            if (task.type == Task::Type::GaussBonnet && task.region.empty()) {
                throw ConfigError(field_path(path, "region"),
                                  "gauss-bonnet task needs a region reference");
            }
            cfg.tasks.push_back(std::move(task));
            ++i;
        }
    }
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace crosscap
