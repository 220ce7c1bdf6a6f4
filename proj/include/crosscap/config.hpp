#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosscap/curvature.hpp"
#include "crosscap/gaussbonnet.hpp"
#include "crosscap/metric.hpp"

namespace crosscap {

// Declarative run description: surfaces, curves on them, regions, and the
// tasks to execute.  All cross-references are resolved and expressions
// parsed at load time; failures carry the JSON path of the offending field.

struct SurfaceEntry {
    std::string name;
    MetricField metric;
    std::optional<Immersion3> immersion;
};

struct CurveEntry {
    std::string name;
    std::string surface;
    Curve2 curve;
};

struct RegionEntry {
    std::string name;
    std::string surface;
    Region region;
};

struct Task {
    enum class Type { Analyze, Curve, GaussBonnet, Verify };
    Type type = Type::Analyze;
    std::string surface;  // analyze; empty = all
    std::string curve;    // curve task
    std::string region;   // gauss-bonnet task
    std::string only;     // verify filter
    int samples = 64;
    bool limits = true;
    int refine = 0;       // quadrature nodes; 0 = default
    int jet_order = kDefaultJetOrder;
    std::string out;          // output path; empty = stdout
    std::string summary_out;  // curve task JSON summary
};

struct Config {
    std::vector<SurfaceEntry> surfaces;
    std::vector<CurveEntry> curves;
    std::vector<RegionEntry> regions;
    std::vector<Task> tasks;

    const SurfaceEntry& find_surface(const std::string& name, const std::string& path) const;
    const CurveEntry& find_curve(const std::string& name, const std::string& path) const;
    const RegionEntry& find_region(const std::string& name, const std::string& path) const;
};

Config parse_config(const nlohmann::json& doc);
Config load_config_file(const std::string& path);

} // namespace crosscap
