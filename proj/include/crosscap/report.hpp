#pragma once
#include <json.hpp>

#include "crosscap/curvature.hpp"
#include "crosscap/gaussbonnet.hpp"
#include "crosscap/singularity.hpp"

namespace crosscap {

using Json = nlohmann::json;

Json to_json(const SingularityReport& r);
Json to_json(const WestCoefficients& w);
Json to_json(const LimitEstimate& e);
Json to_json(const GBReport& r);
Json to_json(const SeriesComparison& c);

} // namespace crosscap
