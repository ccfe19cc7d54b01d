#pragma once

#include <string>

#include "json.hpp"

#include "gfs/diagnostics.hpp"
#include "gfs/metrics.hpp"
#include "gfs/tracker.hpp"

namespace gfs {

using json = nlohmann::ordered_json;

json metrics_json(const MetricsReport& m);
json track_result_json(const std::string& name, const TrackResult& result,
                       const MetricsReport* metrics, const RankDiagnostic* rank);
json ablation_json(const std::string& name, const std::map<std::string, VariantOutcome>& outcomes);
json sweep_json(const std::string& name, const std::vector<SweepPoint>& points);

void write_json_file(const std::string& path, const json& doc);
json read_json_file(const std::string& path);

// Per-frame boxes stored in a results document written by track_result_json.
std::vector<BoundingBox> boxes_from_results(const json& doc);

// `threshold,fraction` rows.
void write_curve_csv(const std::string& path, const std::vector<std::pair<double, double>>& curve);

std::string metrics_table(const MetricsReport& m);

} // namespace gfs
