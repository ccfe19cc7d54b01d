#include "gfs/results.hpp"

#include <fstream>
#include <sstream>

namespace gfs {
namespace {

std::string mask_bits(const std::vector<bool>& mask) {
    std::string s(mask.size(), '0');
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s[i] = '1';
    return s;
}

json curve_json(const std::vector<std::pair<double, double>>& curve) {
    json arr = json::array();
    for (const auto& [t, f] : curve) arr.push_back({t, f});
    return arr;
}

} // namespace

json metrics_json(const MetricsReport& m) {
    json j;
    j["mean_cle"] = m.mean_cle;
    j["dp_threshold"] = m.dp_threshold;
    j["dp"] = m.dp_at_threshold;
    j["op_iou"] = m.op_iou;
    j["op"] = m.op_at_iou;
    j["auc"] = m.auc;
    j["precision_curve"] = curve_json(m.precision_curve);
    j["success_curve"] = curve_json(m.success_curve);
    return j;
}

json track_result_json(const std::string& name, const TrackResult& result,
                       const MetricsReport* metrics, const RankDiagnostic* rank) {
    json j;
    j["sequence"] = name;
    json boxes = json::array();
    for (const BoundingBox& b : result.boxes) boxes.push_back({b.x, b.y, b.w, b.h});
    j["boxes"] = boxes;
    j["peaks"] = result.peaks;
    json cmasks = json::array();
    for (const auto& m : result.channel_masks) cmasks.push_back(mask_bits(m));
    j["channel_masks"] = cmasks;
    json smasks = json::array();
    for (const auto& m : result.spatial_masks) smasks.push_back(mask_bits(m));
    j["spatial_masks"] = smasks;
    j["grid_side"] = result.grid_side;
    if (metrics) j["metrics"] = metrics_json(*metrics);
    if (rank) {
        j["rank"] = rank->numerical_rank;
        j["rank_tolerance_ratio"] = rank->tolerance_ratio;
        j["singular_values"] = rank->singular_values;
    }
    return j;
}

json ablation_json(const std::string& name, const std::map<std::string, VariantOutcome>& outcomes) {
    json j;
    j["sequence"] = name;
    json variants;
    for (const auto& [variant, out] : outcomes) {
        json v;
        if (out.failed) {
            v["error"] = out.error;
        } else {
            v["metrics"] = metrics_json(out.metrics);
            json heat = json::array();
            const int n = out.heatmap.side();
            for (int i = 0; i < n; ++i) {
                json row = json::array();
                for (int jj = 0; jj < n; ++jj) row.push_back(out.heatmap.at(i, jj));
                heat.push_back(row);
            }
            v["filter_heatmap"] = heat;
        }
        variants[variant] = v;
    }
    j["variants"] = variants;
    return j;
}

json sweep_json(const std::string& name, const std::vector<SweepPoint>& points) {
    json j;
    j["sequence"] = name;
    json rows = json::array();
    for (const SweepPoint& p : points) {
        json row;
        row["lambda_spatial"] = p.lambda_spatial;
        row["lambda_channel"] = p.lambda_channel;
        row["lambda_temporal"] = p.lambda_temporal;
        row["auc"] = p.auc;
        row["mean_cle"] = p.mean_cle;
        rows.push_back(row);
    }
    j["points"] = rows;
    return j;
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write results file: " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw FormatError("bad results file " + path + ": " + e.what());
    }
    return doc;
}

std::vector<BoundingBox> boxes_from_results(const json& doc) {
    if (!doc.contains("boxes") || !doc["boxes"].is_array())
        throw FormatError("results document has no `boxes` array");
    std::vector<BoundingBox> out;
    for (const auto& b : doc["boxes"]) {
        if (!b.is_array() || b.size() != 4) throw FormatError("bad box entry in results document");
        out.push_back({b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()});
    }
    return out;
}

void write_curve_csv(const std::string& path, const std::vector<std::pair<double, double>>& curve) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CSV file: " + path);
    out << "threshold,fraction\n";
    for (const auto& [t, f] : curve) out << t << "," << f << "\n";
    if (!out) throw IoError("write failed: " + path);
}

std::string metrics_table(const MetricsReport& m) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-18s %10.4f\n", "mean CLE (px)", m.mean_cle);
    out << line;
    std::snprintf(line, sizeof(line), "DP @ %-12.1f %10.3f\n", m.dp_threshold, m.dp_at_threshold);
    out << line;
    std::snprintf(line, sizeof(line), "OP @ IoU %-8.2f %10.3f\n", m.op_iou, m.op_at_iou);
    out << line;
    std::snprintf(line, sizeof(line), "%-18s %10.3f\n", "AUC", m.auc);
    out << line;
    return out.str();
}

} // namespace gfs
