#include "gfs/config.hpp"

#include <fstream>
#include <sstream>

namespace gfs {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key `" + key + "`: not a number: " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    const int i = static_cast<int>(d);
    if (d != i) throw ConfigError("config key `" + key + "`: not an integer: " + v);
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key `" + key + "`: not a boolean: " + v);
}

std::vector<std::string> split_csv(const std::string& v) {
    std::vector<std::string> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const std::string& item : split_csv(v)) out.push_back(to_double(key, item));
    if (out.empty()) throw ConfigError("config key `" + key + "`: empty list");
    return out;
}

void reject_unknown(const ConfigKV& kv, const std::vector<ConfigKeyDoc>& docs) {
    for (const auto& [key, value] : kv) {
        bool known = false;
        for (const ConfigKeyDoc& d : docs)
            if (d.key == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError("unknown config key: " + key);
    }
}

const std::string* find(const ConfigKV& kv, const std::string& key) {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
}

} // namespace

ConfigKV parse_config_text(const std::string& text, const std::string& origin) {
    ConfigKV kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

ConfigKV parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

const std::vector<ConfigKeyDoc>& tracker_config_keys() {
    static const std::vector<ConfigKeyDoc> docs = {
        {"feature_types", "intensity,gradient_hist",
         "ordered list from {intensity, gradient_hist, colour_names, external}"},
        {"cell_size", "4", "pixels per feature cell (must divide model_side)"},
        {"orientation_bins", "9", "gradient histogram orientation bins"},
        {"cosine_window", "true", "multiply features by a separable Hann window"},
        {"cn_table", "", "path to a colour-name table file (empty: built-in table)"},
        {"padding", "1.5", "search window side = max(w,h) * (1 + padding)"},
        {"model_side", "64", "resampled crop side in pixels"},
        {"sigma_factor", "0.1", "label sigma = sigma_factor * sqrt(target area in cells)"},
        {"scale_factors", "0.98,1.0,1.02", "detection scale pyramid (must contain 1.0)"},
        {"alpha", "0.6", "model update rate in [0, 1]"},
        {"variant", "all", "one of {baseline, ss, cs, lr, all}"},
        {"lambda_spatial", "0.005", "spatial group regularisation weight"},
        {"lambda_channel", "0.05", "channel group regularisation weight"},
        {"lambda_temporal", "16", "temporal smoothness weight"},
        {"ridge_lambda", "0.0001", "ridge weight of the classical closed-form learner"},
        {"channel_ratio", "0.9", "fraction of channels kept by selection, in (0, 1]"},
        {"spatial_ratio", "0.1", "fraction of spatial cells kept by selection, in (0, 1]"},
        {"per_block", "true", "apply channel selection per feature block"},
        {"mu_init", "1", "initial ADMM penalty"},
        {"mu_growth", "1.05", "ADMM penalty growth factor (>= 1)"},
        {"mu_max", "100", "ADMM penalty cap"},
        {"max_iters", "50", "ADMM iteration cap"},
        {"tol_primal", "1e-5", "relative primal-residual tolerance"},
        {"tol_change", "1e-5", "relative iterate-change tolerance"},
        {"external_cell_px", "4", "pixels per cell of imported feature grids"},
        {"record_history", "false", "keep vectorised per-frame filters for rank diagnostics"},
    };
    return docs;
}

const std::vector<ConfigKeyDoc>& synthetic_config_keys() {
    static const std::vector<ConfigKeyDoc> docs = {
        {"frame_width", "200", "frame width, pixels"},
        {"frame_height", "200", "frame height, pixels"},
        {"frames", "60", "number of frames"},
        {"object", "blob", "object appearance: blob or textured_square"},
        {"object_size", "24", "object side, pixels"},
        {"motion", "linear", "path type: linear or sinusoidal"},
        {"velocity_x", "1", "x velocity, px/frame (linear)"},
        {"velocity_y", "0", "y velocity, px/frame"},
        {"amplitude", "0", "sinusoidal x amplitude, pixels"},
        {"period", "40", "sinusoidal period, frames"},
        {"start_x", "0", "start centre x (0: auto placement)"},
        {"start_y", "0", "start centre y (0: auto placement)"},
        {"noise_sigma", "0", "per-frame 8-bit pixel noise sigma"},
        {"informative_channels", "0", "feature channels carrying the object template"},
        {"noise_channels", "0", "feature channels of pure i.i.d. noise"},
        {"feature_grid", "16", "feature tensor grid side"},
        {"feature_window_scale", "2.5", "feature window side = scale * object_size"},
        {"feature_noise", "0.2", "noise sigma on informative channels"},
        {"noise_channel_sigma", "1", "i.i.d. sigma of noise channels"},
        {"seed", "1", "generator seed"},
    };
    return docs;
}

std::string config_keys_help() {
    std::ostringstream out;
    out << "Tracker config keys (key = value, `#` comments, unknown keys rejected):\n";
    for (const ConfigKeyDoc& d : tracker_config_keys())
        out << "  " << d.key << " (default: " << (d.default_value.empty() ? "<empty>" : d.default_value)
            << ") - " << d.help << "\n";
    out << "\nSynthetic sequence spec keys:\n";
    for (const ConfigKeyDoc& d : synthetic_config_keys())
        out << "  " << d.key << " (default: " << (d.default_value.empty() ? "<empty>" : d.default_value)
            << ") - " << d.help << "\n";
    return out.str();
}

TrackerConfig tracker_config_from(const ConfigKV& kv) {
    reject_unknown(kv, tracker_config_keys());
    TrackerConfig cfg;
    if (const auto* v = find(kv, "feature_types")) {
        cfg.features.feature_types.clear();
        for (const std::string& name : split_csv(*v))
            cfg.features.feature_types.push_back(feature_type_from_name(name));
    }
    if (const auto* v = find(kv, "cell_size")) cfg.features.cell_size = to_int("cell_size", *v);
    if (const auto* v = find(kv, "orientation_bins"))
        cfg.features.orientation_bins = to_int("orientation_bins", *v);
    if (const auto* v = find(kv, "cosine_window"))
        cfg.features.cosine_window = to_bool("cosine_window", *v);
    if (const auto* v = find(kv, "cn_table")) cfg.features.cn_table_path = *v;
    if (const auto* v = find(kv, "padding")) cfg.padding = to_double("padding", *v);
    if (const auto* v = find(kv, "model_side")) cfg.model_side = to_int("model_side", *v);
    if (const auto* v = find(kv, "sigma_factor")) cfg.sigma_factor = to_double("sigma_factor", *v);
    if (const auto* v = find(kv, "scale_factors")) cfg.scale_factors = to_double_list("scale_factors", *v);
    if (const auto* v = find(kv, "alpha")) cfg.alpha = to_double("alpha", *v);
    if (const auto* v = find(kv, "variant")) cfg.variant = variant_from_name(*v);
    if (const auto* v = find(kv, "lambda_spatial")) cfg.reg.lambda_spatial = to_double("lambda_spatial", *v);
    if (const auto* v = find(kv, "lambda_channel")) cfg.reg.lambda_channel = to_double("lambda_channel", *v);
    if (const auto* v = find(kv, "lambda_temporal"))
        cfg.reg.lambda_temporal = to_double("lambda_temporal", *v);
    if (const auto* v = find(kv, "ridge_lambda")) cfg.reg.ridge_lambda = to_double("ridge_lambda", *v);
    if (const auto* v = find(kv, "channel_ratio")) cfg.sel.channel_ratio = to_double("channel_ratio", *v);
    if (const auto* v = find(kv, "spatial_ratio")) cfg.sel.spatial_ratio = to_double("spatial_ratio", *v);
    if (const auto* v = find(kv, "per_block")) cfg.sel.per_block = to_bool("per_block", *v);
    if (const auto* v = find(kv, "mu_init")) cfg.admm.mu_init = to_double("mu_init", *v);
    if (const auto* v = find(kv, "mu_growth")) cfg.admm.mu_growth = to_double("mu_growth", *v);
    if (const auto* v = find(kv, "mu_max")) cfg.admm.mu_max = to_double("mu_max", *v);
    if (const auto* v = find(kv, "max_iters")) cfg.admm.max_iters = to_int("max_iters", *v);
    if (const auto* v = find(kv, "tol_primal")) cfg.admm.tol_primal = to_double("tol_primal", *v);
    if (const auto* v = find(kv, "tol_change")) cfg.admm.tol_change = to_double("tol_change", *v);
    if (const auto* v = find(kv, "external_cell_px"))
        cfg.external_cell_px = to_double("external_cell_px", *v);
    if (const auto* v = find(kv, "record_history")) cfg.record_history = to_bool("record_history", *v);
    cfg.validate();
    return cfg;
}

SyntheticSpec synthetic_spec_from(const ConfigKV& kv) {
    reject_unknown(kv, synthetic_config_keys());
    SyntheticSpec spec;
    if (const auto* v = find(kv, "frame_width")) spec.frame_width = to_int("frame_width", *v);
    if (const auto* v = find(kv, "frame_height")) spec.frame_height = to_int("frame_height", *v);
    if (const auto* v = find(kv, "frames")) spec.frame_count = to_int("frames", *v);
    if (const auto* v = find(kv, "object")) {
        if (*v == "blob")
            spec.object = ObjectKind::gaussian_blob;
        else if (*v == "textured_square")
            spec.object = ObjectKind::textured_square;
        else
            throw ConfigError("config key `object`: expected blob or textured_square");
    }
    if (const auto* v = find(kv, "object_size")) spec.object_size = to_double("object_size", *v);
    if (const auto* v = find(kv, "motion")) {
        if (*v == "linear")
            spec.motion = MotionKind::linear;
        else if (*v == "sinusoidal")
            spec.motion = MotionKind::sinusoidal;
        else
            throw ConfigError("config key `motion`: expected linear or sinusoidal");
    }
    if (const auto* v = find(kv, "velocity_x")) spec.velocity_x = to_double("velocity_x", *v);
    if (const auto* v = find(kv, "velocity_y")) spec.velocity_y = to_double("velocity_y", *v);
    if (const auto* v = find(kv, "amplitude")) spec.amplitude = to_double("amplitude", *v);
    if (const auto* v = find(kv, "period")) spec.period = to_double("period", *v);
    if (const auto* v = find(kv, "start_x")) spec.start_x = to_double("start_x", *v);
    if (const auto* v = find(kv, "start_y")) spec.start_y = to_double("start_y", *v);
    if (const auto* v = find(kv, "noise_sigma")) spec.noise_sigma = to_double("noise_sigma", *v);
    if (const auto* v = find(kv, "informative_channels"))
        spec.informative_channels = to_int("informative_channels", *v);
    if (const auto* v = find(kv, "noise_channels")) spec.noise_channels = to_int("noise_channels", *v);
    if (const auto* v = find(kv, "feature_grid")) spec.feature_grid = to_int("feature_grid", *v);
    if (const auto* v = find(kv, "feature_window_scale"))
        spec.feature_window_scale = to_double("feature_window_scale", *v);
    if (const auto* v = find(kv, "feature_noise")) spec.feature_noise = to_double("feature_noise", *v);
    if (const auto* v = find(kv, "noise_channel_sigma"))
        spec.noise_channel_sigma = to_double("noise_channel_sigma", *v);
    if (const auto* v = find(kv, "seed")) spec.seed = static_cast<std::uint64_t>(to_int("seed", *v));
    spec.validate();
    return spec;
}

} // namespace gfs
