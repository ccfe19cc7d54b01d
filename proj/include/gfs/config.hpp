#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfs/synthetic.hpp"
#include "gfs/tracker.hpp"

namespace gfs {

// Flat `key = value` file with `#` comments. Later assignments win.
using ConfigKV = std::map<std::string, std::string>;

ConfigKV parse_config_file(const std::string& path);
ConfigKV parse_config_text(const std::string& text, const std::string& origin);

struct ConfigKeyDoc {
    std::string key;
    std::string default_value;
    std::string help;
};

// Documented keys, defaults included. Unknown keys are rejected when applied.
const std::vector<ConfigKeyDoc>& tracker_config_keys();
const std::vector<ConfigKeyDoc>& synthetic_config_keys();
std::string config_keys_help();

// Builds configs from key-value maps; every key must be documented and every
// missing key takes its documented default.
TrackerConfig tracker_config_from(const ConfigKV& kv);
SyntheticSpec synthetic_spec_from(const ConfigKV& kv);

} // namespace gfs
