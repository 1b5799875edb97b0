#pragma once

// JSON formats: channel configs, region files and input distributions.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "icfb/bounds.hpp"
#include "icfb/channels.hpp"
#include "icfb/regions.hpp"

namespace icfb {

using nlohmann::json;

struct LdicConfig {
    LdicParams params;
    double p1 = 1.0;
    double p2 = 1.0;
    double state_correlation = 0.0;

    FeedbackStateSpec states() const;
};

struct TableConfig {
    IcGfChannel channel;
};

using ChannelConfig = std::variant<LdicConfig, TableConfig>;

// Throws ParseError on malformed text or missing/mistyped fields and
// std::invalid_argument on out-of-range values.
ChannelConfig parse_channel_config(const std::string& text);
ChannelConfig load_channel_config(const std::string& path);
json channel_config_json(const ChannelConfig& config);

std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

// Round to 9 significant digits.
double round9(double v);

struct RegionMetadata {
    std::string kind;  // "capacity", "inner", ...
    std::string channel_hash;
    std::string distribution_hash;
    double tolerance = kRegionTolerance;
};

json region_json(const RateRegion& region, const RegionMetadata& meta,
                 const json& witnesses = json::array());
RateRegion region_from_json(const json& j);
RateRegion load_region(const std::string& path);

json distribution_json(const GfInputDistribution& d);
json distribution_json(const DetIfInputDistribution& d);
GfInputDistribution gf_distribution_from_json(const json& j);
DetIfInputDistribution det_distribution_from_json(const json& j);

// A file holding either one distribution object or {"distributions": [...]}.
std::vector<json> load_distribution_list(const std::string& path);

std::string read_file(const std::string& path);
// Writes to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

} // namespace icfb
