#include "icfb/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "icfb/errors.hpp"

namespace icfb {

namespace {

template <class T>
T get(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("field '") + key + "' has the wrong type");
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    return get<T>(j, key);
}

json number_array(std::span<const double> v)
{
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

FeedbackStateSpec LdicConfig::states() const
{
    if (state_correlation == 0.0) return FeedbackStateSpec::independent(p1, p2);
    return FeedbackStateSpec::correlated(p1, p2, state_correlation);
}

ChannelConfig parse_channel_config(const std::string& text)
{
    const json j = parse_json(text);
    const auto kind = get<std::string>(j, "kind");
    if (kind == "ldic") {
        LdicConfig c;
        c.params.q = get<int>(j, "q");
        c.params.n11 = get<int>(j, "n11");
        c.params.n12 = get<int>(j, "n12");
        c.params.n21 = get<int>(j, "n21");
        c.params.n22 = get<int>(j, "n22");
        c.p1 = get_or<double>(j, "p1", 1.0);
        c.p2 = get_or<double>(j, "p2", 1.0);
        c.state_correlation = get_or<double>(j, "state_correlation", 0.0);
        c.params.validate();
        (void)c.states();
        return c;
    }
    if (kind == "table") {
        const json& al = j.contains("alphabets") ? j.at("alphabets") : json();
        IcGfChannel::Alphabets a;
        if (al.is_array()) {
            if (al.size() != 6) throw ParseError("'alphabets' must list 6 sizes (x1 x2 y1 y2 y3 y4)");
            std::size_t* f[] = {&a.x1, &a.x2, &a.y1, &a.y2, &a.y3, &a.y4};
            for (std::size_t i = 0; i < 6; ++i) {
                if (!al[i].is_number_unsigned()) throw ParseError("alphabet sizes must be unsigned integers");
                *f[i] = al[i].get<std::size_t>();
            }
        } else {
            a.x1 = get<std::size_t>(al, "x1");
            a.x2 = get<std::size_t>(al, "x2");
            a.y1 = get<std::size_t>(al, "y1");
            a.y2 = get<std::size_t>(al, "y2");
            a.y3 = get<std::size_t>(al, "y3");
            a.y4 = get<std::size_t>(al, "y4");
        }
        return TableConfig{IcGfChannel(a, get<std::vector<double>>(j, "weights"))};
    }
    throw ParseError("unknown channel kind '" + kind + "' (expected ldic or table)");
}

ChannelConfig load_channel_config(const std::string& path)
{
    return parse_channel_config(read_file(path));
}

json channel_config_json(const ChannelConfig& config)
{
    if (const auto* l = std::get_if<LdicConfig>(&config)) {
        return {{"kind", "ldic"},          {"q", l->params.q},     {"n11", l->params.n11},
                {"n12", l->params.n12},    {"n21", l->params.n21}, {"n22", l->params.n22},
                {"p1", round9(l->p1)},     {"p2", round9(l->p2)},
                {"state_correlation", round9(l->state_correlation)}};
    }
    const auto& t = std::get<TableConfig>(config).channel;
    const auto& a = t.alphabets();
    return {{"kind", "table"},
            {"alphabets", {{"x1", a.x1}, {"x2", a.x2}, {"y1", a.y1}, {"y2", a.y2}, {"y3", a.y3}, {"y4", a.y4}}},
            {"weights", number_array(t.weights())}};
}

std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double round9(double v)
{
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

json region_json(const RateRegion& region, const RegionMetadata& meta, const json& witnesses)
{
    json hp = json::array();
    for (const auto& h : region.halfplanes())
        hp.push_back({{"a", round9(h.a)}, {"b", round9(h.b)}, {"c", round9(h.c)}});
    json vs = json::array();
    for (const auto& v : region.vertices()) vs.push_back({round9(v.r1), round9(v.r2)});
    return {{"format", "icfb-region/1"},
            {"caps", {{"r1", round9(region.caps().r1)}, {"r2", round9(region.caps().r2)}}},
            {"halfplanes", hp},
            {"vertices", vs},
            {"empty", region.empty()},
            {"metadata",
             {{"kind", meta.kind},
              {"channel_hash", meta.channel_hash},
              {"distribution_hash", meta.distribution_hash},
              {"tolerance", meta.tolerance}}},
            {"witnesses", witnesses}};
}

RateRegion region_from_json(const json& j)
{
    if (get<std::string>(j, "format") != "icfb-region/1") throw ParseError("unsupported region format");
    const json& caps = field(j, "caps");
    RateCaps c{get<double>(caps, "r1"), get<double>(caps, "r2")};
    std::vector<HalfPlane> hps;
    const json& list = j.contains("halfplanes") ? j.at("halfplanes") : json();
    if (!list.is_array()) throw ParseError("'halfplanes' must be an array");
    for (const auto& h : list) hps.push_back({get<double>(h, "a"), get<double>(h, "b"), get<double>(h, "c")});
    return RateRegion(std::move(hps), c);
}

RateRegion load_region(const std::string& path)
{
    return region_from_json(parse_json(read_file(path)));
}

json distribution_json(const GfInputDistribution& d)
{
    const auto& c = d.cards();
    return {{"kind", "gf"},
            {"cards",
             {{"q", c.q}, {"u1", c.u1}, {"v1", c.v1}, {"u2", c.u2}, {"v2", c.v2},
              {"x1", c.x1}, {"x2", c.x2}, {"y1", c.y1}, {"y2", c.y2}}},
            {"p_q", number_array(d.p_q())},
            {"u1x1", number_array(d.u1x1().weights())},
            {"u2x2", number_array(d.u2x2().weights())},
            {"v1", number_array(d.v1().weights())},
            {"v2", number_array(d.v2().weights())}};
}

json distribution_json(const DetIfInputDistribution& d)
{
    return {{"kind", "det"},
            {"q_card", d.q_card()},
            {"x1_card", d.x1_card()},
            {"x2_card", d.x2_card()},
            {"p_q", number_array(d.p_q())},
            {"x1_given_q", number_array(d.x1().weights())},
            {"x2_given_q", number_array(d.x2().weights())}};
}

GfInputDistribution gf_distribution_from_json(const json& j)
{
    if (get<std::string>(j, "kind") != "gf") throw ParseError("expected a 'gf' distribution");
    const json& cj = field(j, "cards");
    GfInputDistribution::Cards c;
    c.q = get<std::size_t>(cj, "q");
    c.u1 = get<std::size_t>(cj, "u1");
    c.v1 = get<std::size_t>(cj, "v1");
    c.u2 = get<std::size_t>(cj, "u2");
    c.v2 = get<std::size_t>(cj, "v2");
    c.x1 = get<std::size_t>(cj, "x1");
    c.x2 = get<std::size_t>(cj, "x2");
    c.y1 = get<std::size_t>(cj, "y1");
    c.y2 = get<std::size_t>(cj, "y2");
    return GfInputDistribution(c, get<std::vector<double>>(j, "p_q"), get<std::vector<double>>(j, "u1x1"),
                               get<std::vector<double>>(j, "u2x2"), get<std::vector<double>>(j, "v1"),
                               get<std::vector<double>>(j, "v2"));
}

DetIfInputDistribution det_distribution_from_json(const json& j)
{
    if (get<std::string>(j, "kind") != "det") throw ParseError("expected a 'det' distribution");
    return DetIfInputDistribution(get<std::size_t>(j, "q_card"), get<std::size_t>(j, "x1_card"),
                                  get<std::size_t>(j, "x2_card"), get<std::vector<double>>(j, "p_q"),
                                  get<std::vector<double>>(j, "x1_given_q"),
                                  get<std::vector<double>>(j, "x2_given_q"));
}

std::vector<json> load_distribution_list(const std::string& path)
{
    const json j = parse_json(read_file(path));
    if (j.is_object() && j.contains("distributions")) {
        if (!j.at("distributions").is_array()) throw ParseError("'distributions' must be an array");
        return j.at("distributions").get<std::vector<json>>();
    }
    if (j.is_array()) return j.get<std::vector<json>>();
    return {j};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

} // namespace icfb
