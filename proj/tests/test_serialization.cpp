#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "icfb/capacity.hpp"
#include "icfb/errors.hpp"
#include "icfb/serialization.hpp"

using namespace icfb;

TEST_CASE("ldic config parsing")
{
    const auto c = parse_channel_config(R"({"kind":"ldic","q":2,"n11":2,"n12":1,"n21":1,"n22":2,"p1":0.5,"p2":0.25})");
    REQUIRE(std::holds_alternative<LdicConfig>(c));
    const auto& l = std::get<LdicConfig>(c);
    CHECK(l.params.q == 2);
    CHECK(l.params.n12 == 1);
    CHECK(l.p2 == 0.25);
    CHECK(l.states().p1() == doctest::Approx(0.5));
    CHECK(l.states().cell(LinkState::on, LinkState::on) == doctest::Approx(0.125));

    const auto again = parse_channel_config(channel_config_json(c).dump());
    CHECK(channel_config_json(again) == channel_config_json(c));
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_channel_config("{not json"), ParseError);
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"ldic","q":2})"), ParseError);
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"ldic","q":"2","n11":1,"n12":1,"n21":1,"n22":1})"), ParseError);
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"radio"})"), ParseError);
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"ldic","q":2,"n11":3,"n12":1,"n21":1,"n22":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"ldic","q":1,"n11":1,"n12":1,"n21":1,"n22":1,"p1":2})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_channel_config("/nonexistent/config.json"), ParseError);
}

TEST_CASE("table config round trip")
{
    std::mt19937_64 gen(2);
    const auto ch = fixtures::random_binary_channel(gen);
    const ChannelConfig c = TableConfig{ch};
    const auto parsed = parse_channel_config(channel_config_json(c).dump());
    REQUIRE(std::holds_alternative<TableConfig>(parsed));
    const auto& back = std::get<TableConfig>(parsed).channel;
    CHECK(back.alphabets() == ch.alphabets());
    for (std::size_t i = 0; i < ch.weights().size(); ++i)
        CHECK(back.weights()[i] == doctest::Approx(ch.weights()[i]).epsilon(1e-12));
    CHECK_THROWS_AS(parse_channel_config(R"({"kind":"table","alphabets":[1,1,1,1,1,1],"weights":[0.5]})"),
                    std::invalid_argument);
}

TEST_CASE("region round trip")
{
    const auto r = capacity_region({2, 2, 1, 1, 2}, 0.5, 0.5);
    RegionMetadata meta{"capacity", "abc", "", kRegionTolerance};
    const auto j = region_json(r, meta);
    CHECK(j.at("format") == "icfb-region/1");
    CHECK(j.at("metadata").at("kind") == "capacity");
    const auto back = region_from_json(json::parse(j.dump()));
    CHECK(hausdorff_distance(r, back) < 1e-8);
    CHECK(region_json(back, meta).dump() == j.dump());
    CHECK_THROWS_AS(region_from_json(json::parse(R"({"format":"other"})")), ParseError);
}

TEST_CASE("distribution round trips")
{
    std::mt19937_64 gen(12);
    const auto d = fixtures::random_binary_distribution(gen, 2);
    const auto g = gf_distribution_from_json(json::parse(distribution_json(d).dump()));
    CHECK(distribution_json(g) == distribution_json(d));

    const auto det = fixtures::random_product(2, 4, gen);
    const auto e = det_distribution_from_json(json::parse(distribution_json(det).dump()));
    CHECK(distribution_json(e) == distribution_json(det));
    CHECK_THROWS_AS(det_distribution_from_json(distribution_json(d)), ParseError);
}

TEST_CASE("distribution lists and output files")
{
    const std::string path = "test_serialization_list.json";
    const auto d = DetIfInputDistribution::uniform(2, 2);
    {
        std::ofstream f(path);
        f << json{{"distributions", {distribution_json(d), distribution_json(d)}}}.dump();
    }
    CHECK(load_distribution_list(path).size() == 2);
    write_output(path, distribution_json(d).dump());
    CHECK(load_distribution_list(path).size() == 1);
    CHECK(read_file(path) == distribution_json(d).dump());
    std::remove(path.c_str());
}

TEST_CASE("hashing and rounding")
{
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hash_hex(0xabcULL) == "0000000000000abc");
    CHECK(round9(1.0 / 3.0) == 0.333333333);
    CHECK(round9(2.0) == 2.0);
}
