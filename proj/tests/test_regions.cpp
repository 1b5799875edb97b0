#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "icfb/capacity.hpp"
#include "icfb/regions.hpp"

using namespace icfb;

namespace {

bool same_vertices(const std::vector<RatePoint>& got, const std::vector<RatePoint>& want, double tol = 1e-9)
{
    if (got.size() != want.size()) return false;
    for (const auto& w : want) {
        bool hit = false;
        for (const auto& g : got)
            if (std::abs(g.r1 - w.r1) <= tol && std::abs(g.r2 - w.r2) <= tol) hit = true;
        if (!hit) return false;
    }
    return true;
}

} // namespace

TEST_CASE("fm_eliminate examples")
{
    LinearRateSystem a({"R1", "R10"});
    a.add_le({{"R1", 1}}, 1.0);
    auto pa = fm_eliminate(a, "R10");
    REQUIRE(pa.rows().size() == 1);
    CHECK(pa.rows()[0].bound == doctest::Approx(1.0));

    LinearRateSystem b({"R1", "R10"});
    b.add_ge({{"R10", 1}}, 0.0);
    b.add_le({{"R1", 1}, {"R10", -1}}, 2.0);
    b.add_le({{"R10", 1}}, 3.0);
    auto pb = fm_eliminate(b, "R10");
    REQUIRE(pb.rows().size() == 1);
    CHECK(pb.variables() == std::vector<std::string>{"R1"});
    CHECK(pb.rows()[0].coeffs[0] == Rational(1));
    CHECK(pb.rows()[0].bound == doctest::Approx(5.0));

    LinearRateSystem c({"R10"});
    c.add_le({{"R10", 1}}, -1.0);
    c.add_ge({{"R10", 1}}, 0.0);
    auto pc = fm_eliminate(c, "R10");
    bool infeasible_row = false;
    for (const auto& r : pc.rows()) infeasible_row |= r.bound < 0.0;
    CHECK(infeasible_row);
    CHECK_FALSE(pc.is_satisfied(std::vector<double>{}));
}

TEST_CASE("project_to_rate_plane examples")
{
    LinearRateSystem rect({"R1", "R2"});
    rect.add_le({{"R1", 1}}, 2.0);
    rect.add_le({{"R2", 1}}, 2.0);
    auto r = project_to_rate_plane(rect, {5, 5});
    CHECK(same_vertices(r.vertices(), {{0, 0}, {2, 0}, {2, 2}, {0, 2}}));

    auto full = project_to_rate_plane(LinearRateSystem({"R1", "R2"}), {1, 3});
    CHECK(same_vertices(full.vertices(), {{0, 0}, {1, 0}, {1, 3}, {0, 3}}));

    LinearRateSystem empty({"R1", "R2", "A"});
    empty.add_le({{"A", 1}}, -1.0);
    empty.add_ge({{"A", 1}}, 0.0);
    CHECK(project_to_rate_plane(empty, {1, 1}).empty());
}

TEST_CASE("vertex enumeration")
{
    RateRegion tri({{1, 1, 2}, {1, 0, 2}, {0, 1, 2}}, {10, 10});
    CHECK(same_vertices(tri.vertices(), {{0, 0}, {2, 0}, {0, 2}}));
    // Counter-clockwise from the origin.
    CHECK(tri.vertices()[0].r1 == 0.0);
    CHECK(tri.vertices()[1].r1 == doctest::Approx(2.0));

    RateRegion point({{1, 0, 0}, {0, 1, 0}}, {1, 1});
    CHECK(same_vertices(point.vertices(), {{0, 0}}));

    const auto cap = capacity_region({2, 2, 1, 1, 2}, 1.0, 1.0);
    CHECK(same_vertices(vertices(cap), {{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}));
}

TEST_CASE("is_subset and max_weighted")
{
    RateRegion one({{1, 1, 1}}, {2, 2});
    RateRegion two({{1, 1, 2}}, {2, 2});
    CHECK(is_subset(one, one));
    CHECK(is_subset(one, two));
    CHECK_FALSE(is_subset(two, one));

    const auto c0 = capacity_region({2, 2, 1, 1, 2}, 0.0, 0.0);
    auto m0 = max_weighted(c0, 1, 1);
    CHECK(m0.value == doctest::Approx(2.0));
    CHECK(m0.point.r1 == doctest::Approx(2.0));
    CHECK(m0.point.r2 == doctest::Approx(0.0));
    auto m1 = max_weighted(capacity_region({2, 2, 1, 1, 2}, 1.0, 1.0), 1, 1);
    CHECK(m1.value == doctest::Approx(3.0));
    CHECK(m1.point.r1 == doctest::Approx(2.0));
    CHECK(m1.point.r2 == doctest::Approx(1.0));
    RateRegion rect({{1, 0, 2}}, {5, 5});
    CHECK(max_weighted(rect, 1, 0).value == doctest::Approx(2.0));
}

TEST_CASE("rebuilding a region from its vertices keeps the vertex set")
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<HalfPlane> hp;
        for (int i = 0; i < 4; ++i) hp.push_back({u(gen), u(gen), u(gen) * 2});
        RateRegion r(hp, {2.5, 2.5});
        auto again = RateRegion::from_points(r.vertices(), r.caps(), false);
        CHECK(same_vertices(again.vertices(), r.vertices()));
        CHECK(hausdorff_distance(r, again) < 1e-9);
    }
}

TEST_CASE("is_subset is reflexive and transitive")
{
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        RateRegion a({{u(gen), u(gen), u(gen)}}, {2, 2});
        RateRegion b({{u(gen), u(gen), u(gen)}}, {2, 2});
        RateRegion c({{u(gen), u(gen), u(gen)}}, {2, 2});
        CHECK(is_subset(a, a));
        if (is_subset(a, b) && is_subset(b, c)) CHECK(is_subset(a, c));
    }
}

TEST_CASE("projection agrees with a direct feasibility oracle")
{
    std::mt19937_64 gen(1234);
    const RateCaps caps{2.0, 2.0};
    for (int rep = 0; rep < 30; ++rep) {
        std::size_t aux = 0;
        const auto s = fixtures::random_system(gen, aux);
        const auto region = project_to_rate_plane(s, caps);
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double r1 = 0.1 * i, r2 = 0.1 * j;
                const bool direct = fixtures::system_feasible_at(s, r1, r2, 1e-7);
                CHECK_MESSAGE(region.contains({r1, r2}, 1e-7) == direct, "system ", rep, " at ", r1, ",", r2);
            }
    }
}
