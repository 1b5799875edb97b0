#include <doctest.h>

#include <random>

#include "icfb/errors.hpp"
#include "icfb/probability.hpp"
#include "oracles.hpp"

using namespace icfb;

namespace {

JointPmf bit_x(double p1)
{
    return JointPmf({{"X", 2}}, {1.0 - p1, p1});
}

Kernel bsc(double eps)
{
    return Kernel({{"X", 2}}, {{"Y", 2}}, {1 - eps, eps, eps, 1 - eps});
}

} // namespace

TEST_CASE("joint pmf validation")
{
    CHECK_THROWS_AS(JointPmf({{"X", 2}}, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf({{"X", 2}}, {1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf({{"X", 2}, {"X", 2}}, std::vector<double>(4, 0.25)), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf({{"X", 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf({{"X", 2}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf::uniform({{"A", 1024}, {"B", 1024}, {"C", 8}}), ResourceLimitError);
    CHECK_NOTHROW(JointPmf({{"X", 2}}, {0.5, 0.5 + 5e-13}));
}

TEST_CASE("extend with identity, constant and BSC kernels")
{
    const auto ux = JointPmf::uniform({{"X", 2}});
    const auto id = extend(ux, Kernel({{"X", 2}}, {{"Y", 2}}, {1, 0, 0, 1}));
    CHECK(id.at(std::vector<std::size_t>{0, 0}) == doctest::Approx(0.5));
    CHECK(id.at(std::vector<std::size_t>{0, 1}) == 0.0);
    CHECK(id.at(std::vector<std::size_t>{1, 1}) == doctest::Approx(0.5));

    const auto cst = extend(ux, Kernel({{"X", 2}}, {{"Y", 2}}, {1, 0, 1, 0}));
    CHECK(cst.at(std::vector<std::size_t>{1, 0}) == doctest::Approx(0.5));
    CHECK(cst.at(std::vector<std::size_t>{1, 1}) == 0.0);

    const auto j = extend(bit_x(0.75), bsc(0.1));
    const auto y = marginalize(j, {"Y"});
    // 0.25*0.1 + 0.75*0.9
    CHECK(y.weights()[1] == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(extend(ux, Kernel({{"Z", 2}}, {{"Y", 2}}, {1, 0, 0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(extend(id, Kernel({{"X", 2}}, {{"Y", 2}}, {1, 0, 0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(extend(ux, Kernel({{"X", 3}}, {{"Y", 2}}, {1, 0, 0, 1, 1, 0})), std::invalid_argument);
}

TEST_CASE("kernel rows must be stochastic")
{
    CHECK_THROWS_AS(Kernel({{"X", 2}}, {{"Y", 2}}, {0.5, 0.4, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Kernel({{"X", 2}}, {{"Y", 2}}, {1.2, -0.2, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Kernel({{"X", 2}}, {{"Y", 2}}, {1, 0}), std::invalid_argument);
}

TEST_CASE("marginalize")
{
    const auto xy = JointPmf::uniform({{"X", 2}, {"Y", 2}});
    const auto x = marginalize(xy, {"X"});
    CHECK(x.weights()[0] == doctest::Approx(0.5));
    const auto same = marginalize(xy, {"Y", "X"});
    CHECK(same.variables() == xy.variables());
    const auto corr = JointPmf({{"X", 2}, {"Y", 2}}, {0.5, 0, 0, 0.5});
    CHECK(marginalize(corr, {"Y"}).weights()[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(marginalize(xy, {"Z"}), std::invalid_argument);
    CHECK_THROWS_AS(marginalize(xy, {}), std::invalid_argument);
}

TEST_CASE("entropy examples")
{
    CHECK(entropy(JointPmf::uniform({{"X", 2}}), {"X"}) == doctest::Approx(1.0));
    const auto copy = JointPmf({{"X", 2}, {"Y", 2}}, {0.5, 0, 0, 0.5});
    CHECK(entropy(copy, {"Y"}, {"X"}) == doctest::Approx(0.0));
    CHECK(entropy(bit_x(0.75), {"X"}) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(entropy(bit_x(0.75), {"X"}) == doctest::Approx(oracle::entropy_bits({0.25, 0.75})));
    CHECK_THROWS_AS(entropy(copy, {}), std::invalid_argument);
    CHECK_THROWS_AS(entropy(copy, {"X"}, {"X"}), std::invalid_argument);
    CHECK_THROWS_AS(entropy(copy, {"W"}), std::invalid_argument);
}

TEST_CASE("mutual information examples")
{
    CHECK(mutual_information(JointPmf::uniform({{"X", 2}, {"Y", 2}}), {"X"}, {"Y"}) == doctest::Approx(0.0));
    const auto copy = JointPmf({{"X", 2}, {"Y", 2}}, {0.5, 0, 0, 0.5});
    CHECK(mutual_information(copy, {"X"}, {"Y"}) == doctest::Approx(1.0));
    const auto j = extend(JointPmf::uniform({{"X", 2}}), bsc(0.1));
    CHECK(mutual_information(j, {"X"}, {"Y"}) == doctest::Approx(0.531004).epsilon(1e-6));
    CHECK(mutual_information(j, {"X"}, {"Y"}) == doctest::Approx(1.0 - oracle::h2(0.1)).epsilon(1e-12));
}

TEST_CASE("entropies agree with a brute-force oracle on random joints")
{
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 50; ++rep) {
        const std::vector<std::size_t> cards{2, 3, 2, 3};
        auto w = oracle::random_pmf(36, gen, 0.2);
        JointPmf j({{"A", 2}, {"B", 3}, {"C", 2}, {"D", 3}}, w);
        const double hab = oracle::joint_entropy(w, cards, {0, 1});
        const double hb = oracle::joint_entropy(w, cards, {1});
        CHECK(entropy(j, {"A"}, {"B"}) == doctest::Approx(hab - hb).epsilon(1e-12));
        const double habd = oracle::joint_entropy(w, cards, {0, 1, 3});
        const double hbd = oracle::joint_entropy(w, cards, {1, 3});
        const double had = oracle::joint_entropy(w, cards, {0, 3});
        const double hd = oracle::joint_entropy(w, cards, {3});
        CHECK(mutual_information(j, {"A"}, {"B"}, {"D"}) ==
              doctest::Approx(had + hbd - habd - hd).epsilon(1e-10));
    }
}

TEST_CASE("extend then marginalize returns the base pmf")
{
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 20; ++rep) {
        JointPmf base({{"X", 3}, {"Z", 2}}, oracle::random_pmf(6, gen));
        std::vector<double> rows;
        for (int r = 0; r < 3; ++r) {
            auto p = oracle::random_pmf(4, gen);
            rows.insert(rows.end(), p.begin(), p.end());
        }
        const auto j = extend(base, Kernel({{"X", 3}}, {{"Y", 4}}, rows));
        const auto back = marginalize(j, {"X", "Z"});
        for (std::size_t i = 0; i < 6; ++i) CHECK(back.weights()[i] == doctest::Approx(base.weights()[i]).epsilon(1e-12));
    }
}

TEST_CASE("information calculator matches the free functions")
{
    std::mt19937_64 gen(3);
    JointPmf j({{"A", 2}, {"B", 2}, {"C", 3}}, oracle::random_pmf(12, gen));
    InformationCalculator calc(j);
    CHECK(calc.entropy({"A", "B"}, {"C"}) == doctest::Approx(entropy(j, {"A", "B"}, {"C"})));
    CHECK(calc.mutual_information({"A"}, {"C"}, {"B"}) ==
          doctest::Approx(mutual_information(j, {"A"}, {"C"}, {"B"})));
    // Label order does not matter.
    CHECK(calc.joint_entropy({"C", "A"}) == doctest::Approx(calc.joint_entropy({"A", "C"})));
}

TEST_CASE("pushforward of a deterministic map")
{
    const auto xy = JointPmf::uniform({{"X", 2}, {"Y", 2}});
    const auto s = pushforward(xy, {{"S", 2}}, [](std::span<const std::size_t> in, std::span<std::size_t> out) {
        out[0] = in[0] ^ in[1];
    });
    CHECK(s.weights()[0] == doctest::Approx(0.5));
    CHECK(entropy(s, {"S"}) == doctest::Approx(1.0));
}
