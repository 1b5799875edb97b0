// Acceptance criteria 1-10. One PASS/FAIL line per criterion.
// Exit status is 0 in report mode; with --strict any FAIL gives 1.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <unistd.h>

#include "fixtures.hpp"
#include "icfb/bounds.hpp"
#include "icfb/capacity.hpp"
#include "icfb/probability.hpp"
#include "icfb/simulator.hpp"
#include "oracles.hpp"

using namespace icfb;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool has_vertex(const RateRegion& r, double a, double b, double tol)
{
    for (const auto& v : r.vertices())
        if (std::abs(v.r1 - a) <= tol && std::abs(v.r2 - b) <= tol) return true;
    return false;
}

Outcome criterion1()
{
    const double tol = 1e-9;
    // Term-by-term evaluation of the capacity inequalities.
    const auto rhs0 = oracle::capacity_rhs(2, 2, 1, 1, 0, 0);
    const auto rhs1 = oracle::capacity_rhs(2, 2, 1, 1, 1, 1);
    const auto r0 = capacity_region({2, 2, 1, 1, 2}, 0.0, 0.0);
    const auto r1 = capacity_region({2, 2, 1, 1, 2}, 1.0, 1.0);
    const double s0 = max_weighted(r0, 1, 1).value, s1 = max_weighted(r1, 1, 1).value;
    bool ok = std::abs(s0 - 2.0) <= tol && std::abs(s1 - 3.0) <= tol;
    ok &= std::abs(std::min(rhs0.sum, std::min(rhs0.r1 + rhs0.r2, 1e300)) - 2.0) <= tol;
    ok &= std::abs(std::min(rhs1.sum, rhs1.r1 + rhs1.r2) - 3.0) <= tol;
    ok &= r0.vertices().size() == 3 && has_vertex(r0, 0, 0, tol) && has_vertex(r0, 2, 0, tol) &&
          has_vertex(r0, 0, 2, tol);
    ok &= has_vertex(r1, 2, 1, tol);
    for (const auto& v : r1.vertices()) ok &= oracle::capacity_member(rhs1, v.r1, v.r2, tol);
    return {ok, "sum-rate(p=0) " + fmt("%.12g", s0) + ", sum-rate(p=1) " + fmt("%.12g", s1)};
}

Outcome criterion2()
{
    std::mt19937_64 gen(20240101);
    double worst = 0.0;
    const int instances = 24;
    for (int i = 0; i < instances; ++i) {
        const auto ch = fixtures::random_binary_channel(gen);
        const auto d = fixtures::random_binary_distribution(gen, 1 + i % 2);
        const auto a = inner_region_gf(d, ch);
        const auto b = schemeV_region(d, ch);
        worst = std::max(worst, hausdorff_distance(a, b));
    }
    return {worst <= 1e-7, std::to_string(instances) + " instances, max deviation " + fmt("%.3g", worst)};
}

Outcome criterion3()
{
    std::mt19937_64 gen(303);
    std::uniform_int_distribution<int> qd(1, 3);
    std::uniform_real_distribution<double> pd(0.0, 1.0);
    const int triples = 60;
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < triples; ++i) {
        const int q = qd(gen);
        std::uniform_int_distribution<int> nd(0, q);
        const LdicParams p{q, nd(gen), nd(gen), nd(gen), nd(gen)};
        const double p1 = pd(gen), p2 = pd(gen);
        const auto det = ldic_build(p);
        const auto d = fixtures::random_product(det.x1_card, det.x2_card, gen);
        const auto fb = FeedbackStateSpec::independent(p1, p2);
        const auto inner = inner_region_det_if(det, d, fb);
        const auto cap = capacity_region(p, p1, p2);
        if (!is_subset(inner, cap, 1e-9)) {
            ++bad;
            worst = std::max(worst, max_vertex_violation(inner, cap));
        }
    }
    return {bad == 0, std::to_string(triples - bad) + "/" + std::to_string(triples) +
                          " triples contained, max violation " + fmt("%.6g", worst)};
}

Outcome criterion4()
{
    const LdicParams p{1, 1, 1, 1, 1};
    const auto inner = inner_region_det_if(ldic_build(p), DetIfInputDistribution::uniform(2, 2),
                                           FeedbackStateSpec::independent(1.0, 1.0));
    const RateRegion target({{1.0, 1.0, 1.0}}, inner.caps());
    const double h1 = hausdorff_distance(inner, target);
    const double h2 = hausdorff_distance(inner, capacity_region(p, 1.0, 1.0));
    return {h1 <= 1e-9 && h2 <= 1e-9,
            "distance to {R1+R2<=1} " + fmt("%.3g", h1) + ", to capacity " + fmt("%.3g", h2)};
}

Outcome criterion5()
{
    std::mt19937_64 gen(55);
    const RateCaps caps{2.0, 2.0};
    std::size_t agree = 0, total = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t aux = 0;
        const auto s = fixtures::random_system(gen, aux);
        const auto region = project_to_rate_plane(s, caps);
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double r1 = 0.1 * i, r2 = 0.1 * j;
                agree += region.contains({r1, r2}, 1e-7) == fixtures::system_feasible_at(s, r1, r2, 1e-7);
                ++total;
            }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " grid points agree"};
}

Outcome criterion6()
{
    std::mt19937_64 gen(66);
    std::uniform_int_distribution<std::size_t> card(1, 4);
    double worst = 0.0;
    bool ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t a = card(gen), b = card(gen), c = card(gen);
        const auto w = oracle::random_pmf(a * b * c, gen, 0.2);
        const JointPmf j({{"A", a}, {"B", b}, {"C", c}}, w);
        const double hab = entropy(j, {"A", "B"});
        const double chain = entropy(j, {"A"}) + entropy(j, {"B"}, {"A"});
        worst = std::max(worst, std::abs(hab - chain));
        const double chain_mi = mutual_information(j, {"A"}, {"B", "C"}) -
                                mutual_information(j, {"A"}, {"C"}) -
                                mutual_information(j, {"A"}, {"B"}, {"C"});
        worst = std::max(worst, std::abs(chain_mi));
        worst = std::max(worst, std::abs(hab - oracle::joint_entropy(w, {a, b, c}, {0, 1})));
        for (double v : {entropy(j, {"A"}), entropy(j, {"A"}, {"B", "C"}), mutual_information(j, {"A"}, {"B"}),
                         mutual_information(j, {"A"}, {"B"}, {"C"})})
            ok &= v >= -1e-9;
        ok &= entropy(j, {"A"}) <= std::log2(static_cast<double>(a)) + 1e-9;
        ok &= entropy(j, {"A", "B", "C"}) <= std::log2(static_cast<double>(a * b * c)) + 1e-9;
        ok &= mutual_information(j, {"A"}, {"B"}, {"C"}) <= std::log2(static_cast<double>(std::min(a, b))) + 1e-9;
    }
    return {ok && worst <= 1e-9, "1000 joints, max identity error " + fmt("%.3g", worst)};
}

BitVector bits_of(unsigned v, int q)
{
    BitVector b(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) b[static_cast<std::size_t>(i)] = (v >> (q - 1 - i)) & 1u;
    return b;
}

Outcome criterion7()
{
    const LinkState st[] = {LinkState::erased, LinkState::on};
    std::size_t cases = 0, wrong = 0;
    for (int q = 1; q <= 3; ++q)
        for (int n11 = 0; n11 <= q; ++n11)
            for (int n12 = 0; n12 <= q; ++n12)
                for (int n21 = 0; n21 <= q; ++n21)
                    for (int n22 = 0; n22 <= q; ++n22) {
                        const LdicParams p{q, n11, n12, n21, n22};
                        for (unsigned a = 0; a < (1u << q); ++a)
                            for (unsigned b = 0; b < (1u << q); ++b)
                                for (auto s1 : st)
                                    for (auto s2 : st) {
                                        const auto x1 = bits_of(a, q), x2 = bits_of(b, q);
                                        const auto t = transmit(p, x1, x2, {s1, s2});
                                        const auto r1 = reconstruct_tilde(p, x1, t.fb1, 1);
                                        const auto r2 = reconstruct_tilde(p, x2, t.fb2, 2);
                                        bool ok = r1.has_value() == (s1 == LinkState::on) &&
                                                  r2.has_value() == (s2 == LinkState::on);
                                        if (ok && r1) ok = *r1 == oracle::shift_matrix_apply(q, n12, x2);
                                        if (ok && r2) ok = *r2 == oracle::shift_matrix_apply(q, n21, x1);
                                        wrong += !ok;
                                        ++cases;
                                    }
                    }
    return {wrong == 0, std::to_string(cases - wrong) + "/" + std::to_string(cases) + " cases recovered"};
}

Outcome criterion8()
{
    // BSC(0.1) test channel from Y to V: I(V;Y|U) = 1 - h2(0.1).
    const double info = 1.0 - (-(0.1 * std::log2(0.1) + 0.9 * std::log2(0.9)));
    const auto src = CoveringSource::binary_symmetric(0.1);
    CoveringOptions o;
    o.n = 500;
    o.trials = 200;
    o.epsilon = 0.1;
    o.seed = 2024;
    o.rate = info + 0.22;
    const double hi = covering_success_rate(src, o);
    o.rate = info - 0.18;
    const double lo = covering_success_rate(src, o);
    const bool ok = std::abs(src.conditional_information() - info) < 5e-7 && hi >= 0.95 && lo <= 0.5;
    return {ok, "I = " + fmt("%.6f", info) + ", success " + fmt("%.3f", hi) + " at I+0.22, " +
                    fmt("%.3f", lo) + " at I-0.18"};
}

Outcome criterion9()
{
    const std::vector<LdicParams> profiles{
        {2, 2, 1, 1, 2}, {1, 1, 1, 1, 1}, {3, 3, 1, 2, 2}, {3, 2, 3, 3, 1}, {2, 1, 2, 0, 2}};
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    int cap_bad = 0, inner_bad = 0, pairs = 0;
    for (const auto& p : profiles) {
        const auto det = ldic_build(p);
        const auto u = DetIfInputDistribution::uniform(det.x1_card, det.x2_card);
        std::vector<RateRegion> caps, inners;
        for (double a : grid)
            for (double b : grid) {
                caps.push_back(capacity_region(p, a, b));
                inners.push_back(inner_region_det_if(det, u, FeedbackStateSpec::independent(a, b)));
            }
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const int k = i * 5 + j;
                for (int next : {i + 1 < 5 ? k + 5 : -1, j + 1 < 5 ? k + 1 : -1}) {
                    if (next < 0) continue;
                    ++pairs;
                    cap_bad += !is_subset(caps[k], caps[next], 1e-9);
                    inner_bad += !is_subset(inners[k], inners[next], 1e-9);
                }
            }
    }
    return {cap_bad == 0 && inner_bad == 0,
            "capacity non-monotone steps " + std::to_string(cap_bad) + "/" + std::to_string(pairs) +
                ", inner non-monotone steps " + std::to_string(inner_bad) + "/" + std::to_string(pairs)};
}

std::string run_cli(const std::string& args)
{
    const std::string cmd = std::string(ICFB_CLI_PATH) + " " + args + " 2>&1";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return "<popen failed>";
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    const int status = pclose(p);
    out += "\nexit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return out;
}

Outcome criterion10()
{
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / ("icfb_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto cfg = (dir / "c.json").string();
    std::ofstream(cfg) << R"({"kind":"ldic","q":2,"n11":2,"n12":1,"n21":1,"n22":2,"p1":0.6,"p2":0.3})";
    const std::vector<std::string> commands{
        "inner " + cfg + " --search random --samples 40 --seed 9",
        "inner " + cfg + " --theorem 1 --q-card 1 --resolution 2 --seed 9",
        "simulate " + cfg + " --mode states --n 2000 --seed 9",
        "simulate " + cfg + " --mode covering --n 200 --rate 0.6 --trials 50 --seed 9",
        "simulate " + cfg + " --mode scheme --n 4 --trials 10 --seed 9 --rates 0.25 0.25 0.25 0.25 0.25 0.25",
    };
    int identical = 0;
    for (const auto& c : commands) {
        const auto a = run_cli(c + " --workers 1");
        const auto b = run_cli(c + " --workers 1");
        const auto d = run_cli(c + " --workers 4");
        identical += a == b && a == d && a.size() > 0 && a.find("\nexit 0") != std::string::npos;
    }
    fs::remove_all(dir);
    return {identical == static_cast<int>(commands.size()),
            std::to_string(identical) + "/" + std::to_string(commands.size()) +
                " commands byte-identical across runs and workers {1,4}"};
}

} // namespace

int main(int argc, char** argv)
{
    const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0 = no runtime limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "capacity spot values", 1, criterion1},
        {2, "theorem 1 vs block-Markov projection", 30, criterion2},
        {3, "inner bound inside capacity", 120, criterion3},
        {4, "exact-match instance", 0, criterion4},
        {5, "projection vs feasibility oracle", 60, criterion5},
        {6, "information identities", 0, criterion6},
        {7, "injective reconstruction", 60, criterion7},
        {8, "covering threshold", 120, criterion8},
        {9, "monotonicity in feedback probabilities", 0, criterion9},
        {10, "determinism", 0, criterion10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        if (c.limit_s > 0 && secs > c.limit_s) {
            pass = false;
            o.detail += ", over the runtime limit";
        }
        failed += !pass;
        std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return strict && failed > 0 ? 1 : 0;
}
