// icfb: capacity regions, inner bounds, region comparison and simulation for
// two-user interference channels with (intermittent) feedback.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icfb/bounds.hpp"
#include "icfb/capacity.hpp"
#include "icfb/errors.hpp"
#include "icfb/search.hpp"
#include "icfb/serialization.hpp"
#include "icfb/simulator.hpp"

using namespace icfb;

namespace {

enum Exit { kOk = 0, kNegative = 1, kParse = 2, kSemantic = 3, kResource = 4 };

std::string g9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", round9(v) == 0.0 ? 0.0 : v);
    return buf;
}

std::string polyline_csv(const RateRegion& r)
{
    std::string out = "r1,r2\n";
    for (const auto& v : r.vertices()) out += g9(v.r1) + "," + g9(v.r2) + "\n";
    if (!r.vertices().empty()) out += g9(r.vertices().front().r1) + "," + g9(r.vertices().front().r2) + "\n";
    return out;
}

void emit_region(const RateRegion& r, const RegionMetadata& meta, const json& witnesses,
                 const std::string& out, const std::string& plot)
{
    write_output(out, region_json(r, meta, witnesses).dump(2) + "\n");
    if (!plot.empty()) write_output(plot, polyline_csv(r));
}

std::string channel_hash(const ChannelConfig& c)
{
    return hash_hex(fnv1a(channel_config_json(c).dump()));
}

const LdicConfig& need_ldic(const ChannelConfig& c, const char* what)
{
    const auto* l = std::get_if<LdicConfig>(&c);
    if (!l) throw std::invalid_argument(std::string(what) + " needs an ldic channel config");
    return *l;
}

// --- capacity ---------------------------------------------------------------

struct CapacityArgs {
    std::string config, out, plot;
    std::optional<double> p1, p2;
    std::vector<double> sweep;
};

int cmd_capacity(const CapacityArgs& a)
{
    const ChannelConfig cfg = load_channel_config(a.config);
    const LdicConfig& l = need_ldic(cfg, "capacity");
    RegionMetadata meta{"capacity", channel_hash(cfg), "", kRegionTolerance};
    if (a.sweep.size() > 1) {
        const auto rows = capacity_sweep(l.params, a.sweep, a.sweep);
        std::string out = "p1,p2,sum_rate,vertices\n";
        for (const auto& r : rows) {
            out += g9(r.p1) + "," + g9(r.p2) + "," + g9(r.sum_rate) + ",";
            for (std::size_t i = 0; i < r.vertices.size(); ++i)
                out += (i ? ";" : "") + g9(r.vertices[i].r1) + " " + g9(r.vertices[i].r2);
            out += "\n";
        }
        write_output(a.out, out);
        return kOk;
    }
    double p1 = a.p1.value_or(l.p1), p2 = a.p2.value_or(l.p2);
    if (a.sweep.size() == 1) p1 = p2 = a.sweep.front();
    meta.distribution_hash = hash_hex(fnv1a(g9(p1) + "," + g9(p2)));
    emit_region(capacity_region(l.params, p1, p2), meta, json::array(), a.out, a.plot);
    return kOk;
}

// --- inner --------------------------------------------------------------------

struct InnerArgs {
    std::string config, out, plot, theorem = "2", search = "grid", dist_file;
    int resolution = 4;
    std::size_t samples = 0, q_card = 1, u_card = 1, v_card = 1, family_cap = 250000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    bool no_side = false;
    double cap_margin = 0.0;
};

template <class D>
json witnesses_json(const SearchResult<D>& r)
{
    json w = json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"vertex", {round9(x.vertex.r1), round9(x.vertex.r2)}},
                     {"family_index", x.family_index},
                     {"distribution", distribution_json(x.distribution)}});
    return w;
}

int cmd_inner(const InnerArgs& a)
{
    const ChannelConfig cfg = load_channel_config(a.config);
    SearchConfig sc;
    sc.seed = a.seed;
    sc.q_card = a.q_card;
    sc.u_card = a.u_card;
    sc.v_card = a.v_card;
    sc.family_cap = a.family_cap;
    sc.workers = a.workers;
    sc.region.side_constraints = !a.no_side;
    sc.region.cap_margin = a.cap_margin;
    if (a.search == "grid") {
        sc.grid_resolution = a.resolution;
        sc.samples = a.samples;
    } else if (a.search == "random") {
        sc.grid_resolution = 0;
        sc.samples = a.samples;
    } else if (a.search == "uniform") {
        sc.uniform_only = true;
    } else if (a.search != "file") {
        throw std::invalid_argument("unknown search mode '" + a.search + "'");
    }
    if (a.search == "file" && a.dist_file.empty())
        throw std::invalid_argument("--search file needs --dist-file");

    json settings = {{"theorem", a.theorem}, {"search", a.search}, {"resolution", sc.grid_resolution},
                     {"samples", sc.samples}, {"seed", sc.seed}, {"q", sc.q_card}, {"u", sc.u_card},
                     {"v", sc.v_card}, {"side_constraints", sc.region.side_constraints},
                     {"cap_margin", sc.region.cap_margin}};
    std::vector<json> file_family;
    if (a.search == "file") {
        file_family = load_distribution_list(a.dist_file);
        settings["family"] = file_family;
    }
    RegionMetadata meta{"inner-theorem" + a.theorem, channel_hash(cfg),
                        hash_hex(fnv1a(settings.dump())), kRegionTolerance};

    if (a.theorem == "2") {
        const LdicConfig& l = need_ldic(cfg, "theorem 2");
        const InjectiveDetIc ch = ldic_build(l.params);
        std::vector<DetIfInputDistribution> family;
        if (a.search == "file")
            for (const auto& j : file_family) family.push_back(det_distribution_from_json(j));
        else
            family = det_family(ch, sc);
        const auto r = union_det(ch, l.states(), family, sc);
        emit_region(r.region, meta, witnesses_json(r), a.out, a.plot);
        return kOk;
    }
    GfBound bound;
    if (a.theorem == "1")
        bound = GfBound::theorem1;
    else if (a.theorem == "schemeV")
        bound = GfBound::schemeV;
    else
        throw std::invalid_argument("unknown theorem '" + a.theorem + "' (expected 1, 2 or schemeV)");
    // An ldic config is evaluated through its generalized-feedback form.
    const IcGfChannel ch = std::holds_alternative<TableConfig>(cfg)
                               ? std::get<TableConfig>(cfg).channel
                               : det_to_icgf(ldic_build(std::get<LdicConfig>(cfg).params),
                                             std::get<LdicConfig>(cfg).states());
    std::vector<GfInputDistribution> family;
    if (a.search == "file")
        for (const auto& j : file_family) family.push_back(gf_distribution_from_json(j));
    else
        family = gf_family(ch, sc);
    const auto r = union_gf(ch, family, bound, sc);
    emit_region(r.region, meta, witnesses_json(r), a.out, a.plot);
    return kOk;
}

// --- compare ------------------------------------------------------------------

int cmd_compare(const std::string& file_a, const std::string& file_b, double tol)
{
    const RateRegion a = load_region(file_a);
    const RateRegion b = load_region(file_b);
    const bool ab = is_subset(a, b, tol);
    const bool ba = is_subset(b, a, tol);
    std::ostringstream out;
    out << "A subset of B: " << (ab ? "yes" : "no") << "\n";
    out << "B subset of A: " << (ba ? "yes" : "no") << "\n";
    out << "max vertex violation A->B: " << g9(max_vertex_violation(a, b)) << "\n";
    out << "max vertex violation B->A: " << g9(max_vertex_violation(b, a)) << "\n";
    out << "hausdorff distance: " << g9(hausdorff_distance(a, b)) << "\n";
    for (auto [w1, w2] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 2.0}}) {
        const double va = max_weighted(a, w1, w2).value, vb = max_weighted(b, w1, w2).value;
        out << "weights (" << g9(w1) << "," << g9(w2) << "): A " << g9(va) << " B " << g9(vb)
            << " gap B-A " << g9(vb - va) << "\n";
    }
    std::cout << out.str();
    return ab ? kOk : kNegative;
}

// --- simulate -----------------------------------------------------------------

struct SimulateArgs {
    std::string config, out, mode = "states", source;
    std::size_t n = 1000, B = 2, trials = 100;
    std::uint64_t seed = 0, search_cap = std::uint64_t{1} << 26, codebook_cap = std::uint64_t{1} << 20;
    std::vector<double> rates;
    double rate = 0.0, epsilon = -1.0, crossover = 0.1;
    std::string method = "exact";
    unsigned workers = 0;
};

std::string stderr_line(const char* name, double rate, std::size_t trials)
{
    const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    return std::string(name) + " " + g9(rate) + " +- " + g9(se);
}

void emit_log(const SimulateArgs& a, const std::string& log, const std::string& summary)
{
    if (a.out.empty() || a.out == "-") {
        write_output("", log + "# " + summary + "\n");
        return;
    }
    write_output(a.out, log);
    std::cout << summary << "\n";
}

CoveringSource load_covering_source(const std::string& path)
{
    const json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("invalid covering source file");
    try {
        CoveringSource s;
        s.u_card = j.at("u_card").get<std::size_t>();
        s.y_card = j.at("y_card").get<std::size_t>();
        s.v_card = j.at("v_card").get<std::size_t>();
        s.p_u = j.at("p_u").get<std::vector<double>>();
        s.p_y_given_u = j.at("p_y_given_u").get<std::vector<double>>();
        s.p_v_given_uy = j.at("p_v_given_uy").get<std::vector<double>>();
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("covering source: ") + e.what());
    }
}

int cmd_simulate(const SimulateArgs& a)
{
    const ChannelConfig cfg = load_channel_config(a.config);
    if (a.mode == "states") {
        const LdicConfig& l = need_ldic(cfg, "state simulation");
        const StateTrace t = sample_states(a.n, l.states(), a.seed);
        std::string log = "t,s1,s2\n";
        std::size_t on1 = 0, on2 = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const bool s1 = t.states[i].first == LinkState::on, s2 = t.states[i].second == LinkState::on;
            on1 += s1;
            on2 += s2;
            log += std::to_string(i) + "," + (s1 ? "1" : "0") + "," + (s2 ? "1" : "0") + "\n";
        }
        const double n = static_cast<double>(t.size());
        emit_log(a, log, "states n " + std::to_string(t.size()) + " " +
                             stderr_line("p1_hat", on1 / n, t.size()) + " " +
                             stderr_line("p2_hat", on2 / n, t.size()));
        return kOk;
    }
    if (a.mode == "covering") {
        const CoveringSource src = a.source.empty() ? CoveringSource::binary_symmetric(a.crossover)
                                                    : load_covering_source(a.source);
        CoveringOptions o;
        o.n = a.n;
        o.rate = a.rate;
        o.epsilon = a.epsilon > 0.0 ? a.epsilon : 0.1;
        o.trials = a.trials;
        o.seed = a.seed;
        o.workers = a.workers;
        o.codebook_cap = a.codebook_cap;
        if (a.method == "exact")
            o.method = CoveringMethod::exact;
        else if (a.method == "explicit")
            o.method = CoveringMethod::explicit_codebook;
        else
            throw std::invalid_argument("unknown covering method '" + a.method + "'");
        const CoveringReport r = covering_run(src, o);
        emit_log(a, covering_log(r),
                 "covering I " + g9(src.conditional_information()) + " rate " + g9(a.rate) + " " +
                     stderr_line("success_rate", r.success_rate(), r.trials.size()));
        return kOk;
    }
    if (a.mode == "scheme") {
        const LdicConfig& l = need_ldic(cfg, "scheme simulation");
        if (!a.rates.empty() && a.rates.size() != 6)
            throw std::invalid_argument("--rates takes r10,r11,r20,r22,rhat1,rhat2");
        SchemeConfig sc;
        sc.n = a.n;
        sc.B = a.B;
        sc.trials = a.trials;
        sc.seed = a.seed;
        sc.search_cap = a.search_cap;
        sc.workers = a.workers;
        if (a.epsilon > 0.0) sc.epsilon = a.epsilon;
        if (a.rates.size() == 6) {
            sc.r10 = a.rates[0];
            sc.r11 = a.rates[1];
            sc.r20 = a.rates[2];
            sc.r22 = a.rates[3];
            sc.rhat1 = a.rates[4];
            sc.rhat2 = a.rates[5];
        }
        const SchemeReport r = simulate_scheme(l.params, l.states(), sc);
        emit_log(a, scheme_log(r),
                 "scheme " + stderr_line("error_rate_1", r.error_rate_1, sc.trials) + " " +
                     stderr_line("error_rate_2", r.error_rate_2, sc.trials) + " ties " +
                     std::to_string(r.ties) + " misses " + std::to_string(r.misses) +
                     " compression_failures " + std::to_string(r.compression_failures));
        return kOk;
    }
    throw std::invalid_argument("unknown simulation mode '" + a.mode + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rate regions and simulation for interference channels with feedback"};
    app.require_subcommand(1);

    CapacityArgs cap;
    auto* c = app.add_subcommand("capacity", "Capacity region of a linear deterministic channel");
    c->add_option("config", cap.config, "Channel config (JSON)")->required();
    c->add_option("--p1", cap.p1, "Feedback probability of user 1 (overrides the config)");
    c->add_option("--p2", cap.p2, "Feedback probability of user 2 (overrides the config)");
    c->add_option("--sweep", cap.sweep, "Grid of p values; evaluates every (p1, p2) pair")->delimiter(',');
    c->add_option("--out", cap.out, "Output file (default stdout)");
    c->add_option("--plot", cap.plot, "Write the vertex polyline as CSV");

    InnerArgs in;
    auto* i = app.add_subcommand("inner", "Inner bound: union over a family of input distributions");
    i->add_option("config", in.config, "Channel config (JSON)")->required();
    i->add_option("--theorem", in.theorem, "1, 2 or schemeV")->check(CLI::IsMember({"1", "2", "schemeV"}));
    i->add_option("--search", in.search, "grid, random, uniform or file")
        ->check(CLI::IsMember({"grid", "random", "uniform", "file"}));
    i->add_option("--resolution", in.resolution, "Simplex grid resolution (0 disables the grid)");
    i->add_option("--samples", in.samples, "Dirichlet samples");
    i->add_option("--seed", in.seed, "Seed for random samples");
    i->add_option("--dist-file", in.dist_file, "Distribution list for --search file");
    i->add_option("--q-card", in.q_card, "Time-sharing alphabet size");
    i->add_option("--u-card", in.u_card, "Public auxiliary alphabet size");
    i->add_option("--v-card", in.v_card, "Compression auxiliary alphabet size");
    i->add_option("--family-cap", in.family_cap, "Largest family evaluated");
    i->add_option("--cap-margin", in.cap_margin, "Relative margin on the rate caps");
    i->add_flag("--no-side-constraints", in.no_side, "Drop R10 <= R1 and R20 <= R2");
    i->add_option("--workers", in.workers, "Worker threads (default ICFB_WORKERS or all cores)");
    i->add_option("--out", in.out, "Output file (default stdout)");
    i->add_option("--plot", in.plot, "Write the vertex polyline as CSV");

    std::string cmp_a, cmp_b;
    double tol = kRegionTolerance;
    auto* m = app.add_subcommand("compare", "Compare two region files; exit 1 unless A is inside B");
    m->add_option("a", cmp_a, "Region file A")->required();
    m->add_option("b", cmp_b, "Region file B")->required();
    m->add_option("--tol", tol, "Inclusion tolerance");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Feedback states, covering test or block-Markov scheme");
    s->add_option("config", sim.config, "Channel config (JSON)")->required();
    s->add_option("--mode", sim.mode, "states, covering or scheme")
        ->check(CLI::IsMember({"states", "covering", "scheme"}));
    s->add_option("--n", sim.n, "Trace length or block length");
    s->add_option("--B", sim.B, "Number of blocks (scheme)");
    s->add_option("--trials", sim.trials, "Monte-Carlo trials");
    s->add_option("--seed", sim.seed, "Seed");
    s->add_option("--rates", sim.rates, "r10,r11,r20,r22,rhat1,rhat2 (scheme)")->delimiter(',');
    s->add_option("--rate", sim.rate, "Compression rate (covering)");
    s->add_option("--epsilon", sim.epsilon, "Typicality slack");
    s->add_option("--crossover", sim.crossover, "BSC crossover of the default covering source");
    s->add_option("--source", sim.source, "Covering source file (JSON)");
    s->add_option("--method", sim.method, "Covering method: exact or explicit");
    s->add_option("--codebook-cap", sim.codebook_cap, "Largest explicit covering codebook");
    s->add_option("--search-cap", sim.search_cap, "Largest decoder search (scheme)");
    s->add_option("--workers", sim.workers, "Worker threads (default ICFB_WORKERS or all cores)");
    s->add_option("--out", sim.out, "Trial log file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (c->parsed()) return cmd_capacity(cap);
        if (i->parsed()) return cmd_inner(in);
        if (m->parsed()) return cmd_compare(cmp_a, cmp_b, tol);
        if (s->parsed()) return cmd_simulate(sim);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSemantic;
    }
    return kSemantic;
}
