#include "icfb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "icfb/errors.hpp"
#include "icfb/parallel.hpp"
#include "icfb/rng.hpp"
#include "icfb/typicality.hpp"

namespace icfb {

namespace {

void check_length(const LdicParams& p, std::span<const std::uint8_t> v, const char* what)
{
    if (v.size() != static_cast<std::size_t>(p.q))
        throw std::invalid_argument(std::string(what) + " must have length q");
}

// Inverse-CDF sampler over the positive-probability letters of a pmf.
class Sampler {
public:
    Sampler() = default;
    explicit Sampler(std::span<const double> pmf)
    {
        double cum = 0.0;
        for (std::size_t a = 0; a < pmf.size(); ++a) {
            if (pmf[a] <= 0.0) continue;
            cum += pmf[a];
            cum_.push_back(cum);
            letter_.push_back(a);
        }
        if (letter_.empty()) return;
        cum_.back() = 1.0;
    }

    bool defined() const { return !letter_.empty(); }
    bool constant() const { return letter_.size() == 1; }

    std::size_t draw(double u) const
    {
        if (letter_.empty()) throw std::logic_error("sampling from an empty law");
        auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        if (it == cum_.end()) --it;
        return letter_[static_cast<std::size_t>(it - cum_.begin())];
    }

private:
    std::vector<double> cum_;
    std::vector<std::size_t> letter_;
};

// Samplers for P(B | A = a) built from a two-variable table p[a][b].
std::vector<Sampler> conditional_samplers(std::span<const double> joint, std::size_t a_card,
                                          std::size_t b_card)
{
    std::vector<Sampler> out(a_card);
    std::vector<double> row(b_card);
    for (std::size_t a = 0; a < a_card; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < b_card; ++b) s += joint[a * b_card + b];
        if (s <= 0.0) continue;
        for (std::size_t b = 0; b < b_card; ++b) row[b] = joint[a * b_card + b] / s;
        out[a] = Sampler(row);
    }
    return out;
}

std::string fmt9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double log_sum_exp(double a, double b)
{
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log Pr(Multinomial(n, q) lands in the box [lo, hi]).
double log_multinomial_box(std::size_t n, std::span<const double> q,
                           std::span<const std::size_t> lo, std::span<const std::size_t> hi)
{
    const std::size_t k = q.size();
    // g[m]: log of sum over counts of the letters so far summing to m of
    // prod q^c / c!.
    std::vector<double> g(n + 1, -INFINITY), next(n + 1);
    g[0] = 0.0;
    auto term = [&](std::size_t letter, std::size_t c) {
        if (q[letter] <= 0.0) return c == 0 ? 0.0 : -INFINITY;
        return static_cast<double>(c) * std::log(q[letter]) -
               std::lgamma(static_cast<double>(c) + 1.0);
    };
    for (std::size_t letter = 0; letter + 1 < k; ++letter) {
        std::fill(next.begin(), next.end(), -INFINITY);
        for (std::size_t m = 0; m <= n; ++m) {
            if (g[m] == -INFINITY) continue;
            for (std::size_t c = lo[letter]; c <= hi[letter] && m + c <= n; ++c)
                next[m + c] = log_sum_exp(next[m + c], g[m] + term(letter, c));
        }
        g.swap(next);
    }
    double total = -INFINITY;
    for (std::size_t m = 0; m <= n; ++m) {
        if (g[m] == -INFINITY) continue;
        const std::size_t c = n - m;
        if (c < lo[k - 1] || c > hi[k - 1]) continue;
        total = log_sum_exp(total, g[m] + term(k - 1, c));
    }
    if (total == -INFINITY) return total;
    return std::min(0.0, total + std::lgamma(static_cast<double>(n) + 1.0));
}

// 1 - (1 - p)^(2^bits) from log p.
double cover_probability(double log_p, std::size_t bits)
{
    if (log_p == -INFINITY) return 0.0;
    if (log_p >= 0.0) return 1.0;
    const double log_lp = log_p < -30.0 ? log_p : std::log(-std::log1p(-std::exp(log_p)));
    const double t = static_cast<double>(bits) * std::log(2.0) + log_lp;
    if (t > 700.0) return 1.0;
    return -std::expm1(-std::exp(t));
}

std::size_t rate_bits(double length, double rate)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rates must be >= 0");
    const double bits = std::ceil(length * rate - 1e-9);
    return bits <= 0.0 ? 0 : static_cast<std::size_t>(bits);
}

std::uint64_t pow2_checked(std::size_t bits)
{
    if (bits > 62) throw ResourceLimitError("codebook size 2^" + std::to_string(bits) + " too large");
    return std::uint64_t{1} << bits;
}

std::uint64_t mul_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap)
{
    if (a != 0 && b > cap / a) return cap + 1;
    return a * b;
}

} // namespace

// --- states, channel, reconstruction -------------------------------------

StateTrace sample_states(std::size_t n, const FeedbackStateSpec& fb, std::uint64_t seed)
{
    if (n == 0) throw std::invalid_argument("state trace length must be >= 1");
    const auto& c = fb.cells();
    const double cum[4] = {c[0][0], c[0][0] + c[0][1], c[0][0] + c[0][1] + c[1][0], 1.0};
    std::mt19937_64 gen(seed);
    StateTrace trace;
    trace.seed = seed;
    trace.states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = unit_double(gen());
        int cell = 0;
        while (cell < 3 && !(u < cum[cell])) ++cell;
        trace.states.emplace_back(static_cast<LinkState>(cell >> 1), static_cast<LinkState>(cell & 1));
    }
    return trace;
}

Transmission transmit(const LdicParams& params, std::span<const std::uint8_t> x1,
                      std::span<const std::uint8_t> x2, std::pair<LinkState, LinkState> state)
{
    params.validate();
    check_length(params, x1, "x1");
    check_length(params, x2, "x2");
    Transmission t;
    t.y3 = xor_bits(shift_apply(params.q, params.n11, x1), shift_apply(params.q, params.n12, x2));
    t.y4 = xor_bits(shift_apply(params.q, params.n22, x2), shift_apply(params.q, params.n21, x1));
    if (state.first == LinkState::on) t.fb1 = t.y3;
    if (state.second == LinkState::on) t.fb2 = t.y4;
    return t;
}

std::optional<BitVector> reconstruct_tilde(const LdicParams& params,
                                           std::span<const std::uint8_t> own_x,
                                           const std::optional<BitVector>& fb, int encoder)
{
    params.validate();
    if (encoder != 1 && encoder != 2) throw std::invalid_argument("encoder must be 1 or 2");
    check_length(params, own_x, "own input");
    if (!fb) return std::nullopt;
    check_length(params, *fb, "feedback");
    const int direct = encoder == 1 ? params.n11 : params.n22;
    return xor_bits(*fb, shift_apply(params.q, direct, own_x));
}

// --- covering --------------------------------------------------------------

void CoveringSource::validate() const
{
    if (u_card == 0 || y_card == 0 || v_card == 0)
        throw std::invalid_argument("covering source cardinalities must be positive");
    if (p_u.size() != u_card || p_y_given_u.size() != u_card * y_card ||
        p_v_given_uy.size() != u_card * y_card * v_card)
        throw std::invalid_argument("covering source table sizes do not match cardinalities");
    auto check_rows = [](std::span<const double> t, std::size_t width) {
        for (std::size_t r = 0; r < t.size() / width; ++r) {
            double s = 0.0;
            for (std::size_t a = 0; a < width; ++a) {
                const double p = t[r * width + a];
                if (!(p >= 0.0) || p > 1.0)
                    throw std::invalid_argument("covering source entry out of [0,1]");
                s += p;
            }
            if (std::abs(s - 1.0) > 1e-9)
                throw std::invalid_argument("covering source row does not sum to 1");
        }
    };
    check_rows(p_u, u_card);
    check_rows(p_y_given_u, y_card);
    check_rows(p_v_given_uy, v_card);
}

double CoveringSource::conditional_information() const
{
    validate();
    JointPmf joint({{"U", u_card}, {"Y", y_card}, {"V", v_card}}, [&] {
        std::vector<double> w(u_card * y_card * v_card);
        for (std::size_t u = 0; u < u_card; ++u)
            for (std::size_t y = 0; y < y_card; ++y)
                for (std::size_t v = 0; v < v_card; ++v)
                    w[(u * y_card + y) * v_card + v] = p_u[u] * p_y_given_u[u * y_card + y] *
                                                       p_v_given_uy[(u * y_card + y) * v_card + v];
        return w;
    }());
    return mutual_information(joint, {"V"}, {"Y"}, {"U"});
}

CoveringSource CoveringSource::binary_symmetric(double crossover)
{
    if (!(crossover >= 0.0 && crossover <= 1.0))
        throw std::invalid_argument("crossover must lie in [0,1]");
    CoveringSource s;
    s.u_card = 1;
    s.y_card = 2;
    s.v_card = 2;
    s.p_u = {1.0};
    s.p_y_given_u = {0.5, 0.5};
    s.p_v_given_uy = {1.0 - crossover, crossover, crossover, 1.0 - crossover};
    return s;
}

double CoveringReport::success_rate() const
{
    return trials.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials.size());
}

CoveringReport covering_run(const CoveringSource& source, const CoveringOptions& o)
{
    source.validate();
    if (o.n == 0) throw std::invalid_argument("block length must be >= 1");
    if (o.trials == 0) throw std::invalid_argument("trials must be >= 1");
    const std::size_t bits = rate_bits(static_cast<double>(o.n), o.rate);
    std::uint64_t codebook = 0;
    if (o.method == CoveringMethod::explicit_codebook) {
        codebook = bits > 62 ? o.codebook_cap + 1 : std::uint64_t{1} << bits;
        if (codebook > o.codebook_cap)
            throw ResourceLimitError("covering codebook of 2^" + std::to_string(bits) +
                                     " words exceeds the cap");
    }

    const std::size_t U = source.u_card, Y = source.y_card, V = source.v_card;
    std::vector<double> puyv(U * Y * V), pvu(U * V, 0.0), puy(U * Y);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t y = 0; y < Y; ++y) {
            puy[u * Y + y] = source.p_u[u] * source.p_y_given_u[u * Y + y];
            for (std::size_t v = 0; v < V; ++v) {
                const double pv = source.p_v_given_uy[(u * Y + y) * V + v];
                puyv[(u * Y + y) * V + v] = puy[u * Y + y] * pv;
                pvu[u * V + v] += source.p_y_given_u[u * Y + y] * pv;
            }
        }
    const TypicalityTest test(puyv, o.epsilon);
    const Sampler u_sampler(source.p_u);
    std::vector<Sampler> y_sampler(U), v_sampler(U);
    for (std::size_t u = 0; u < U; ++u) {
        y_sampler[u] = Sampler(std::span(source.p_y_given_u).subspan(u * Y, Y));
        v_sampler[u] = Sampler(std::span(pvu).subspan(u * V, V));
    }

    CoveringReport report;
    report.trials.resize(o.trials);
    parallel_for(o.trials, resolve_workers(o.workers), [&](std::size_t t) {
        CoveringTrial& rec = report.trials[t];
        rec.seed = derive_seed(o.seed, t);
        std::mt19937_64 gen(rec.seed);
        std::vector<std::size_t> us(o.n), ys(o.n);
        for (std::size_t j = 0; j < o.n; ++j) {
            us[j] = u_sampler.draw(unit_double(gen()));
            ys[j] = y_sampler[us[j]].draw(unit_double(gen()));
        }
        const double w = unit_double(gen());

        if (o.method == CoveringMethod::exact) {
            std::vector<std::size_t> group(U * Y, 0);
            for (std::size_t j = 0; j < o.n; ++j) ++group[us[j] * Y + ys[j]];
            double log_p = 0.0;
            std::vector<std::size_t> lo(V), hi(V);
            for (std::size_t u = 0; u < U && log_p != -INFINITY; ++u) {
                for (std::size_t y = 0; y < Y && log_p != -INFINITY; ++y) {
                    const std::size_t g = group[u * Y + y];
                    for (std::size_t v = 0; v < V; ++v) {
                        lo[v] = test.lo((u * Y + y) * V + v, o.n);
                        hi[v] = std::min(g, test.hi((u * Y + y) * V + v, o.n));
                    }
                    log_p += log_multinomial_box(g, std::span(pvu).subspan(u * V, V), lo, hi);
                }
            }
            // Cells of zero-probability (u, y) pairs never occur, so the box
            // test above covers every letter of the joint alphabet.
            rec.probability = cover_probability(log_p, bits);
            rec.success = w < rec.probability;
            return;
        }

        const TypicalityTest::Bounds b = test.bounds(o.n);
        std::vector<std::size_t> counts(test.size());
        for (std::uint64_t idx = 0; idx < codebook && !rec.success; ++idx) {
            std::fill(counts.begin(), counts.end(), 0);
            bool alive = true;
            for (std::size_t j = 0; j < o.n && alive; ++j) {
                const std::uint64_t h = mix64(rec.seed ^ mix64(idx ^ mix64(j + 0x5bd1e995ULL)));
                const std::size_t v = v_sampler[us[j]].draw(unit_double(h));
                const std::size_t cell = (us[j] * Y + ys[j]) * V + v;
                if (++counts[cell] > b.hi[cell]) alive = false;
            }
            rec.success = alive && b.within(counts);
        }
    });
    for (const auto& r : report.trials) report.successes += r.success ? 1 : 0;
    return report;
}

double covering_success_rate(const CoveringSource& source, const CoveringOptions& options)
{
    return covering_run(source, options).success_rate();
}

std::string covering_log(const CoveringReport& report)
{
    std::string out = "trial,seed,success,probability\n";
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
        const auto& r = report.trials[t];
        out += std::to_string(t) + "," + std::to_string(r.seed) + "," + (r.success ? "1" : "0") +
               "," + fmt9(r.probability) + "\n";
    }
    return out;
}

// --- block-Markov scheme ---------------------------------------------------

SchemeSizes scheme_sizes(const SchemeConfig& cfg)
{
    if (cfg.n == 0 || cfg.B == 0) throw std::invalid_argument("block length and block count must be >= 1");
    const double nb = static_cast<double>(cfg.n * cfg.B);
    const double n = static_cast<double>(cfg.n);
    SchemeSizes s;
    s.m10 = pow2_checked(rate_bits(nb, cfg.r10));
    s.m11 = pow2_checked(rate_bits(nb, cfg.r11));
    s.m20 = pow2_checked(rate_bits(nb, cfg.r20));
    s.m22 = pow2_checked(rate_bits(nb, cfg.r22));
    s.mhat1 = pow2_checked(rate_bits(n, cfg.rhat1));
    s.mhat2 = pow2_checked(rate_bits(n, cfg.rhat2));
    return s;
}

namespace {

enum Tag : std::uint64_t { kU1 = 1, kV1, kX1, kU2, kV2, kX2 };

// Joint pmf restricted to `labels` (listed in joint order) with a flat index
// over those labels.
struct Marginal {
    std::vector<std::size_t> cards;
    std::vector<double> pmf;

    Marginal(const JointPmf& joint, const LabelSet& labels)
    {
        JointPmf m = marginalize(joint, labels);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (m.variables()[i].label != labels[i])
                throw std::logic_error("marginal labels must follow the joint order");
            cards.push_back(m.variables()[i].card);
        }
        pmf.assign(m.weights().begin(), m.weights().end());
    }

    template <class... S>
    std::size_t index(S... s) const
    {
        const std::size_t sym[] = {static_cast<std::size_t>(s)...};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < cards.size(); ++i) idx = idx * cards[i] + sym[i];
        return idx;
    }
};

struct UserLaws {
    Sampler u;
    std::vector<Sampler> x_given_u;
    std::vector<Sampler> v_given_u;
};

class SchemeRun {
public:
    SchemeRun(const InjectiveDetIc& ch, const FeedbackStateSpec& fb, const JointPmf& joint,
              const SchemeConfig& cfg, const SchemeSizes& sizes)
        : ch_(ch), fb_(fb), cfg_(cfg), sizes_(sizes),
          enc1_(joint, {"U1", "Y1", "V1"}), enc2_(joint, {"U2", "Y2", "V2"}),
          dec1_(joint, {"U1", "X1", "U2", "Y3", "V1", "V2"}),
          dec2_(joint, {"U1", "U2", "X2", "Y4", "V1", "V2"}),
          enc1_b_(TypicalityTest(enc1_.pmf, cfg.epsilon).bounds(cfg.n)),
          enc2_b_(TypicalityTest(enc2_.pmf, cfg.epsilon).bounds(cfg.n)),
          dec1_b_(TypicalityTest(dec1_.pmf, cfg.epsilon).bounds(cfg.n)),
          dec2_b_(TypicalityTest(dec2_.pmf, cfg.epsilon).bounds(cfg.n))
    {
        laws_[0] = laws(joint, "U1", "X1", "V1");
        laws_[1] = laws(joint, "U2", "X2", "V2");
    }

    SchemeTrial run(std::uint64_t seed) const;

private:
    static UserLaws laws(const JointPmf& joint, const std::string& u, const std::string& x,
                         const std::string& v)
    {
        UserLaws l;
        const std::size_t uc = joint.variable(u).card;
        l.u = Sampler(marginalize(joint, {u}).weights());
        l.x_given_u = conditional_samplers(marginalize(joint, {u, x}).weights(), uc,
                                           joint.variable(x).card);
        l.v_given_u = conditional_samplers(marginalize(joint, {u, v}).weights(), uc,
                                           joint.variable(v).card);
        return l;
    }

    static std::uint64_t prefix(std::uint64_t seed, std::uint64_t tag, std::uint64_t block,
                                std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        std::uint64_t h = mix64(seed ^ (tag << 56));
        h = mix64(h ^ block);
        h = mix64(h ^ a);
        h = mix64(h ^ b);
        return mix64(h ^ c);
    }

    // Lazily evaluated codeword; symbol j depends on the key prefix and, for
    // superposed codewords, on the cloud-center symbol u.
    struct Word {
        const Sampler* fixed = nullptr;
        const std::vector<Sampler>* given_u = nullptr;
        std::uint64_t key = 0;

        std::size_t at(std::size_t j, std::size_t u = 0) const
        {
            const Sampler& s = fixed ? *fixed : (*given_u)[u];
            if (s.constant()) return s.draw(0.0);
            return s.draw(unit_double(mix64(key ^ j)));
        }
    };

    // u_{k,i}(w0, tp), v_{k,i}(w0, tp, t) and x_{k,i}(w0, tp, wp).
    Word u_word(std::uint64_t seed, int k, std::size_t i, std::uint64_t w0, std::uint64_t tp) const
    {
        const Sampler& s = laws_[k].u;
        return {&s, nullptr, s.constant() ? 0 : prefix(seed, k == 0 ? kU1 : kU2, i, w0, tp, 0)};
    }
    Word v_word(std::uint64_t seed, int k, std::size_t i, std::uint64_t w0, std::uint64_t tp,
                std::uint64_t t) const
    {
        return {nullptr, &laws_[k].v_given_u,
                all_constant(laws_[k].v_given_u) ? 0 : prefix(seed, k == 0 ? kV1 : kV2, i, w0, tp, t)};
    }
    Word x_word(std::uint64_t seed, int k, std::size_t i, std::uint64_t w0, std::uint64_t tp,
                std::uint64_t wp) const
    {
        return {nullptr, &laws_[k].x_given_u,
                all_constant(laws_[k].x_given_u) ? 0 : prefix(seed, k == 0 ? kX1 : kX2, i, w0, tp, wp)};
    }

    static bool all_constant(const std::vector<Sampler>& v)
    {
        for (const auto& s : v)
            if (s.defined() && !s.constant()) return false;
        return true;
    }

    // Decoder test for block i (1-based) at receiver k.
    bool block_typical(std::uint64_t seed, int k, std::size_t i,
                       const std::vector<std::size_t>& y, std::uint64_t own0, std::uint64_t ownp,
                       std::uint64_t other0, std::uint64_t tp_own, std::uint64_t t_own,
                       std::uint64_t tp_other, std::uint64_t t_other,
                       std::vector<std::size_t>& counts) const;

    std::optional<std::pair<std::uint64_t, std::uint64_t>>
    decode(std::uint64_t seed, int k, const std::vector<std::vector<std::size_t>>& y,
           std::size_t& candidates) const;

    const InjectiveDetIc& ch_;
    const FeedbackStateSpec& fb_;
    const SchemeConfig& cfg_;
    SchemeSizes sizes_;
    Marginal enc1_, enc2_, dec1_, dec2_;
    TypicalityTest::Bounds enc1_b_, enc2_b_, dec1_b_, dec2_b_;
    std::array<UserLaws, 2> laws_;
};

bool SchemeRun::block_typical(std::uint64_t seed, int k, std::size_t i,
                              const std::vector<std::size_t>& y, std::uint64_t own0,
                              std::uint64_t ownp, std::uint64_t other0, std::uint64_t tp_own,
                              std::uint64_t t_own, std::uint64_t tp_other, std::uint64_t t_other,
                              std::vector<std::size_t>& counts) const
{
    const int o = 1 - k;
    const Marginal& m = k == 0 ? dec1_ : dec2_;
    const TypicalityTest::Bounds& test = k == 0 ? dec1_b_ : dec2_b_;
    const std::size_t n = cfg_.n;
    std::fill(counts.begin(), counts.end(), 0);
    const Word wuk = u_word(seed, k, i, own0, tp_own);
    const Word wuo = u_word(seed, o, i, other0, tp_other);
    const Word wx = x_word(seed, k, i, own0, tp_own, ownp);
    const Word wvk = v_word(seed, k, i, own0, tp_own, t_own);
    const Word wvo = v_word(seed, o, i, other0, tp_other, t_other);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t uk = wuk.at(j);
        const std::size_t uo = wuo.at(j);
        const std::size_t x = wx.at(j, uk);
        const std::size_t vk = wvk.at(j, uk);
        const std::size_t vo = wvo.at(j, uo);
        const std::size_t cell = k == 0 ? m.index(uk, x, uo, y[j], vk, vo)
                                        : m.index(uo, uk, x, y[j], vo, vk);
        if (++counts[cell] > test.hi[cell]) return false;
    }
    return test.within(counts);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
SchemeRun::decode(std::uint64_t seed, int k, const std::vector<std::vector<std::size_t>>& y,
                  std::size_t& candidates) const
{
    const std::uint64_t m0 = k == 0 ? sizes_.m10 : sizes_.m20;
    const std::uint64_t mp = k == 0 ? sizes_.m11 : sizes_.m22;
    const std::uint64_t mo = k == 0 ? sizes_.m20 : sizes_.m10;
    const std::uint64_t hk = k == 0 ? sizes_.mhat1 : sizes_.mhat2;
    const std::uint64_t ho = k == 0 ? sizes_.mhat2 : sizes_.mhat1;
    std::vector<std::size_t> counts((k == 0 ? dec1_ : dec2_).pmf.size());
    std::vector<char> reach(hk * ho), next(hk * ho);

    candidates = 0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> found;
    for (std::uint64_t w0 = 0; w0 < m0; ++w0) {
        for (std::uint64_t wp = 0; wp < mp; ++wp) {
            bool ok = false;
            for (std::uint64_t wo = 0; wo < mo && !ok; ++wo) {
                // Reachable (t_own, t_other) after each block, starting from
                // the default indices before block 1.
                std::fill(reach.begin(), reach.end(), 0);
                reach[0] = 1;
                bool alive = true;
                for (std::size_t i = 1; i <= cfg_.B && alive; ++i) {
                    std::fill(next.begin(), next.end(), 0);
                    alive = false;
                    for (std::uint64_t a = 0; a < hk; ++a)
                        for (std::uint64_t b = 0; b < ho; ++b) {
                            if (!reach[a * ho + b]) continue;
                            for (std::uint64_t c = 0; c < hk; ++c)
                                for (std::uint64_t d = 0; d < ho; ++d) {
                                    if (next[c * ho + d]) continue;
                                    if (block_typical(seed, k, i, y[i - 1], w0, wp, wo, a, c, b, d,
                                                      counts)) {
                                        next[c * ho + d] = 1;
                                        alive = true;
                                    }
                                }
                        }
                    reach.swap(next);
                }
                ok = alive;
            }
            if (ok) {
                ++candidates;
                if (candidates > 1) return std::nullopt;
                found = std::make_pair(w0, wp);
            }
        }
    }
    return found;
}

SchemeTrial SchemeRun::run(std::uint64_t seed) const
{
    SchemeTrial trial;
    trial.seed = seed;
    std::mt19937_64 gen(seed);
    trial.sent = {gen() % sizes_.m10, gen() % sizes_.m11, gen() % sizes_.m20, gen() % sizes_.m22};
    const std::uint64_t w0[2] = {trial.sent[0], trial.sent[2]};
    const std::uint64_t wp[2] = {trial.sent[1], trial.sent[3]};
    const std::uint64_t mhat[2] = {sizes_.mhat1, sizes_.mhat2};
    const std::size_t n = cfg_.n, B = cfg_.B;
    const StateTrace states = sample_states(n * B, fb_, derive_seed(seed, 1));

    // t[k][i] is the compression index of block i's feedback (t[k][0] default).
    std::vector<std::uint64_t> t[2] = {std::vector<std::uint64_t>(B + 1, 0),
                                       std::vector<std::uint64_t>(B + 1, 0)};
    std::vector<std::vector<std::size_t>> fbk[2], y3(B), y4(B);
    fbk[0].resize(B);
    fbk[1].resize(B);
    std::vector<std::size_t> counts;

    for (std::size_t i = 1; i <= B; ++i) {
        for (int k = 0; k < 2 && i >= 2; ++k) {
            // Compress block i-1's feedback: smallest typical index, else 0.
            const Marginal& m = k == 0 ? enc1_ : enc2_;
            const TypicalityTest::Bounds& test = k == 0 ? enc1_b_ : enc2_b_;
            counts.assign(m.pmf.size(), 0);
            bool hit = false;
            for (std::uint64_t c = 0; c < mhat[k] && !hit; ++c) {
                std::fill(counts.begin(), counts.end(), 0);
                const Word wu = u_word(seed, k, i - 1, w0[k], t[k][i - 2]);
                const Word wv = v_word(seed, k, i - 1, w0[k], t[k][i - 2], c);
                bool alive = true;
                for (std::size_t j = 0; j < n && alive; ++j) {
                    const std::size_t u = wu.at(j);
                    const std::size_t v = wv.at(j, u);
                    const std::size_t cell = m.index(u, fbk[k][i - 2][j], v);
                    if (++counts[cell] > test.hi[cell]) alive = false;
                }
                if (alive && test.within(counts)) {
                    t[k][i - 1] = c;
                    hit = true;
                }
            }
            if (!hit) {
                t[k][i - 1] = 0;
                ++trial.compression_failures;
            }
        }
        for (int k = 0; k < 2; ++k) fbk[k][i - 1].resize(n);
        y3[i - 1].resize(n);
        y4[i - 1].resize(n);
        const Word wu[2] = {u_word(seed, 0, i, w0[0], t[0][i - 1]),
                            u_word(seed, 1, i, w0[1], t[1][i - 1])};
        const Word wx[2] = {x_word(seed, 0, i, w0[0], t[0][i - 1], wp[0]),
                            x_word(seed, 1, i, w0[1], t[1][i - 1], wp[1])};
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t x[2];
            for (int k = 0; k < 2; ++k) x[k] = wx[k].at(j, wu[k].at(j));
            const auto [s1, s2] = states.states[(i - 1) * n + j];
            y3[i - 1][j] = ch_.y3(x[0], x[1]);
            y4[i - 1][j] = ch_.y4(x[0], x[1]);
            fbk[0][i - 1][j] = s1 == LinkState::on ? ch_.t2[x[1]] : ch_.t2_card;
            fbk[1][i - 1][j] = s2 == LinkState::on ? ch_.t1[x[0]] : ch_.t1_card;
        }
    }

    trial.decoded1 = decode(seed, 0, y3, trial.candidates1);
    trial.decoded2 = decode(seed, 1, y4, trial.candidates2);
    trial.ok1 = trial.decoded1 && trial.decoded1->first == trial.sent[0] &&
                trial.decoded1->second == trial.sent[1];
    trial.ok2 = trial.decoded2 && trial.decoded2->first == trial.sent[2] &&
                trial.decoded2->second == trial.sent[3];
    return trial;
}

} // namespace

SchemeReport simulate_scheme(const LdicParams& params, const FeedbackStateSpec& fb,
                             const SchemeConfig& cfg)
{
    const std::size_t card = std::size_t{1} << params.q;
    const InjectiveDetIc ch = ldic_build(params);
    auto dist = GfInputDistribution::independent_inputs(std::vector<double>(card, 1.0 / card),
                                                        std::vector<double>(card, 1.0 / card),
                                                        ch.t2_card + 1, ch.t1_card + 1);
    return simulate_scheme(params, fb, dist, cfg);
}

SchemeReport simulate_scheme(const LdicParams& params, const FeedbackStateSpec& fb,
                             const GfInputDistribution& dist, const SchemeConfig& cfg)
{
    params.validate();
    if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("typicality slack must be positive");
    const InjectiveDetIc ch = ldic_build(params);
    const IcGfChannel gf = det_to_icgf(ch, fb);
    if (!dist.compatible_with(gf))
        throw std::invalid_argument("distribution alphabets do not match the channel");
    if (dist.cards().q != 1) throw std::invalid_argument("scheme simulation needs |Q| = 1");

    SchemeReport report;
    report.sizes = scheme_sizes(cfg);
    const SchemeSizes& s = report.sizes;
    auto search = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        std::uint64_t v = mul_capped(mul_capped(a, b, cfg.search_cap), c, cfg.search_cap);
        for (std::size_t i = 0; i < cfg.B; ++i)
            v = mul_capped(mul_capped(v, s.mhat1, cfg.search_cap), s.mhat2, cfg.search_cap);
        return v;
    };
    if (search(s.m10, s.m11, s.m20) > cfg.search_cap || search(s.m20, s.m22, s.m10) > cfg.search_cap)
        throw ResourceLimitError("decoder search size exceeds the cap; lower n, B or the rates");

    const JointPmf joint = build_gf_joint(dist, gf);
    const SchemeRun run(ch, fb, joint, cfg, s);
    report.trials.resize(cfg.trials);
    parallel_for(cfg.trials, resolve_workers(cfg.workers), [&](std::size_t t) {
        report.trials[t] = run.run(derive_seed(cfg.seed, t));
    });

    std::size_t err1 = 0, err2 = 0;
    for (const auto& r : report.trials) {
        err1 += r.ok1 ? 0 : 1;
        err2 += r.ok2 ? 0 : 1;
        report.ties += (r.candidates1 > 1) + (r.candidates2 > 1);
        report.misses += (r.candidates1 == 0) + (r.candidates2 == 0);
        report.compression_failures += r.compression_failures;
    }
    report.error_rate_1 = static_cast<double>(err1) / static_cast<double>(cfg.trials);
    report.error_rate_2 = static_cast<double>(err2) / static_cast<double>(cfg.trials);
    return report;
}

std::string scheme_log(const SchemeReport& report)
{
    std::string out =
        "trial,seed,w10,w11,w20,w22,dec1_w10,dec1_w11,dec2_w20,dec2_w22,ok1,ok2,"
        "candidates1,candidates2,compression_failures\n";
    auto opt = [](const std::optional<std::pair<std::uint64_t, std::uint64_t>>& d) {
        return d ? std::to_string(d->first) + "," + std::to_string(d->second) : std::string("-,-");
    };
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
        const auto& r = report.trials[t];
        out += std::to_string(t) + "," + std::to_string(r.seed);
        for (auto w : r.sent) out += "," + std::to_string(w);
        out += "," + opt(r.decoded1) + "," + opt(r.decoded2) + "," + (r.ok1 ? "1" : "0") + "," +
               (r.ok2 ? "1" : "0") + "," + std::to_string(r.candidates1) + "," +
               std::to_string(r.candidates2) + "," + std::to_string(r.compression_failures) + "\n";
    }
    return out;
}

} // namespace icfb
