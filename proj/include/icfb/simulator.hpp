#pragma once

// Time-domain simulation of the linear deterministic channel with
// intermittent feedback, a Monte-Carlo covering test and a toy-scale run of
// the block-Markov compress/forward scheme.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icfb/bounds.hpp"
#include "icfb/channels.hpp"

namespace icfb {

struct StateTrace {
    std::uint64_t seed = 0;
    std::vector<std::pair<LinkState, LinkState>> states;

    std::size_t size() const { return states.size(); }
};

StateTrace sample_states(std::size_t n, const FeedbackStateSpec& fb, std::uint64_t seed);

struct Transmission {
    BitVector y3;
    BitVector y4;
    std::optional<BitVector> fb1;  // nullopt = erasure
    std::optional<BitVector> fb2;
};

Transmission transmit(const LdicParams& params, std::span<const std::uint8_t> x1,
                      std::span<const std::uint8_t> x2, std::pair<LinkState, LinkState> state);

// Encoder k strips its own signal from the fed-back output. Encoder 1 returns
// S1*H12 x2, encoder 2 returns S2*H21 x1; nullopt when the feedback was erased.
std::optional<BitVector> reconstruct_tilde(const LdicParams& params,
                                           std::span<const std::uint8_t> own_x,
                                           const std::optional<BitVector>& fb, int encoder);

// P_U, P_{Y|U} as [u][y], P_{V|U,Y} as [u][y][v].
struct CoveringSource {
    std::size_t u_card = 1, y_card = 1, v_card = 1;
    std::vector<double> p_u;
    std::vector<double> p_y_given_u;
    std::vector<double> p_v_given_uy;

    void validate() const;
    // I(V;Y|U) in bits.
    double conditional_information() const;
    // U constant, Y uniform binary, V = Y through a BSC(crossover).
    static CoveringSource binary_symmetric(double crossover);
};

enum class CoveringMethod {
    // Success probability of a random codebook computed exactly per trial,
    // then one uniform draw per trial decides the outcome.
    exact,
    // Codewords generated one by one (codebook size limited by codebook_cap).
    explicit_codebook,
};

struct CoveringOptions {
    std::size_t n = 100;
    double rate = 0.0;
    double epsilon = 0.1;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    CoveringMethod method = CoveringMethod::exact;
    std::uint64_t codebook_cap = std::uint64_t{1} << 20;
    unsigned workers = 0;
};

struct CoveringTrial {
    std::uint64_t seed = 0;
    bool success = false;
    // Probability that the random codebook covers the sampled sequence
    // (exact method only; -1 otherwise).
    double probability = -1.0;
};

struct CoveringReport {
    std::size_t successes = 0;
    std::vector<CoveringTrial> trials;

    double success_rate() const;
};

CoveringReport covering_run(const CoveringSource& source, const CoveringOptions& options);
double covering_success_rate(const CoveringSource& source, const CoveringOptions& options);

struct SchemeConfig {
    std::size_t n = 8;  // block length
    std::size_t B = 2;  // number of blocks
    double r10 = 0.0, r11 = 0.0, r20 = 0.0, r22 = 0.0;
    double rhat1 = 0.0, rhat2 = 0.0;
    double epsilon = 0.3;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    // Limit on M10*M11*M20*Mhat1^B*Mhat2^B (and the mirrored product).
    std::uint64_t search_cap = std::uint64_t{1} << 26;
    unsigned workers = 0;
};

// Codebook sizes; each is 2^ceil(bits).
struct SchemeSizes {
    std::uint64_t m10 = 1, m11 = 1, m20 = 1, m22 = 1, mhat1 = 1, mhat2 = 1;
};

SchemeSizes scheme_sizes(const SchemeConfig& cfg);

struct SchemeTrial {
    std::uint64_t seed = 0;
    std::array<std::uint64_t, 4> sent{};  // w10, w11, w20, w22
    std::optional<std::pair<std::uint64_t, std::uint64_t>> decoded1;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> decoded2;
    bool ok1 = false;
    bool ok2 = false;
    std::size_t candidates1 = 0;  // message pairs passing decoder 1
    std::size_t candidates2 = 0;
    std::size_t compression_failures = 0;
};

struct SchemeReport {
    double error_rate_1 = 0.0;
    double error_rate_2 = 0.0;
    SchemeSizes sizes;
    std::size_t ties = 0;
    std::size_t misses = 0;
    std::size_t compression_failures = 0;
    std::vector<SchemeTrial> trials;
};

// Default distribution: Q, U, V trivial and uniform inputs.
SchemeReport simulate_scheme(const LdicParams& params, const FeedbackStateSpec& fb,
                             const SchemeConfig& cfg);
SchemeReport simulate_scheme(const LdicParams& params, const FeedbackStateSpec& fb,
                             const GfInputDistribution& dist, const SchemeConfig& cfg);

// One line per trial, comma separated, with a header line.
std::string covering_log(const CoveringReport& report);
std::string scheme_log(const SchemeReport& report);

} // namespace icfb
