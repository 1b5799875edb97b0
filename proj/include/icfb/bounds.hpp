#pragma once

// Rate-region evaluators for the interference channel with generalized
// feedback and for injective deterministic channels with intermittent feedback.

#include <array>
#include <cstddef>
#include <vector>

#include "icfb/channels.hpp"
#include "icfb/probability.hpp"
#include "icfb/regions.hpp"

namespace icfb {

// Free factors P_Q, P_{U1,X1|Q}, P_{U2,X2|Q}, P_{V1|U1,Y1,Q}, P_{V2|U2,Y2,Q}.
//
// Flat layouts: u1x1 is [q][u1][x1]; v1 is [u1][y1][q][v1] (likewise for user 2).
class GfInputDistribution {
public:
    struct Cards {
        std::size_t q = 1, u1 = 1, v1 = 1, u2 = 1, v2 = 1;
        std::size_t x1 = 1, x2 = 1, y1 = 1, y2 = 1;
        bool operator==(const Cards&) const = default;
    };

    GfInputDistribution(Cards cards, std::vector<double> p_q, std::vector<double> u1x1,
                        std::vector<double> u2x2, std::vector<double> v1,
                        std::vector<double> v2);

    // Q, U and V trivial; X1, X2 independent with the given marginals.
    static GfInputDistribution independent_inputs(std::vector<double> px1,
                                                  std::vector<double> px2,
                                                  std::size_t y1_card, std::size_t y2_card);

    const Cards& cards() const { return cards_; }
    std::span<const double> p_q() const { return p_q_; }
    const Kernel& u1x1() const { return u1x1_; }
    const Kernel& u2x2() const { return u2x2_; }
    const Kernel& v1() const { return v1_; }
    const Kernel& v2() const { return v2_; }

    // Alphabets agree with the channel's inputs and feedback outputs.
    bool compatible_with(const IcGfChannel& channel) const;

private:
    Cards cards_;
    std::vector<double> p_q_;
    Kernel u1x1_;
    Kernel u2x2_;
    Kernel v1_;
    Kernel v2_;
};

// Joint over (Q, U1, X1, U2, X2, Y1, Y2, Y3, Y4, V1, V2).
JointPmf build_gf_joint(const GfInputDistribution& d, const IcGfChannel& channel,
                        std::size_t cell_cap = kDefaultCellCap);

// Per-user information quantities; index 0 is user 1, index 1 is user 2, and
// "j" below denotes the other user.
struct Theorem1Constants {
    std::array<double, 2> A{};  // I(Uk,Vk,Xk; Y,Uj,Vj | Q)
    std::array<double, 2> B{};  // I(U1,V1,U2,V2,Xk; Y | Q)
    std::array<double, 2> C{};  // I(Uj,Vj; Uk,Vk,Xk | Q)
    std::array<double, 2> D{};  // I(Uj,Vj,Xk; Y | Uk,Vk,Q)
    std::array<double, 2> E{};  // I(Uk,Vk,Xk; Y | Uj,Vj,Q)
    std::array<double, 2> F{};  // I(Xk; Y | U1,V1,U2,V2,Q)
    std::array<double, 2> G{};  // I(Vk; Yk | Uk,Q), compression cost
};

Theorem1Constants theorem1_constants(const GfInputDistribution& d, const IcGfChannel& channel,
                                     std::size_t cell_cap = kDefaultCellCap);

struct RegionOptions {
    // Adds R10 <= R1 and R20 <= R2 (public part cannot exceed the total rate).
    bool side_constraints = true;
    // Caps are log2|Xk| * (1 + cap_margin).
    double cap_margin = 0.0;
    std::size_t cell_cap = kDefaultCellCap;
};

// Variables R1, R2, R10, R20.
LinearRateSystem theorem1_system(const Theorem1Constants& c, bool side_constraints = true);

// Variables R1, R2, Rhat1, Rhat2, R11, R22, R10, R20 with R1 = R10 + R11 and
// R2 = R20 + R22 imposed as equality pairs.
LinearRateSystem schemeV_system(const Theorem1Constants& c);

RateCaps caps_for(std::size_t x1_card, std::size_t x2_card, double margin = 0.0);

RateRegion inner_region_gf(const GfInputDistribution& d, const IcGfChannel& channel,
                           const RegionOptions& options = {});
RateRegion schemeV_region(const GfInputDistribution& d, const IcGfChannel& channel,
                          const RegionOptions& options = {});

// P_Q, P_{X1|Q}, P_{X2|Q}; layouts [q][x].
class DetIfInputDistribution {
public:
    DetIfInputDistribution(std::size_t q_card, std::size_t x1_card, std::size_t x2_card,
                           std::vector<double> p_q, std::vector<double> x1_given_q,
                           std::vector<double> x2_given_q);

    static DetIfInputDistribution product(std::vector<double> px1, std::vector<double> px2);
    static DetIfInputDistribution uniform(std::size_t x1_card, std::size_t x2_card);

    std::size_t q_card() const { return q_card_; }
    std::size_t x1_card() const { return x1_card_; }
    std::size_t x2_card() const { return x2_card_; }
    std::span<const double> p_q() const { return p_q_; }
    const Kernel& x1() const { return x1_; }
    const Kernel& x2() const { return x2_; }

private:
    std::size_t q_card_, x1_card_, x2_card_;
    std::vector<double> p_q_;
    Kernel x1_;
    Kernel x2_;
};

// a_k = H(Y|Tj,TT1,TT2,Q), b_1 = H(TT1|Q), b_2 = H(TT2|Q), c_k = H(Y|Q),
// d_k = H(Y|Tk,TT1,TT2,Q), f_k = H(Y|T1,T2,TT1,TT2,Q); TT1 = S2*T1, TT2 = S1*T2.
struct Theorem2Constants {
    std::array<double, 2> a{};
    std::array<double, 2> b{};
    std::array<double, 2> c{};
    std::array<double, 2> d{};
    std::array<double, 2> f{};
};

Theorem2Constants theorem2_constants(const InjectiveDetIc& channel,
                                     const DetIfInputDistribution& d,
                                     const FeedbackStateSpec& fb,
                                     std::size_t cell_cap = kDefaultCellCap);

LinearRateSystem theorem2_system(const Theorem2Constants& c, bool side_constraints = true);

RateRegion inner_region_det_if(const InjectiveDetIc& channel, const DetIfInputDistribution& d,
                               const FeedbackStateSpec& fb, const RegionOptions& options = {});

} // namespace icfb
