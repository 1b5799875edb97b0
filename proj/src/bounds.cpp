#include "icfb/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace icfb {

namespace {

Kernel pair_given_q(std::size_t q, const char* u, std::size_t u_card, const char* x,
                    std::size_t x_card, std::vector<double> rows)
{
    return Kernel({{"Q", q}}, {{u, u_card}, {x, x_card}}, std::move(rows));
}

Kernel compression_kernel(const char* v, std::size_t v_card, const char* u, std::size_t u_card,
                          const char* y, std::size_t y_card, std::size_t q,
                          std::vector<double> rows)
{
    return Kernel({{u, u_card}, {y, y_card}, {"Q", q}}, {{v, v_card}}, std::move(rows));
}

std::vector<double> checked_pmf(std::vector<double> p, std::size_t card, const char* what)
{
    if (p.size() != card)
        throw std::invalid_argument(std::string(what) + " has the wrong length");
    Kernel({}, {{"_", card}}, p);
    return p;
}

std::vector<double> constant_rows(std::size_t rows)
{
    return std::vector<double>(rows, 1.0);
}

} // namespace

GfInputDistribution::GfInputDistribution(Cards cards, std::vector<double> p_q,
                                         std::vector<double> u1x1, std::vector<double> u2x2,
                                         std::vector<double> v1, std::vector<double> v2)
    : cards_(cards)
    , p_q_(checked_pmf(std::move(p_q), cards.q, "P_Q"))
    , u1x1_(pair_given_q(cards.q, "U1", cards.u1, "X1", cards.x1, std::move(u1x1)))
    , u2x2_(pair_given_q(cards.q, "U2", cards.u2, "X2", cards.x2, std::move(u2x2)))
    , v1_(compression_kernel("V1", cards.v1, "U1", cards.u1, "Y1", cards.y1, cards.q,
                             std::move(v1)))
    , v2_(compression_kernel("V2", cards.v2, "U2", cards.u2, "Y2", cards.y2, cards.q,
                             std::move(v2)))
{
}

GfInputDistribution GfInputDistribution::independent_inputs(std::vector<double> px1,
                                                            std::vector<double> px2,
                                                            std::size_t y1_card,
                                                            std::size_t y2_card)
{
    Cards c;
    c.x1 = px1.size();
    c.x2 = px2.size();
    c.y1 = y1_card;
    c.y2 = y2_card;
    return GfInputDistribution(c, {1.0}, std::move(px1), std::move(px2), constant_rows(y1_card),
                               constant_rows(y2_card));
}

bool GfInputDistribution::compatible_with(const IcGfChannel& channel) const
{
    const auto& a = channel.alphabets();
    return a.x1 == cards_.x1 && a.x2 == cards_.x2 && a.y1 == cards_.y1 && a.y2 == cards_.y2;
}

JointPmf build_gf_joint(const GfInputDistribution& d, const IcGfChannel& channel,
                        std::size_t cell_cap)
{
    if (!d.compatible_with(channel))
        throw std::invalid_argument("input distribution alphabets do not match the channel");
    std::vector<double> pq(d.p_q().begin(), d.p_q().end());
    JointPmf joint({{"Q", d.cards().q}}, std::move(pq), cell_cap);
    joint = extend(joint, d.u1x1(), cell_cap);
    joint = extend(joint, d.u2x2(), cell_cap);
    joint = extend(joint, channel.as_kernel(), cell_cap);
    joint = extend(joint, d.v1(), cell_cap);
    joint = extend(joint, d.v2(), cell_cap);
    return joint;
}

Theorem1Constants theorem1_constants(const GfInputDistribution& d, const IcGfChannel& channel,
                                     std::size_t cell_cap)
{
    const JointPmf joint = build_gf_joint(d, channel, cell_cap);
    const InformationCalculator info(joint);

    Theorem1Constants c;
    for (int k = 0; k < 2; ++k) {
        const std::string uk = k == 0 ? "U1" : "U2";
        const std::string vk = k == 0 ? "V1" : "V2";
        const std::string xk = k == 0 ? "X1" : "X2";
        const std::string yk = k == 0 ? "Y1" : "Y2";
        const std::string out = k == 0 ? "Y3" : "Y4";
        const std::string uj = k == 0 ? "U2" : "U1";
        const std::string vj = k == 0 ? "V2" : "V1";

        c.A[k] = info.mutual_information({uk, vk, xk}, {out, uj, vj}, {"Q"});
        c.B[k] = info.mutual_information({"U1", "V1", "U2", "V2", xk}, {out}, {"Q"});
        c.C[k] = info.mutual_information({uj, vj}, {uk, vk, xk}, {"Q"});
        c.D[k] = info.mutual_information({uj, vj, xk}, {out}, {uk, vk, "Q"});
        c.E[k] = info.mutual_information({uk, vk, xk}, {out}, {uj, vj, "Q"});
        c.F[k] = info.mutual_information({xk}, {out}, {"U1", "V1", "U2", "V2", "Q"});
        c.G[k] = info.mutual_information({vk}, {yk}, {uk, "Q"});
    }
    return c;
}

LinearRateSystem theorem1_system(const Theorem1Constants& c, bool side_constraints)
{
    LinearRateSystem s({"R1", "R2", "R10", "R20"});
    const Rational one(1), minus(-1);
    for (int k = 0; k < 2; ++k) {
        const int j = 1 - k;
        const std::string rk = k == 0 ? "R1" : "R2";
        const std::string rk0 = k == 0 ? "R10" : "R20";
        const std::string rj0 = k == 0 ? "R20" : "R10";
        const double A = c.A[k], B = c.B[k], C = c.C[k], D = c.D[k], E = c.E[k], F = c.F[k];
        const double Gk = c.G[k], Gj = c.G[j];

        s.add_le({{rk, one}}, A - Gk);
        s.add_le({{rk, one}, {rj0, one}}, B + C - Gk - Gj);
        s.add_le({{rk, one}, {rk0, minus}, {rj0, one}}, B - Gk + C - Gj);
        s.add_le({{rk, one}, {rk0, minus}, {rj0, one}}, D + C - Gj);
        s.add_le({{rk, one}, {rk0, minus}}, E + C - Gk - Gj);
        s.add_le({{rk, one}, {rk0, minus}}, D + C - Gk - Gj);
        s.add_le({{rk, one}, {rk0, minus}}, F + C);
    }
    s.add_ge({{"R10", one}}, 0.0);
    s.add_ge({{"R20", one}}, 0.0);
    if (side_constraints) {
        s.add_le({{"R10", one}, {"R1", minus}}, 0.0);
        s.add_le({{"R20", one}, {"R2", minus}}, 0.0);
    }
    return s;
}

LinearRateSystem schemeV_system(const Theorem1Constants& c)
{
    LinearRateSystem s({"R1", "R2", "Rhat1", "Rhat2", "R11", "R22", "R10", "R20"});
    const Rational one(1), minus(-1);
    for (int k = 0; k < 2; ++k) {
        const std::string rkk = k == 0 ? "R11" : "R22";
        const std::string rk0 = k == 0 ? "R10" : "R20";
        const std::string rj0 = k == 0 ? "R20" : "R10";
        const std::string hk = k == 0 ? "Rhat1" : "Rhat2";
        const std::string hj = k == 0 ? "Rhat2" : "Rhat1";
        const double A = c.A[k], B = c.B[k], C = c.C[k], D = c.D[k], E = c.E[k], F = c.F[k];

        // Covering condition for the compression index.
        s.add_ge({{hk, one}}, c.G[k]);
        // Decoding: first constraint group.
        s.add_le({{rkk, one}, {rk0, one}, {hk, one}}, A);
        s.add_le({{rkk, one}, {rk0, one}, {hk, one}, {hj, one}}, B + C);
        s.add_le({{rkk, one}, {rk0, one}, {rj0, one}, {hk, one}, {hj, one}}, B + C);
        // Decoding: second constraint group.
        s.add_le({{rkk, one}}, F + C);
        s.add_le({{rkk, one}, {rj0, one}, {hj, one}}, D + C);
        s.add_le({{rkk, one}, {hk, one}, {hj, one}}, E + C);
        s.add_le({{rkk, one}, {hk, one}, {hj, one}}, D + C);
        s.add_le({{rkk, one}, {rj0, one}, {hk, one}, {hj, one}}, B + C);
    }
    for (const char* v : {"R1", "R2", "Rhat1", "Rhat2", "R11", "R22", "R10", "R20"})
        s.add_ge({{v, one}}, 0.0);
    // Rate splitting Rk = Rk0 + Rkk.
    s.add_le({{"R1", one}, {"R10", minus}, {"R11", minus}}, 0.0);
    s.add_ge({{"R1", one}, {"R10", minus}, {"R11", minus}}, 0.0);
    s.add_le({{"R2", one}, {"R20", minus}, {"R22", minus}}, 0.0);
    s.add_ge({{"R2", one}, {"R20", minus}, {"R22", minus}}, 0.0);
    return s;
}

RateCaps caps_for(std::size_t x1_card, std::size_t x2_card, double margin)
{
    if (margin < 0.0)
        throw std::invalid_argument("cap margin must be nonnegative");
    return {std::log2(static_cast<double>(x1_card)) * (1.0 + margin),
            std::log2(static_cast<double>(x2_card)) * (1.0 + margin)};
}

RateRegion inner_region_gf(const GfInputDistribution& d, const IcGfChannel& channel,
                           const RegionOptions& options)
{
    auto c = theorem1_constants(d, channel, options.cell_cap);
    const auto& a = channel.alphabets();
    return project_to_rate_plane(theorem1_system(c, options.side_constraints),
                                 caps_for(a.x1, a.x2, options.cap_margin));
}

RateRegion schemeV_region(const GfInputDistribution& d, const IcGfChannel& channel,
                          const RegionOptions& options)
{
    auto c = theorem1_constants(d, channel, options.cell_cap);
    const auto& a = channel.alphabets();
    return project_to_rate_plane(schemeV_system(c), caps_for(a.x1, a.x2, options.cap_margin));
}

DetIfInputDistribution::DetIfInputDistribution(std::size_t q_card, std::size_t x1_card,
                                               std::size_t x2_card, std::vector<double> p_q,
                                               std::vector<double> x1_given_q,
                                               std::vector<double> x2_given_q)
    : q_card_(q_card)
    , x1_card_(x1_card)
    , x2_card_(x2_card)
    , p_q_(checked_pmf(std::move(p_q), q_card, "P_Q"))
    , x1_({{"Q", q_card}}, {{"X1", x1_card}}, std::move(x1_given_q))
    , x2_({{"Q", q_card}}, {{"X2", x2_card}}, std::move(x2_given_q))
{
}

DetIfInputDistribution DetIfInputDistribution::product(std::vector<double> px1,
                                                       std::vector<double> px2)
{
    std::size_t n1 = px1.size(), n2 = px2.size();
    return DetIfInputDistribution(1, n1, n2, {1.0}, std::move(px1), std::move(px2));
}

DetIfInputDistribution DetIfInputDistribution::uniform(std::size_t x1_card, std::size_t x2_card)
{
    return product(std::vector<double>(x1_card, 1.0 / static_cast<double>(x1_card)),
                   std::vector<double>(x2_card, 1.0 / static_cast<double>(x2_card)));
}

Theorem2Constants theorem2_constants(const InjectiveDetIc& channel,
                                     const DetIfInputDistribution& d,
                                     const FeedbackStateSpec& fb, std::size_t cell_cap)
{
    if (!injectivity_check(channel))
        throw std::invalid_argument("theorem 2 requires an injective deterministic channel");
    if (d.x1_card() != channel.x1_card || d.x2_card() != channel.x2_card)
        throw std::invalid_argument("input distribution alphabets do not match the channel");

    std::vector<double> pq(d.p_q().begin(), d.p_q().end());
    JointPmf base({{"Q", d.q_card()}}, std::move(pq), cell_cap);
    base = extend(base, d.x1(), cell_cap);
    base = extend(base, d.x2(), cell_cap);
    const auto& cells = fb.cells();
    base = extend(base,
                  Kernel({}, {{"S1", 2}, {"S2", 2}},
                         {cells[0][0], cells[0][1], cells[1][0], cells[1][1]}),
                  cell_cap);

    const std::size_t t1c = channel.t1_card, t2c = channel.t2_card;
    Theorem2Constants c;
    for (int k = 0; k < 2; ++k) {
        const std::size_t ycard = k == 0 ? channel.y3_card : channel.y4_card;
        // base order: Q, X1, X2, S1, S2
        JointPmf joint = pushforward(
            base,
            {{"Q", d.q_card()}, {"T1", t1c}, {"T2", t2c}, {"TT1", t1c + 1}, {"TT2", t2c + 1},
             {"Y", ycard}},
            [&](std::span<const std::size_t> in, std::span<std::size_t> out) {
                const std::size_t x1 = in[1], x2 = in[2];
                const bool s1_on = in[3] == 1, s2_on = in[4] == 1;
                const std::size_t t1 = channel.t1[x1], t2 = channel.t2[x2];
                out[0] = in[0];
                out[1] = t1;
                out[2] = t2;
                out[3] = s2_on ? t1 : t1c;
                out[4] = s1_on ? t2 : t2c;
                out[5] = k == 0 ? channel.y3(x1, x2) : channel.y4(x1, x2);
            },
            cell_cap);
        const InformationCalculator info(joint);
        const std::string tk = k == 0 ? "T1" : "T2";
        const std::string tj = k == 0 ? "T2" : "T1";
        c.a[k] = info.entropy({"Y"}, {tj, "TT1", "TT2", "Q"});
        c.c[k] = info.entropy({"Y"}, {"Q"});
        c.d[k] = info.entropy({"Y"}, {tk, "TT1", "TT2", "Q"});
        c.f[k] = info.entropy({"Y"}, {"T1", "T2", "TT1", "TT2", "Q"});
        if (k == 0) {
            c.b[0] = info.entropy({"TT1"}, {"Q"});
            c.b[1] = info.entropy({"TT2"}, {"Q"});
        }
    }
    return c;
}

LinearRateSystem theorem2_system(const Theorem2Constants& c, bool side_constraints)
{
    LinearRateSystem s({"R1", "R2", "R10", "R20"});
    const Rational one(1), minus(-1);
    const double b1 = c.b[0], b2 = c.b[1];

    // User 1.
    s.add_le({{"R1", one}}, c.a[0] + b1);
    s.add_le({{"R1", one}, {"R20", one}}, c.c[0]);
    s.add_le({{"R1", one}, {"R10", minus}, {"R20", one}}, c.c[0]);
    s.add_le({{"R1", one}, {"R10", minus}, {"R20", one}}, c.d[0] + b2);
    s.add_le({{"R1", one}, {"R10", minus}}, c.a[0]);
    s.add_le({{"R1", one}, {"R10", minus}}, c.d[0]);
    s.add_le({{"R1", one}, {"R10", minus}}, c.f[0] + b1 + b2);
    // User 2, as displayed: the H(TT2|Q) and H(TT1|Q) roles swap.
    s.add_le({{"R2", one}}, c.a[1] + b2);
    s.add_le({{"R2", one}, {"R10", one}}, c.c[1]);
    s.add_le({{"R2", one}, {"R20", minus}, {"R10", one}}, c.c[1]);
    s.add_le({{"R2", one}, {"R20", minus}, {"R10", one}}, c.d[1] + b1);
    s.add_le({{"R2", one}, {"R20", minus}}, c.a[1]);
    s.add_le({{"R2", one}, {"R20", minus}}, c.d[1]);
    s.add_le({{"R2", one}, {"R20", minus}}, c.f[1] + b1 + b2);

    s.add_ge({{"R10", one}}, 0.0);
    s.add_ge({{"R20", one}}, 0.0);
    if (side_constraints) {
        s.add_le({{"R10", one}, {"R1", minus}}, 0.0);
        s.add_le({{"R20", one}, {"R2", minus}}, 0.0);
    }
    return s;
}

RateRegion inner_region_det_if(const InjectiveDetIc& channel, const DetIfInputDistribution& d,
                               const FeedbackStateSpec& fb, const RegionOptions& options)
{
    auto c = theorem2_constants(channel, d, fb, options.cell_cap);
    return project_to_rate_plane(theorem2_system(c, options.side_constraints),
                                 caps_for(channel.x1_card, channel.x2_card, options.cap_margin));
}

} // namespace icfb
