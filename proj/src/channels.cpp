#include "icfb/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace icfb {

BitVector shift_apply(int q, int n, std::span<const std::uint8_t> x)
{
    if (q < 1)
        throw std::invalid_argument("shift_apply: q must be positive");
    if (n < 0 || n > q)
        throw std::invalid_argument("shift_apply: n must lie in [0, q]");
    if (x.size() != static_cast<std::size_t>(q))
        throw std::invalid_argument("shift_apply: vector length must equal q");
    BitVector out(static_cast<std::size_t>(q), 0);
    const int shift = q - n;
    for (int i = shift; i < q; ++i)
        out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - shift)] & 1u;
    return out;
}

BitVector xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("xor_bits: length mismatch");
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (a[i] ^ b[i]) & 1u;
    return out;
}

std::size_t bits_to_index(std::span<const std::uint8_t> bits)
{
    std::size_t v = 0;
    for (auto b : bits)
        v = (v << 1) | (b & 1u);
    return v;
}

BitVector index_to_bits(std::size_t index, int q)
{
    BitVector out(static_cast<std::size_t>(q));
    for (int i = q - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = index & 1u;
        index >>= 1;
    }
    return out;
}

void LdicParams::validate() const
{
    if (q < 1 || q > 16)
        throw std::invalid_argument("ldic: q must lie in [1, 16]");
    for (int n : {n11, n12, n21, n22}) {
        if (n < 0 || n > q)
            throw std::invalid_argument("ldic: every gain must lie in [0, q]");
    }
}

FeedbackStateSpec::FeedbackStateSpec(std::array<std::array<double, 2>, 2> cells)
    : cells_(cells)
{
    double total = 0.0;
    for (const auto& row : cells_) {
        for (double c : row) {
            if (!(c >= 0.0))
                throw std::invalid_argument("feedback state law has a negative cell");
            total += c;
        }
    }
    if (std::abs(total - 1.0) > kPmfTolerance)
        throw std::invalid_argument("feedback state law does not sum to 1");
}

FeedbackStateSpec FeedbackStateSpec::independent(double p1, double p2)
{
    return correlated(p1, p2, 0.0);
}

FeedbackStateSpec FeedbackStateSpec::correlated(double p1, double p2, double rho)
{
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
        throw std::invalid_argument("feedback probabilities must lie in [0, 1]");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("state correlation must lie in [-1, 1]");
    double both = p1 * p2 + rho * std::sqrt(p1 * (1 - p1) * p2 * (1 - p2));
    double lo = std::max(0.0, p1 + p2 - 1.0);
    double hi = std::min(p1, p2);
    if (both < lo - 1e-12 || both > hi + 1e-12)
        throw std::invalid_argument("state correlation infeasible for the given marginals");
    both = std::clamp(both, lo, hi);
    std::array<std::array<double, 2>, 2> cells{};
    cells[1][1] = both;
    cells[1][0] = p1 - both;
    cells[0][1] = p2 - both;
    cells[0][0] = 1.0 - p1 - p2 + both;
    for (auto& row : cells) {
        for (double& c : row)
            c = std::max(c, 0.0);
    }
    return FeedbackStateSpec(cells);
}

IcGfChannel::IcGfChannel(Alphabets a, std::vector<double> weights)
    : alphabets_(a)
    , weights_(std::move(weights))
{
    for (std::size_t n : {a.x1, a.x2, a.y1, a.y2, a.y3, a.y4}) {
        if (n == 0)
            throw std::invalid_argument("channel alphabets must be nonempty");
    }
    const std::size_t rows = a.x1 * a.x2;
    const std::size_t width = a.y1 * a.y2 * a.y3 * a.y4;
    if (weights_.size() != rows * width)
        throw std::invalid_argument("channel weight count does not match alphabets");
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < width; ++c) {
            double w = weights_[r * width + c];
            if (!(w >= 0.0))
                throw std::invalid_argument("channel has a negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > kPmfTolerance)
            throw std::invalid_argument("channel row " + std::to_string(r) +
                                        " does not sum to 1");
    }
}

double IcGfChannel::weight(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2,
                           std::size_t y3, std::size_t y4) const
{
    const auto& a = alphabets_;
    std::size_t idx = ((((x1 * a.x2 + x2) * a.y1 + y1) * a.y2 + y2) * a.y3 + y3) * a.y4 + y4;
    return weights_.at(idx);
}

Kernel IcGfChannel::as_kernel() const
{
    const auto& a = alphabets_;
    return Kernel({{"X1", a.x1}, {"X2", a.x2}},
                  {{"Y1", a.y1}, {"Y2", a.y2}, {"Y3", a.y3}, {"Y4", a.y4}}, weights_);
}

void InjectiveDetIc::validate_tables() const
{
    auto in_range = [](const std::vector<std::size_t>& table, std::size_t size,
                       std::size_t card, const char* name) {
        if (table.size() != size)
            throw std::invalid_argument(std::string("deterministic channel: table '") +
                                        name + "' has wrong size");
        for (auto v : table) {
            if (v >= card)
                throw std::invalid_argument(std::string("deterministic channel: table '") +
                                            name + "' maps outside its alphabet");
        }
    };
    for (std::size_t n : {x1_card, x2_card, t1_card, t2_card, y3_card, y4_card}) {
        if (n == 0)
            throw std::invalid_argument("deterministic channel: empty alphabet");
    }
    in_range(t1, x1_card, t1_card, "t1");
    in_range(t2, x2_card, t2_card, "t2");
    in_range(f3, x1_card * t2_card, y3_card, "f3");
    in_range(f4, x2_card * t1_card, y4_card, "f4");
}

InjectiveDetIc ldic_build(const LdicParams& p)
{
    p.validate();
    const std::size_t size = std::size_t{1} << p.q;
    InjectiveDetIc c;
    c.x1_card = c.x2_card = c.t1_card = c.t2_card = c.y3_card = c.y4_card = size;
    c.t1.resize(size);
    c.t2.resize(size);
    c.f3.resize(size * size);
    c.f4.resize(size * size);
    for (std::size_t x = 0; x < size; ++x) {
        BitVector bits = index_to_bits(x, p.q);
        c.t1[x] = bits_to_index(shift_apply(p.q, p.n21, bits));
        c.t2[x] = bits_to_index(shift_apply(p.q, p.n12, bits));
        BitVector direct1 = shift_apply(p.q, p.n11, bits);
        BitVector direct2 = shift_apply(p.q, p.n22, bits);
        for (std::size_t t = 0; t < size; ++t) {
            BitVector tb = index_to_bits(t, p.q);
            c.f3[x * size + t] = bits_to_index(xor_bits(direct1, tb));
            c.f4[x * size + t] = bits_to_index(xor_bits(direct2, tb));
        }
    }
    if (!injectivity_check(c))
        throw std::logic_error("ldic_build produced a non-injective channel");
    return c;
}

bool injectivity_check(const InjectiveDetIc& c)
{
    c.validate_tables();
    auto injective = [](const std::vector<std::size_t>& f, std::size_t outer,
                        std::size_t inner, std::size_t out_card) {
        std::vector<char> seen(out_card);
        for (std::size_t x = 0; x < outer; ++x) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t t = 0; t < inner; ++t) {
                std::size_t y = f[x * inner + t];
                if (seen[y])
                    return false;
                seen[y] = 1;
            }
        }
        return true;
    };
    return injective(c.f3, c.x1_card, c.t2_card, c.y3_card) &&
           injective(c.f4, c.x2_card, c.t1_card, c.y4_card);
}

IcGfChannel det_to_icgf(const InjectiveDetIc& c, const FeedbackStateSpec& fb)
{
    if (!injectivity_check(c))
        throw std::invalid_argument("det_to_icgf: channel is not injective");
    IcGfChannel::Alphabets a;
    a.x1 = c.x1_card;
    a.x2 = c.x2_card;
    a.y1 = c.t2_card + 1;
    a.y2 = c.t1_card + 1;
    a.y3 = c.y3_card;
    a.y4 = c.y4_card;
    const std::size_t width = a.y1 * a.y2 * a.y3 * a.y4;
    std::vector<double> w(a.x1 * a.x2 * width, 0.0);
    for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
        for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
            const std::size_t y3 = c.y3(x1, x2);
            const std::size_t y4 = c.y4(x1, x2);
            for (int s1 = 0; s1 < 2; ++s1) {
                for (int s2 = 0; s2 < 2; ++s2) {
                    double p = fb.cells()[s1][s2];
                    std::size_t y1 = s1 ? c.t2[x2] : c.t2_card;
                    std::size_t y2 = s2 ? c.t1[x1] : c.t1_card;
                    std::size_t col = ((y1 * a.y2 + y2) * a.y3 + y3) * a.y4 + y4;
                    w[(x1 * a.x2 + x2) * width + col] += p;
                }
            }
        }
    }
    return IcGfChannel(a, std::move(w));
}

} // namespace icfb
