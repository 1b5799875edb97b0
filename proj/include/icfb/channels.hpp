#pragma once

// Channel models: the generic two-user interference channel with generalized
// feedback, injective deterministic channels, the linear deterministic
// shift-matrix channel and the intermittent-feedback state law.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icfb/probability.hpp"

namespace icfb {

// Bit vectors are stored most-significant bit first: index 0 is the top level.
using BitVector = std::vector<std::uint8_t>;

// H^(q-n) x: the top n bits of x land in the bottom n positions, zeros above.
BitVector shift_apply(int q, int n, std::span<const std::uint8_t> x);

BitVector xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

std::size_t bits_to_index(std::span<const std::uint8_t> bits);
BitVector index_to_bits(std::size_t index, int q);

struct LdicParams {
    int q = 1;
    int n11 = 0;
    int n12 = 0;
    int n21 = 0;
    int n22 = 0;

    void validate() const;
    bool operator==(const LdicParams&) const = default;
};

enum class LinkState : std::uint8_t { erased = 0, on = 1 };

// Joint law of the two feedback link states (S1, S2).
class FeedbackStateSpec {
public:
    // cells[s1][s2] with index 1 = on, 0 = erased.
    explicit FeedbackStateSpec(std::array<std::array<double, 2>, 2> cells);

    static FeedbackStateSpec independent(double p1, double p2);
    // Correlation coefficient `rho` between the on-indicators.
    static FeedbackStateSpec correlated(double p1, double p2, double rho);

    double p1() const { return cells_[1][0] + cells_[1][1]; }
    double p2() const { return cells_[0][1] + cells_[1][1]; }
    double cell(LinkState s1, LinkState s2) const
    {
        return cells_[static_cast<int>(s1)][static_cast<int>(s2)];
    }
    const std::array<std::array<double, 2>, 2>& cells() const { return cells_; }

private:
    std::array<std::array<double, 2>, 2> cells_;
};

// W(y1,y2,y3,y4 | x1,x2) stored row-major over (x1,x2,y1,y2,y3,y4).
class IcGfChannel {
public:
    struct Alphabets {
        std::size_t x1 = 1, x2 = 1, y1 = 1, y2 = 1, y3 = 1, y4 = 1;
        bool operator==(const Alphabets&) const = default;
    };

    IcGfChannel(Alphabets alphabets, std::vector<double> weights);

    const Alphabets& alphabets() const { return alphabets_; }
    std::span<const double> weights() const { return weights_; }
    double weight(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2,
                  std::size_t y3, std::size_t y4) const;

    // Kernel with inputs {X1, X2} and outputs {Y1, Y2, Y3, Y4}.
    Kernel as_kernel() const;

private:
    Alphabets alphabets_;
    std::vector<double> weights_;
};

// Y3 = f3(X1, t2(X2)), Y4 = f4(X2, t1(X1)), all maps stored as lookup tables.
struct InjectiveDetIc {
    std::size_t x1_card = 1, x2_card = 1;
    std::size_t t1_card = 1, t2_card = 1;
    std::size_t y3_card = 1, y4_card = 1;
    std::vector<std::size_t> t1;  // x1 -> t1
    std::vector<std::size_t> t2;  // x2 -> t2
    std::vector<std::size_t> f3;  // x1 * t2_card + t2 -> y3
    std::vector<std::size_t> f4;  // x2 * t1_card + t1 -> y4

    std::size_t y3(std::size_t x1, std::size_t x2) const { return f3[x1 * t2_card + t2[x2]]; }
    std::size_t y4(std::size_t x1, std::size_t x2) const { return f4[x2 * t1_card + t1[x1]]; }

    // Table sizes and ranges; does not check injectivity.
    void validate_tables() const;
};

InjectiveDetIc ldic_build(const LdicParams& params);

bool injectivity_check(const InjectiveDetIc& channel);

// Y1 = S1*t2(X2), Y2 = S2*t1(X1); the erasure symbol is the last letter of the
// feedback alphabets (index t2_card resp. t1_card).
IcGfChannel det_to_icgf(const InjectiveDetIc& channel, const FeedbackStateSpec& fb);

} // namespace icfb
