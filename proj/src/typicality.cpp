#include "icfb/typicality.hpp"

#include <cmath>
#include <stdexcept>

namespace icfb {

namespace {
// Guards the count bounds against n*p landing a hair off an integer.
constexpr double kSlack = 1e-9;
}

TypicalityTest::TypicalityTest(std::vector<double> pmf, double eps)
    : pmf_(std::move(pmf)), eps_(eps)
{
    if (pmf_.empty()) throw std::invalid_argument("typicality pmf is empty");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("typicality slack must be positive");
    double sum = 0.0;
    for (double p : pmf_) {
        if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("typicality pmf entry out of [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("typicality pmf does not sum to 1");
}

std::size_t TypicalityTest::lo(std::size_t a, std::size_t n) const
{
    const double p = pmf_.at(a);
    if (p == 0.0) return 0;
    const double tol = eps_ * p + eps_ / static_cast<double>(pmf_.size());
    const double v = std::ceil(static_cast<double>(n) * (p - tol) - kSlack);
    return v <= 0.0 ? 0 : static_cast<std::size_t>(v);
}

std::size_t TypicalityTest::hi(std::size_t a, std::size_t n) const
{
    const double p = pmf_.at(a);
    if (p == 0.0) return 0;
    const double tol = eps_ * p + eps_ / static_cast<double>(pmf_.size());
    const double v = std::floor(static_cast<double>(n) * (p + tol) + kSlack);
    return v >= static_cast<double>(n) ? n : static_cast<std::size_t>(v);
}

bool TypicalityTest::typical_counts(std::span<const std::size_t> counts, std::size_t n) const
{
    if (counts.size() != pmf_.size()) throw std::invalid_argument("count vector size mismatch");
    for (std::size_t a = 0; a < counts.size(); ++a)
        if (counts[a] < lo(a, n) || counts[a] > hi(a, n)) return false;
    return true;
}

TypicalityTest::Bounds TypicalityTest::bounds(std::size_t n) const
{
    Bounds b;
    b.n = n;
    for (std::size_t a = 0; a < pmf_.size(); ++a) {
        b.lo.push_back(lo(a, n));
        b.hi.push_back(hi(a, n));
    }
    return b;
}

bool TypicalityTest::typical(std::span<const std::size_t> letters) const
{
    std::vector<std::size_t> counts(pmf_.size(), 0);
    for (std::size_t x : letters) {
        if (x >= counts.size()) throw std::out_of_range("letter outside the typicality alphabet");
        ++counts[x];
    }
    return typical_counts(counts, letters.size());
}

} // namespace icfb
