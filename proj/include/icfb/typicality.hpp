#pragma once

// Strong (robust) typicality: every letter a of the joint alphabet must have
// |N(a)/n - p(a)| <= eps*p(a) + eps/|A|, and letters with p(a) = 0 must not occur.

#include <cstddef>
#include <span>
#include <vector>

namespace icfb {

class TypicalityTest {
public:
    TypicalityTest(std::vector<double> pmf, double eps);

    std::size_t size() const { return pmf_.size(); }
    double epsilon() const { return eps_; }
    const std::vector<double>& pmf() const { return pmf_; }

    // Admissible count range [lo, hi] for letter a at length n; lo > hi means
    // no count is admissible.
    std::size_t lo(std::size_t a, std::size_t n) const;
    std::size_t hi(std::size_t a, std::size_t n) const;

    bool typical_counts(std::span<const std::size_t> counts, std::size_t n) const;

    // lo/hi for every letter at a fixed length, for hot loops.
    struct Bounds {
        std::size_t n = 0;
        std::vector<std::size_t> lo, hi;

        bool within(std::span<const std::size_t> counts) const
        {
            for (std::size_t a = 0; a < counts.size(); ++a)
                if (counts[a] < lo[a] || counts[a] > hi[a]) return false;
            return true;
        }
    };
    Bounds bounds(std::size_t n) const;
    // Sequence of flat letters.
    bool typical(std::span<const std::size_t> letters) const;

private:
    std::vector<double> pmf_;
    double eps_;
};

} // namespace icfb
