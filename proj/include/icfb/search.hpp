#pragma once

// Union of per-distribution rate regions over families of input
// distributions (simplex grids, seeded Dirichlet samples, explicit lists).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "icfb/bounds.hpp"

namespace icfb {

struct SearchConfig {
    // Simplex grid step 1/grid_resolution on every free factor row; 0 disables.
    int grid_resolution = 4;
    // Dirichlet(1) samples appended after the grid.
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    // Family is the single all-uniform distribution.
    bool uniform_only = false;
    std::size_t q_card = 1;
    std::size_t u_card = 1;
    std::size_t v_card = 1;
    std::size_t family_cap = 250000;
    unsigned workers = 0;
    RegionOptions region;
};

template <class Distribution>
struct Witness {
    Distribution distribution;
    RatePoint vertex;
    std::size_t family_index = 0;
};

template <class Distribution>
struct SearchResult {
    RateRegion region;
    std::vector<Witness<Distribution>> witnesses;
    std::size_t evaluated = 0;
};

enum class GfBound { theorem1, schemeV };

std::vector<DetIfInputDistribution> det_family(const InjectiveDetIc& channel,
                                               const SearchConfig& config);
std::vector<GfInputDistribution> gf_family(const IcGfChannel& channel,
                                           const SearchConfig& config);

SearchResult<DetIfInputDistribution> union_det(const InjectiveDetIc& channel,
                                               const FeedbackStateSpec& fb,
                                               const std::vector<DetIfInputDistribution>& family,
                                               const SearchConfig& config);
SearchResult<GfInputDistribution> union_gf(const IcGfChannel& channel,
                                           const std::vector<GfInputDistribution>& family,
                                           GfBound bound, const SearchConfig& config);

SearchResult<DetIfInputDistribution> search_union_det(const InjectiveDetIc& channel,
                                                      const FeedbackStateSpec& fb,
                                                      const SearchConfig& config);
SearchResult<GfInputDistribution> search_union_gf(const IcGfChannel& channel, GfBound bound,
                                                  const SearchConfig& config);

// All points of the simplex {p in (1/r)Z^k : sum p = 1}, lexicographic.
std::vector<std::vector<double>> simplex_grid(std::size_t k, int resolution);

} // namespace icfb
