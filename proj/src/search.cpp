#include "icfb/search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "icfb/errors.hpp"
#include "icfb/parallel.hpp"

namespace icfb {

namespace {

void compositions(std::size_t k, int remaining, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out)
{
    if (cur.size() + 1 == k) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur.push_back(v);
        compositions(k, remaining - v, cur, out);
        cur.pop_back();
    }
}

// Sizes of the free rows; each row is a pmf on row_dims[i] letters.
struct Layout {
    std::vector<std::size_t> row_dims;
};

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t limit)
{
    if (a == 0 || b == 0) return 0;
    if (a > limit / b) return limit + 1;
    return a * b;
}

// Enumerates every combination of grid points over the rows, calling fn with
// the concatenated rows.
template <class Fn>
void for_each_grid(const Layout& layout, int resolution, std::size_t cap, Fn&& fn)
{
    std::vector<std::vector<std::vector<double>>> grids;
    std::size_t total = 1;
    for (std::size_t dim : layout.row_dims) {
        grids.push_back(simplex_grid(dim, resolution));
        total = saturating_mul(total, grids.back().size(), cap);
    }
    if (total > cap)
        throw ResourceLimitError("grid family exceeds " + std::to_string(cap) +
                                 " distributions; lower --resolution");
    std::vector<std::size_t> idx(grids.size(), 0);
    std::vector<std::vector<double>> rows(grids.size());
    for (std::size_t n = 0; n < total; ++n) {
        for (std::size_t r = 0; r < grids.size(); ++r) rows[r] = grids[r][idx[r]];
        fn(rows);
        for (std::size_t r = grids.size(); r-- > 0;) {
            if (++idx[r] < grids[r].size()) break;
            idx[r] = 0;
        }
    }
}

std::vector<double> dirichlet_row(std::size_t k, std::mt19937_64& gen)
{
    std::vector<double> row(k);
    double sum = 0.0;
    for (auto& v : row) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v = -std::log1p(-u);
        sum += v;
    }
    if (sum <= 0.0) {
        std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(k));
        return row;
    }
    for (auto& v : row) v /= sum;
    // Push rounding residue into the largest entry so the row sums to 1.
    double s = 0.0;
    for (double v : row) s += v;
    auto it = std::max_element(row.begin(), row.end());
    *it += 1.0 - s;
    return row;
}

template <class Fn>
void for_each_random(const Layout& layout, std::size_t samples, std::uint64_t seed, Fn&& fn)
{
    std::mt19937_64 gen(seed);
    std::vector<std::vector<double>> rows(layout.row_dims.size());
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            rows[r] = dirichlet_row(layout.row_dims[r], gen);
        fn(rows);
    }
}

std::vector<double> concat(const std::vector<std::vector<double>>& rows, std::size_t from,
                           std::size_t count)
{
    std::vector<double> out;
    for (std::size_t r = from; r < from + count; ++r)
        out.insert(out.end(), rows[r].begin(), rows[r].end());
    return out;
}

std::vector<double> uniform_row(std::size_t k, std::size_t copies)
{
    return std::vector<double>(k * copies, 1.0 / static_cast<double>(k));
}

template <class Distribution, class Builder>
std::vector<Distribution> build_family(const Layout& layout, const SearchConfig& config,
                                       Distribution uniform, Builder&& build)
{
    std::vector<Distribution> family;
    if (config.uniform_only) {
        family.push_back(std::move(uniform));
        return family;
    }
    auto add = [&](const std::vector<std::vector<double>>& rows) {
        if (family.size() >= config.family_cap)
            throw ResourceLimitError("distribution family exceeds " +
                                     std::to_string(config.family_cap) + " members");
        family.push_back(build(rows));
    };
    if (config.grid_resolution > 0)
        for_each_grid(layout, config.grid_resolution, config.family_cap, add);
    if (config.samples > 0) for_each_random(layout, config.samples, config.seed, add);
    return family;
}

bool same_point(RatePoint a, RatePoint b)
{
    return std::abs(a.r1 - b.r1) <= 1e-9 && std::abs(a.r2 - b.r2) <= 1e-9;
}

template <class Distribution>
SearchResult<Distribution> assemble(const std::vector<Distribution>& family,
                                    const std::vector<std::optional<RateRegion>>& regions,
                                    RateCaps caps)
{
    std::vector<RatePoint> points;
    for (const auto& r : regions)
        if (r && !r->empty()) points.insert(points.end(), r->vertices().begin(), r->vertices().end());
    std::sort(points.begin(), points.end(), [](RatePoint a, RatePoint b) {
        return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
    });
    if (points.empty()) points.push_back({0.0, 0.0});
    RateRegion region = RateRegion::from_points(points, caps, true);

    std::vector<Witness<Distribution>> witnesses;
    for (const RatePoint& v : region.vertices()) {
        // Exact vertex first, then an axis projection of some vertex.
        std::optional<std::size_t> found;
        for (int pass = 0; pass < 2 && !found; ++pass) {
            for (std::size_t i = 0; i < regions.size() && !found; ++i) {
                if (!regions[i] || regions[i]->empty()) continue;
                for (const RatePoint& w : regions[i]->vertices()) {
                    const bool hit = pass == 0
                                         ? same_point(v, w)
                                         : same_point(v, {w.r1, 0.0}) ||
                                               same_point(v, {0.0, w.r2}) ||
                                               same_point(v, {0.0, 0.0});
                    if (hit) {
                        found = i;
                        break;
                    }
                }
            }
        }
        if (found) witnesses.push_back({family[*found], v, *found});
    }
    return {std::move(region), std::move(witnesses), family.size()};
}

} // namespace

std::vector<std::vector<double>> simplex_grid(std::size_t k, int resolution)
{
    if (k == 0) throw std::invalid_argument("simplex dimension must be positive");
    if (resolution <= 0) throw std::invalid_argument("grid resolution must be positive");
    std::vector<std::vector<int>> ints;
    std::vector<int> cur;
    compositions(k, resolution, cur, ints);
    std::vector<std::vector<double>> out;
    out.reserve(ints.size());
    for (const auto& c : ints) {
        std::vector<double> row(k);
        for (std::size_t i = 0; i < k; ++i)
            row[i] = static_cast<double>(c[i]) / static_cast<double>(resolution);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<DetIfInputDistribution> det_family(const InjectiveDetIc& channel,
                                               const SearchConfig& config)
{
    const std::size_t q = config.q_card, x1 = channel.x1_card, x2 = channel.x2_card;
    if (q == 0) throw std::invalid_argument("time-sharing cardinality must be positive");
    Layout layout;
    if (q > 1) layout.row_dims.push_back(q);
    for (std::size_t i = 0; i < q; ++i) layout.row_dims.push_back(x1);
    for (std::size_t i = 0; i < q; ++i) layout.row_dims.push_back(x2);
    const std::size_t off = q > 1 ? 1 : 0;
    return build_family(layout, config, DetIfInputDistribution::uniform(x1, x2),
                        [&](const std::vector<std::vector<double>>& rows) {
                            std::vector<double> pq = q > 1 ? rows[0] : std::vector<double>{1.0};
                            return DetIfInputDistribution(q, x1, x2, std::move(pq),
                                                          concat(rows, off, q),
                                                          concat(rows, off + q, q));
                        });
}

std::vector<GfInputDistribution> gf_family(const IcGfChannel& channel, const SearchConfig& config)
{
    const auto& a = channel.alphabets();
    GfInputDistribution::Cards c;
    c.q = config.q_card;
    c.u1 = c.u2 = config.u_card;
    c.v1 = c.v2 = config.v_card;
    c.x1 = a.x1;
    c.x2 = a.x2;
    c.y1 = a.y1;
    c.y2 = a.y2;
    if (c.q == 0 || c.u1 == 0 || c.v1 == 0)
        throw std::invalid_argument("auxiliary cardinalities must be positive");

    Layout layout;
    const bool free_q = c.q > 1;
    const bool free_v = c.v1 > 1;
    if (free_q) layout.row_dims.push_back(c.q);
    for (std::size_t i = 0; i < c.q; ++i) layout.row_dims.push_back(c.u1 * c.x1);
    for (std::size_t i = 0; i < c.q; ++i) layout.row_dims.push_back(c.u2 * c.x2);
    const std::size_t v1_rows = c.u1 * c.y1 * c.q, v2_rows = c.u2 * c.y2 * c.q;
    if (free_v) {
        for (std::size_t i = 0; i < v1_rows; ++i) layout.row_dims.push_back(c.v1);
        for (std::size_t i = 0; i < v2_rows; ++i) layout.row_dims.push_back(c.v2);
    }

    auto uniform = GfInputDistribution(c, uniform_row(c.q, 1), uniform_row(c.u1 * c.x1, c.q),
                                       uniform_row(c.u2 * c.x2, c.q), uniform_row(c.v1, v1_rows),
                                       uniform_row(c.v2, v2_rows));
    return build_family(layout, config, std::move(uniform),
                        [&](const std::vector<std::vector<double>>& rows) {
                            std::size_t at = 0;
                            std::vector<double> pq = free_q ? rows[at++] : std::vector<double>{1.0};
                            auto u1x1 = concat(rows, at, c.q);
                            at += c.q;
                            auto u2x2 = concat(rows, at, c.q);
                            at += c.q;
                            std::vector<double> v1, v2;
                            if (free_v) {
                                v1 = concat(rows, at, v1_rows);
                                at += v1_rows;
                                v2 = concat(rows, at, v2_rows);
                            } else {
                                v1.assign(v1_rows, 1.0);
                                v2.assign(v2_rows, 1.0);
                            }
                            return GfInputDistribution(c, std::move(pq), std::move(u1x1),
                                                       std::move(u2x2), std::move(v1),
                                                       std::move(v2));
                        });
}

SearchResult<DetIfInputDistribution> union_det(const InjectiveDetIc& channel,
                                               const FeedbackStateSpec& fb,
                                               const std::vector<DetIfInputDistribution>& family,
                                               const SearchConfig& config)
{
    if (family.empty()) throw std::invalid_argument("empty distribution family");
    std::vector<std::optional<RateRegion>> regions(family.size());
    parallel_for(family.size(), resolve_workers(config.workers), [&](std::size_t i) {
        regions[i] = inner_region_det_if(channel, family[i], fb, config.region);
    });
    return assemble(family, regions,
                    caps_for(channel.x1_card, channel.x2_card, config.region.cap_margin));
}

SearchResult<GfInputDistribution> union_gf(const IcGfChannel& channel,
                                           const std::vector<GfInputDistribution>& family,
                                           GfBound bound, const SearchConfig& config)
{
    if (family.empty()) throw std::invalid_argument("empty distribution family");
    for (const auto& d : family)
        if (!d.compatible_with(channel))
            throw std::invalid_argument("distribution alphabets do not match the channel");
    std::vector<std::optional<RateRegion>> regions(family.size());
    parallel_for(family.size(), resolve_workers(config.workers), [&](std::size_t i) {
        regions[i] = bound == GfBound::theorem1
                         ? inner_region_gf(family[i], channel, config.region)
                         : schemeV_region(family[i], channel, config.region);
    });
    const auto& a = channel.alphabets();
    return assemble(family, regions, caps_for(a.x1, a.x2, config.region.cap_margin));
}

SearchResult<DetIfInputDistribution> search_union_det(const InjectiveDetIc& channel,
                                                      const FeedbackStateSpec& fb,
                                                      const SearchConfig& config)
{
    return union_det(channel, fb, det_family(channel, config), config);
}

SearchResult<GfInputDistribution> search_union_gf(const IcGfChannel& channel, GfBound bound,
                                                  const SearchConfig& config)
{
    return union_gf(channel, gf_family(channel, config), bound, config);
}

} // namespace icfb
