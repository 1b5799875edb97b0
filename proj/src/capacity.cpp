#include "icfb/capacity.hpp"

#include <algorithm>
#include <stdexcept>

namespace icfb {

namespace {

double pos(double x)
{
    return std::max(x, 0.0);
}

void check_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

} // namespace

std::vector<HalfPlane> capacity_halfplanes(const LdicParams& params, double p1, double p2)
{
    params.validate();
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    const double n11 = params.n11, n12 = params.n12, n21 = params.n21, n22 = params.n22;

    const double direct1 = std::max(n11, n12);
    const double direct2 = std::max(n22, n21);
    const double excess1 = pos(n11 - n21);
    const double excess2 = pos(n22 - n12);
    const double feedback1 = std::min(n12, excess1);
    const double feedback2 = std::min(n21, excess2);

    return {
        {1, 0, direct1},
        {1, 0, n11 + p2 * pos(n21 - n11)},
        {0, 1, direct2},
        {0, 1, n22 + p1 * pos(n12 - n22)},
        {1, 1, direct1 + excess2},
        {1, 1, direct2 + excess1},
        {1, 1, std::max(n12, excess1) + std::max(n21, excess2) + p1 * feedback1 + p2 * feedback2},
        {2, 1, direct1 + std::max(n21, excess2) + excess1 + p2 * feedback2},
        {1, 2, direct2 + std::max(n12, excess1) + excess2 + p1 * feedback1},
    };
}

RateRegion capacity_region(const LdicParams& params, double p1, double p2)
{
    const double cap = static_cast<double>(params.q);
    return RateRegion(capacity_halfplanes(params, p1, p2), {cap, cap});
}

std::vector<SweepRow> capacity_sweep(const LdicParams& params, const std::vector<double>& p1_grid,
                                     const std::vector<double>& p2_grid)
{
    if (p1_grid.empty() || p2_grid.empty())
        throw std::invalid_argument("capacity sweep needs a nonempty grid");
    std::vector<SweepRow> rows;
    for (double p1 : p1_grid) {
        for (double p2 : p2_grid) {
            RateRegion r = capacity_region(params, p1, p2);
            rows.push_back({p1, p2, max_weighted(r, 1.0, 1.0).value, r.vertices()});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.p1 < b.p1 || (a.p1 == b.p1 && a.p2 < b.p2);
    });
    return rows;
}

} // namespace icfb
