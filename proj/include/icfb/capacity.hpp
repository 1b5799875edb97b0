#pragma once

// Closed-form capacity region of the linear deterministic interference
// channel with intermittent feedback.

#include <vector>

#include "icfb/channels.hpp"
#include "icfb/regions.hpp"

namespace icfb {

// The six capacity inequalities (min terms emitted as row pairs), before
// canonicalization. Useful for inspecting which row binds.
std::vector<HalfPlane> capacity_halfplanes(const LdicParams& params, double p1, double p2);

RateRegion capacity_region(const LdicParams& params, double p1, double p2);

struct SweepRow {
    double p1 = 0.0;
    double p2 = 0.0;
    double sum_rate = 0.0;
    std::vector<RatePoint> vertices;
};

// One row per (p1, p2) in the Cartesian grid, sorted by (p1, p2).
std::vector<SweepRow> capacity_sweep(const LdicParams& params, const std::vector<double>& p1_grid,
                                     const std::vector<double>& p2_grid);

} // namespace icfb
