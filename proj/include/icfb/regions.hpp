#pragma once

// Linear inequality systems over rate variables, Fourier-Motzkin projection
// and two-dimensional rate regions.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "icfb/rational.hpp"

namespace icfb {

inline constexpr double kRegionTolerance = 1e-9;

// coeffs . vars <= bound
struct RateInequality {
    std::vector<Rational> coeffs;
    double bound = 0.0;
};

class LinearRateSystem {
public:
    using Term = std::pair<std::string, Rational>;

    LinearRateSystem() = default;
    explicit LinearRateSystem(std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<RateInequality>& rows() const { return rows_; }

    bool has(const std::string& var) const;
    std::size_t index_of(const std::string& var) const;

    void add_row(RateInequality row);
    // sum(terms) <= bound
    void add_le(const std::vector<Term>& terms, double bound);
    // sum(terms) >= bound
    void add_ge(const std::vector<Term>& terms, double bound);

    bool is_satisfied(std::span<const double> point, double tol = kRegionTolerance) const;

private:
    std::vector<std::string> variables_;
    std::vector<RateInequality> rows_;
};

// Exact projection eliminating `var`; rows are normalized to primitive integer
// coefficients and duplicate directions keep the tightest bound.
LinearRateSystem fm_eliminate(const LinearRateSystem& system, const std::string& var);

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct RateCaps {
    double r1 = 0.0;
    double r2 = 0.0;
};

// a*R1 + b*R2 <= c
struct HalfPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Bounded polygon {R1 >= 0, R2 >= 0, R1 <= cap1, R2 <= cap2} intersected with
// the stored half-planes. Construction canonicalizes: duplicate directions and
// half-planes that do not support an edge are dropped; vertices are cached in
// counter-clockwise order starting from the vertex of least R1 + R2.
class RateRegion {
public:
    RateRegion(std::vector<HalfPlane> halfplanes, RateCaps caps);

    // Convex hull of `points` (optionally closed downward toward the axes).
    static RateRegion from_points(std::span<const RatePoint> points, RateCaps caps,
                                  bool down_closed);

    const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
    const RateCaps& caps() const { return caps_; }
    const std::vector<RatePoint>& vertices() const { return vertices_; }
    bool empty() const { return vertices_.empty(); }

    bool contains(RatePoint p, double tol = kRegionTolerance) const;
    // Largest constraint violation at `p` (0 when inside).
    double violation(RatePoint p) const;

private:
    std::vector<HalfPlane> halfplanes_;
    RateCaps caps_;
    std::vector<RatePoint> vertices_;
};

// Eliminates every variable except R1 and R2 and intersects with the caps.
RateRegion project_to_rate_plane(const LinearRateSystem& system, RateCaps caps);

std::vector<RatePoint> vertices(const RateRegion& region);

bool is_subset(const RateRegion& a, const RateRegion& b, double tol = kRegionTolerance);

// Largest violation of b's constraints over the vertices of a.
double max_vertex_violation(const RateRegion& a, const RateRegion& b);

double hausdorff_distance(const RateRegion& a, const RateRegion& b);

struct WeightedMax {
    double value = 0.0;
    RatePoint point;
};

// Maximizes w1*R1 + w2*R2; ties go to the larger R1.
WeightedMax max_weighted(const RateRegion& region, double w1, double w2);

} // namespace icfb
