#include "icfb/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace icfb {

LinearRateSystem::LinearRateSystem(std::vector<std::string> variables)
    : variables_(std::move(variables))
{
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        for (std::size_t j = i + 1; j < variables_.size(); ++j) {
            if (variables_[i] == variables_[j])
                throw std::invalid_argument("duplicate rate variable '" + variables_[i] + "'");
        }
    }
}

bool LinearRateSystem::has(const std::string& var) const
{
    return std::find(variables_.begin(), variables_.end(), var) != variables_.end();
}

std::size_t LinearRateSystem::index_of(const std::string& var) const
{
    auto it = std::find(variables_.begin(), variables_.end(), var);
    if (it == variables_.end())
        throw std::invalid_argument("unknown rate variable '" + var + "'");
    return static_cast<std::size_t>(it - variables_.begin());
}

void LinearRateSystem::add_row(RateInequality row)
{
    if (row.coeffs.size() != variables_.size())
        throw std::invalid_argument("inequality row has wrong width");
    if (!std::isfinite(row.bound))
        throw std::invalid_argument("inequality bound must be finite");
    rows_.push_back(std::move(row));
}

void LinearRateSystem::add_le(const std::vector<Term>& terms, double bound)
{
    RateInequality row{std::vector<Rational>(variables_.size()), bound};
    for (const auto& [var, coeff] : terms) {
        auto& slot = row.coeffs[index_of(var)];
        slot = slot + coeff;
    }
    add_row(std::move(row));
}

void LinearRateSystem::add_ge(const std::vector<Term>& terms, double bound)
{
    std::vector<Term> negated;
    negated.reserve(terms.size());
    for (const auto& [var, coeff] : terms)
        negated.emplace_back(var, -coeff);
    add_le(negated, -bound);
}

bool LinearRateSystem::is_satisfied(std::span<const double> point, double tol) const
{
    if (point.size() != variables_.size())
        throw std::invalid_argument("point has wrong dimension");
    for (const auto& row : rows_) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < point.size(); ++i)
            lhs += row.coeffs[i].to_double() * point[i];
        if (lhs > row.bound + tol)
            return false;
    }
    return true;
}

namespace {

// Scale to primitive integer coefficients; the bound follows the same
// positive factor.
RateInequality normalized(RateInequality row)
{
    std::int64_t lcm = 1;
    for (const auto& c : row.coeffs) {
        if (!c.is_zero())
            lcm = std::lcm(lcm, c.den());
    }
    std::int64_t gcd = 0;
    for (const auto& c : row.coeffs) {
        if (!c.is_zero()) {
            std::int64_t v = (c * Rational(lcm)).num();
            gcd = std::gcd(gcd, v < 0 ? -v : v);
        }
    }
    if (gcd == 0)
        return row;
    Rational scale(lcm, gcd);
    for (auto& c : row.coeffs)
        c = c * scale;
    row.bound *= scale.to_double();
    return row;
}

bool all_zero(const RateInequality& row)
{
    return std::all_of(row.coeffs.begin(), row.coeffs.end(),
                       [](const Rational& c) { return c.is_zero(); });
}

// Dominance pruning: one row per coefficient direction, vacuous rows dropped,
// infeasibility collapsed to a single 0 <= bound row.
std::vector<RateInequality> prune(std::vector<RateInequality> rows)
{
    struct Less {
        bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const
        {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        }
    };
    std::map<std::vector<Rational>, double, Less> best;
    for (auto& r : rows) {
        RateInequality n = normalized(std::move(r));
        if (all_zero(n) && n.bound >= -kRegionTolerance)
            continue;
        auto [it, inserted] = best.emplace(n.coeffs, n.bound);
        if (!inserted)
            it->second = std::min(it->second, n.bound);
    }
    std::vector<RateInequality> out;
    out.reserve(best.size());
    for (auto& [coeffs, bound] : best)
        out.push_back({coeffs, bound});
    return out;
}

} // namespace

LinearRateSystem fm_eliminate(const LinearRateSystem& system, const std::string& var)
{
    const std::size_t k = system.index_of(var);
    std::vector<std::string> vars = system.variables();
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(k));

    auto drop_column = [k](const RateInequality& row) {
        RateInequality out{row.coeffs, row.bound};
        out.coeffs.erase(out.coeffs.begin() + static_cast<std::ptrdiff_t>(k));
        return out;
    };

    std::vector<const RateInequality*> upper;
    std::vector<const RateInequality*> lower;
    std::vector<RateInequality> rows;
    for (const auto& row : system.rows()) {
        int s = row.coeffs[k].sign();
        if (s > 0)
            upper.push_back(&row);
        else if (s < 0)
            lower.push_back(&row);
        else
            rows.push_back(drop_column(row));
    }
    for (const auto* up : upper) {
        for (const auto* lo : lower) {
            // up has +cu, lo has -cl; cl*up + cu*lo cancels var.
            Rational cu = up->coeffs[k];
            Rational cl = -lo->coeffs[k];
            RateInequality combined{std::vector<Rational>(up->coeffs.size()),
                                    cl.to_double() * up->bound + cu.to_double() * lo->bound};
            for (std::size_t i = 0; i < combined.coeffs.size(); ++i)
                combined.coeffs[i] = cl * up->coeffs[i] + cu * lo->coeffs[i];
            rows.push_back(drop_column(combined));
        }
    }

    LinearRateSystem out(vars);
    for (auto& row : prune(std::move(rows)))
        out.add_row(std::move(row));
    return out;
}

namespace {

constexpr double kSnap = 1e-12;

double snap(double v)
{
    return std::abs(v) < kSnap ? 0.0 : v;
}

// Signed distance of p beyond the half-plane boundary.
double excess(const HalfPlane& h, RatePoint p)
{
    double norm = std::hypot(h.a, h.b);
    return (h.a * p.r1 + h.b * p.r2 - h.c) / norm;
}

std::vector<HalfPlane> box_planes(RateCaps caps)
{
    return {{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {1.0, 0.0, caps.r1}, {0.0, 1.0, caps.r2}};
}

bool same_direction(const HalfPlane& x, const HalfPlane& y)
{
    double nx = std::max(std::abs(x.a), std::abs(x.b));
    double ny = std::max(std::abs(y.a), std::abs(y.b));
    return std::abs(x.a / nx - y.a / ny) < 1e-12 && std::abs(x.b / nx - y.b / ny) < 1e-12;
}

double scaled_bound(const HalfPlane& h)
{
    return h.c / std::max(std::abs(h.a), std::abs(h.b));
}

void sort_ccw(std::vector<RatePoint>& pts)
{
    if (pts.size() < 2)
        return;
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pts) {
        cx += p.r1;
        cy += p.r2;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const RatePoint& a, const RatePoint& b) {
        return std::atan2(a.r2 - cy, a.r1 - cx) < std::atan2(b.r2 - cy, b.r1 - cx);
    });
    auto start = std::min_element(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
        double sa = a.r1 + a.r2, sb = b.r1 + b.r2;
        if (std::abs(sa - sb) > kSnap)
            return sa < sb;
        return a.r2 < b.r2;
    });
    std::rotate(pts.begin(), start, pts.end());
}

double cross(RatePoint o, RatePoint a, RatePoint b)
{
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

double point_segment_distance(RatePoint p, RatePoint a, RatePoint b)
{
    double dx = b.r1 - a.r1, dy = b.r2 - a.r2;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.r1 - a.r1) * dx + (p.r2 - a.r2) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.r1 - (a.r1 + t * dx), p.r2 - (a.r2 + t * dy));
}

double distance_to_region(RatePoint p, const RateRegion& r)
{
    if (r.violation(p) <= kSnap)
        return 0.0;
    const auto& v = r.vertices();
    if (v.size() == 1)
        return std::hypot(p.r1 - v[0].r1, p.r2 - v[0].r2);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
    return best;
}

} // namespace

RateRegion::RateRegion(std::vector<HalfPlane> halfplanes, RateCaps caps)
    : caps_(caps)
{
    if (!(caps.r1 >= 0.0) || !(caps.r2 >= 0.0) || !std::isfinite(caps.r1) ||
        !std::isfinite(caps.r2))
        throw std::invalid_argument("rate caps must be finite and nonnegative");

    bool infeasible = false;
    std::vector<HalfPlane> planes;
    for (const auto& h : halfplanes) {
        if (!std::isfinite(h.a) || !std::isfinite(h.b) || !std::isfinite(h.c))
            throw std::invalid_argument("half-plane with non-finite entries");
        if (std::abs(h.a) < kSnap && std::abs(h.b) < kSnap) {
            if (h.c < -kRegionTolerance)
                infeasible = true;
            continue;
        }
        auto same = std::find_if(planes.begin(), planes.end(),
                                 [&](const HalfPlane& p) { return same_direction(p, h); });
        if (same == planes.end())
            planes.push_back(h);
        else if (scaled_bound(h) < scaled_bound(*same))
            *same = h;
    }
    if (infeasible)
        return;

    std::vector<HalfPlane> all = planes;
    for (const auto& b : box_planes(caps))
        all.push_back(b);

    std::vector<RatePoint> pts;
    auto feasible = [&](RatePoint p) {
        return std::all_of(all.begin(), all.end(),
                           [&](const HalfPlane& h) { return excess(h, p) <= kRegionTolerance; });
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto& h = all[i];
            const auto& g = all[j];
            double det = h.a * g.b - h.b * g.a;
            if (std::abs(det) < 1e-14)
                continue;
            RatePoint p{snap((h.c * g.b - h.b * g.c) / det), snap((h.a * g.c - h.c * g.a) / det)};
            if (!feasible(p))
                continue;
            bool dup = std::any_of(pts.begin(), pts.end(), [&](const RatePoint& q) {
                return std::abs(q.r1 - p.r1) <= kRegionTolerance &&
                       std::abs(q.r2 - p.r2) <= kRegionTolerance;
            });
            if (!dup)
                pts.push_back(p);
        }
    }
    sort_ccw(pts);
    vertices_ = std::move(pts);
    if (vertices_.empty())
        return;

    // Keep half-planes that support an edge (or touch a degenerate region).
    const std::size_t need = vertices_.size() >= 3 ? 2 : 1;
    for (const auto& h : planes) {
        std::size_t tight = 0;
        for (const auto& v : vertices_) {
            if (std::abs(excess(h, v)) <= kRegionTolerance)
                ++tight;
        }
        if (tight >= need)
            halfplanes_.push_back(h);
    }
}

RateRegion RateRegion::from_points(std::span<const RatePoint> points, RateCaps caps,
                                   bool down_closed)
{
    std::vector<RatePoint> pts(points.begin(), points.end());
    if (down_closed) {
        pts.push_back({0.0, 0.0});
        for (const auto& p : points) {
            pts.push_back({p.r1, 0.0});
            pts.push_back({0.0, p.r2});
        }
    }
    if (pts.empty())
        return RateRegion({{0.0, 0.0, -1.0}}, caps);

    std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RatePoint& a, const RatePoint& b) {
                              return std::abs(a.r1 - b.r1) <= kSnap &&
                                     std::abs(a.r2 - b.r2) <= kSnap;
                          }),
              pts.end());

    std::vector<HalfPlane> planes;
    if (pts.size() == 1) {
        const auto& p = pts[0];
        planes = {{1, 0, p.r1}, {0, 1, p.r2}, {-1, 0, -p.r1}, {0, -1, -p.r2}};
        return RateRegion(planes, caps);
    }

    // Andrew's monotone chain, collinear points removed.
    std::vector<RatePoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kSnap)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        const auto& p = pts[i];
        while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= kSnap)
            --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);

    if (hull.size() == 2) {
        RatePoint a = hull[0], b = hull[1];
        double dx = b.r1 - a.r1, dy = b.r2 - a.r2;
        planes = {{dy, -dx, dy * a.r1 - dx * a.r2},
                  {-dy, dx, -(dy * a.r1 - dx * a.r2)},
                  {dx, dy, dx * b.r1 + dy * b.r2},
                  {-dx, -dy, -(dx * a.r1 + dy * a.r2)}};
        return RateRegion(planes, caps);
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        RatePoint p = hull[i], q = hull[(i + 1) % hull.size()];
        double a = q.r2 - p.r2, b = p.r1 - q.r1;
        double scale = std::max(std::abs(a), std::abs(b));
        HalfPlane h{a / scale, b / scale, (a * p.r1 + b * p.r2) / scale};
        bool nonneg_axis = std::abs(h.c) <= kSnap &&
                           ((std::abs(h.a + 1) <= kSnap && std::abs(h.b) <= kSnap) ||
                            (std::abs(h.b + 1) <= kSnap && std::abs(h.a) <= kSnap));
        if (!nonneg_axis)
            planes.push_back(h);
    }
    return RateRegion(planes, caps);
}

double RateRegion::violation(RatePoint p) const
{
    double worst = 0.0;
    for (const auto& h : halfplanes_)
        worst = std::max(worst, excess(h, p));
    for (const auto& h : box_planes(caps_))
        worst = std::max(worst, excess(h, p));
    return worst;
}

bool RateRegion::contains(RatePoint p, double tol) const
{
    return !empty() && violation(p) <= tol;
}

RateRegion project_to_rate_plane(const LinearRateSystem& system, RateCaps caps)
{
    LinearRateSystem s = system;
    for (const auto& var : system.variables()) {
        if (var != "R1" && var != "R2")
            s = fm_eliminate(s, var);
    }
    const bool has1 = s.has("R1");
    const bool has2 = s.has("R2");
    const std::size_t i1 = has1 ? s.index_of("R1") : 0;
    const std::size_t i2 = has2 ? s.index_of("R2") : 0;
    std::vector<HalfPlane> planes;
    for (const auto& row : s.rows()) {
        planes.push_back({has1 ? row.coeffs[i1].to_double() : 0.0,
                          has2 ? row.coeffs[i2].to_double() : 0.0, row.bound});
    }
    return RateRegion(std::move(planes), caps);
}

std::vector<RatePoint> vertices(const RateRegion& region)
{
    return region.vertices();
}

double max_vertex_violation(const RateRegion& a, const RateRegion& b)
{
    if (a.empty())
        return 0.0;
    if (b.empty())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& v : a.vertices())
        worst = std::max(worst, b.violation(v));
    return worst;
}

bool is_subset(const RateRegion& a, const RateRegion& b, double tol)
{
    return max_vertex_violation(a, b) <= tol;
}

double hausdorff_distance(const RateRegion& a, const RateRegion& b)
{
    if (a.empty() && b.empty())
        return 0.0;
    if (a.empty() || b.empty())
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (const auto& v : a.vertices())
        d = std::max(d, distance_to_region(v, b));
    for (const auto& v : b.vertices())
        d = std::max(d, distance_to_region(v, a));
    return d;
}

WeightedMax max_weighted(const RateRegion& region, double w1, double w2)
{
    if (!(w1 >= 0.0 && w2 >= 0.0) || (w1 == 0.0 && w2 == 0.0))
        throw std::invalid_argument("weights must be nonnegative and not both zero");
    if (region.empty())
        throw std::invalid_argument("cannot maximize over an empty region");
    WeightedMax best{-std::numeric_limits<double>::infinity(), {}};
    for (const auto& v : region.vertices()) {
        double val = w1 * v.r1 + w2 * v.r2;
        if (val > best.value + kRegionTolerance ||
            (std::abs(val - best.value) <= kRegionTolerance && v.r1 > best.point.r1)) {
            best = {std::max(val, best.value), v};
            best.value = val;
        }
    }
    return best;
}

} // namespace icfb
