#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symflat/geometry.hpp"

namespace symflat {

// Uniform hash grid over the support. Queries return candidate indices in
// ascending order so sums over them follow the brute-force order exactly.
class GridIndex {
public:
    GridIndex() = default;
    explicit GridIndex(const std::vector<Point2>& pts);

    // Indices i with |pts[i] - x| < r, ascending.
    void ball(const std::vector<Point2>& pts, const Point2& x, double r,
              std::vector<std::uint32_t>& out) const;
    double cell_size() const { return cell_; }

private:
    std::int64_t key(std::int64_t ix, std::int64_t iy) const { return (ix << 32) ^ (iy & 0xffffffff); }

    double cell_ = 1.0;
    Point2 origin_{};
    std::vector<std::uint32_t> order_;
    std::unordered_map<std::int64_t, std::pair<std::uint32_t, std::uint32_t>> cells_;
    std::vector<std::pair<std::int64_t, std::int64_t>> occupied_;
};

class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<Point2> points, std::vector<double> weights,
                    std::optional<double> spacing = std::nullopt);

    std::size_t size() const { return points_.size(); }
    const std::vector<Point2>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    const Point2& point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::optional<double> spacing() const { return spacing_; }
    // spacing if recorded, otherwise 0
    double pitch() const { return spacing_.value_or(0.0); }

    double total_mass() const { return total_mass_; }
    Point2 bbox_min() const { return lo_; }
    Point2 bbox_max() const { return hi_; }
    // diameter of the support, from the convex hull at construction
    double diameter() const { return diam_; }

    std::vector<std::uint32_t> ball_indices(const Point2& x, double r) const;
    void ball_indices(const Point2& x, double r, std::vector<std::uint32_t>& out) const;
    const GridIndex& index() const { return index_; }

private:
    std::vector<Point2> points_;
    std::vector<double> weights_;
    std::optional<double> spacing_;
    double total_mass_ = 0.0;
    Point2 lo_{};
    Point2 hi_{};
    double diam_ = 0.0;
    GridIndex index_;
};

struct RegularityReport {
    double C0_upper = 1.0;  // max(1, sup mu(B)/r)
    double C0_lower = 1.0;  // max(1, sup r/mu(B))
    double upper_ratio = 0.0;
    double lower_ratio = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::size_t samples = 0;

    double constant() const { return C0_upper > C0_lower ? C0_upper : C0_lower; }
};

double ball_mass(const DiscreteMeasure& mu, const Point2& x, double r);
// Reference implementation: linear scan in index order.
double ball_mass_bruteforce(const DiscreteMeasure& mu, const Point2& x, double r);

RegularityReport ahlfors_report(const DiscreteMeasure& mu, double r_min, double r_max,
                                std::size_t n_centers, std::size_t n_scales);
// Same statistic over an explicit center/scale set.
RegularityReport ahlfors_report(const DiscreteMeasure& mu, const std::vector<Point2>& centers,
                                const std::vector<double>& scales);

std::vector<double> density_profile(const DiscreteMeasure& mu, const Point2& x,
                                    const std::vector<double>& scales);

DiscreteMeasure rescale(const DiscreteMeasure& mu, const Point2& x, double r);
// Restriction of mu to the open ball B(x, r).
DiscreteMeasure restrict_to_ball(const DiscreteMeasure& mu, const Point2& x, double r);
DiscreteMeasure translate(const DiscreteMeasure& mu, const Vec2& v);
DiscreteMeasure rotate(const DiscreteMeasure& mu, double angle);

std::vector<double> geometric_scales(double r_min, double r_max, std::size_t n);

// Centers drawn from support points inside the bounding box shrunk by
// `margin` per axis. Axes narrower than 2*margin collapse onto their midline
// (points within h/2 of it), which is how symmetric multi-line layouts keep
// their centers on the middle line.
std::vector<Point2> sample_centers(const DiscreteMeasure& mu, std::size_t n, double margin,
                                   std::uint64_t seed);

// Farthest pair among the given indices; ties go to the lexicographically
// smallest (i, j) index pair.
std::pair<std::uint32_t, std::uint32_t> farthest_pair(const std::vector<Point2>& pts,
                                                      const std::vector<std::uint32_t>& idx);

}  // namespace symflat
