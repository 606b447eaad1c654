#include "symflat/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "symflat/error.hpp"
#include "symflat/summation.hpp"

namespace symflat {

namespace {

inline bool in_ball(const Point2& p, const Point2& x, double r) {
    const double dx = p.x - x.x;
    const double dy = p.y - x.y;
    return dx * dx + dy * dy < r * r;
}

// Andrew's monotone chain; collinear points dropped.
std::vector<std::uint32_t> hull(const std::vector<Point2>& pts, std::vector<std::uint32_t> idx) {
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        const Point2& p = pts[a];
        const Point2& q = pts[b];
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return a < b;
    });
    if (idx.size() < 3) return idx;
    std::vector<std::uint32_t> h(2 * idx.size());
    std::size_t k = 0;
    auto turn = [&](std::uint32_t o, std::uint32_t a, std::uint32_t b) {
        return cross(pts[a] - pts[o], pts[b] - pts[o]);
    };
    for (std::uint32_t i : idx) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
        h[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (k >= lower && turn(h[k - 2], h[k - 1], *it) <= 0.0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

GridIndex::GridIndex(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    Point2 lo = pts[0];
    Point2 hi = pts[0];
    for (const auto& p : pts) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    origin_ = lo;
    const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    if (extent <= 0.0) {
        cell_ = 1.0;
    } else {
        // Grow from a 1-D guess until cells hold ~16 points on average.
        cell_ = std::max(32.0 * extent / static_cast<double>(n), extent * 1e-9);
        while (cell_ < extent) {
            std::unordered_map<std::int64_t, int> probe;
            probe.reserve(n);
            for (const auto& p : pts) {
                const auto ix = static_cast<std::int64_t>(std::floor((p.x - lo.x) / cell_));
                const auto iy = static_cast<std::int64_t>(std::floor((p.y - lo.y) / cell_));
                probe[key(ix, iy)] = 1;
            }
            if (static_cast<double>(n) / static_cast<double>(probe.size()) >= 16.0) break;
            cell_ *= 2.0;
        }
    }

    std::vector<std::int64_t> keys(n);
    std::vector<std::pair<std::int64_t, std::int64_t>> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ix = static_cast<std::int64_t>(std::floor((pts[i].x - origin_.x) / cell_));
        const auto iy = static_cast<std::int64_t>(std::floor((pts[i].y - origin_.y) / cell_));
        cell_of[i] = {ix, iy};
        keys[i] = key(ix, iy);
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    std::size_t b = 0;
    while (b < n) {
        std::size_t e = b + 1;
        while (e < n && keys[order_[e]] == keys[order_[b]]) ++e;
        cells_[keys[order_[b]]] = {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)};
        occupied_.push_back(cell_of[order_[b]]);
        b = e;
    }
}

void GridIndex::ball(const std::vector<Point2>& pts, const Point2& x, double r,
                     std::vector<std::uint32_t>& out) const {
    out.clear();
    if (!(r > 0.0)) return;
    // padded so rounding at cell borders can never drop a point
    const double rp = r * (1.0 + 1e-9);
    const double fx0 = std::floor((x.x - rp - origin_.x) / cell_);
    const double fx1 = std::floor((x.x + rp - origin_.x) / cell_);
    const double fy0 = std::floor((x.y - rp - origin_.y) / cell_);
    const double fy1 = std::floor((x.y + rp - origin_.y) / cell_);
    const double span = (fx1 - fx0 + 1.0) * (fy1 - fy0 + 1.0);

    auto scan = [&](std::uint32_t b, std::uint32_t e) {
        for (std::uint32_t k = b; k < e; ++k) {
            const std::uint32_t i = order_[k];
            if (in_ball(pts[i], x, r)) out.push_back(i);
        }
    };

    if (!(span <= static_cast<double>(occupied_.size()))) {
        for (const auto& c : occupied_) {
            const double cx = static_cast<double>(c.first);
            const double cy = static_cast<double>(c.second);
            if (cx < fx0 || cx > fx1 || cy < fy0 || cy > fy1) continue;
            const auto& range = cells_.at(key(c.first, c.second));
            scan(range.first, range.second);
        }
    } else {
        const auto ix0 = static_cast<std::int64_t>(fx0);
        const auto ix1 = static_cast<std::int64_t>(fx1);
        const auto iy0 = static_cast<std::int64_t>(fy0);
        const auto iy1 = static_cast<std::int64_t>(fy1);
        for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
            for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
                auto it = cells_.find(key(ix, iy));
                if (it == cells_.end()) continue;
                scan(it->second.first, it->second.second);
            }
        }
    }
    std::sort(out.begin(), out.end());
}

DiscreteMeasure::DiscreteMeasure(std::vector<Point2> points, std::vector<double> weights,
                                 std::optional<double> spacing)
    : points_(std::move(points)), weights_(std::move(weights)), spacing_(spacing) {
    if (points_.empty()) throw Error(Errc::invalid_argument, "measure has no points");
    if (points_.size() != weights_.size()) throw Error(Errc::invalid_argument, "points/weights size mismatch");
    if (points_.size() > 0xffffffffull) throw Error(Errc::invalid_argument, "too many points");
    if (spacing_ && !(*spacing_ > 0.0 && std::isfinite(*spacing_)))
        throw Error(Errc::invalid_argument, "spacing must be positive and finite");
    CompensatedSum total;
    lo_ = hi_ = points_[0];
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!is_finite(points_[i]))
            throw Error(Errc::invalid_argument, "non-finite coordinate at point " + std::to_string(i));
        if (!(weights_[i] > 0.0 && std::isfinite(weights_[i])))
            throw Error(Errc::invalid_argument, "weight must be positive and finite at point " + std::to_string(i));
        total.add(weights_[i]);
        lo_.x = std::min(lo_.x, points_[i].x); lo_.y = std::min(lo_.y, points_[i].y);
        hi_.x = std::max(hi_.x, points_[i].x); hi_.y = std::max(hi_.y, points_[i].y);
    }
    total_mass_ = total.value();
    if (!std::isfinite(total_mass_)) throw Error(Errc::invalid_argument, "total mass is not finite");
    if (points_.size() > 1) {
        std::vector<std::uint32_t> all(points_.size());
        std::iota(all.begin(), all.end(), 0u);
        const auto [a, b] = farthest_pair(points_, all);
        diam_ = norm(points_[a] - points_[b]);
    }
    index_ = GridIndex(points_);
}

std::vector<std::uint32_t> DiscreteMeasure::ball_indices(const Point2& x, double r) const {
    std::vector<std::uint32_t> out;
    ball_indices(x, r, out);
    return out;
}

void DiscreteMeasure::ball_indices(const Point2& x, double r, std::vector<std::uint32_t>& out) const {
    index_.ball(points_, x, r, out);
}

std::pair<std::uint32_t, std::uint32_t> farthest_pair(const std::vector<Point2>& pts,
                                                      const std::vector<std::uint32_t>& idx) {
    if (idx.size() < 2) throw Error(Errc::degenerate_cube, "farthest pair needs two points");
    const auto h = hull(pts, idx);
    std::pair<std::uint32_t, std::uint32_t> best{std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
    double best_d = norm2(pts[best.first] - pts[best.second]);
    auto consider = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        std::pair<std::uint32_t, std::uint32_t> c{std::min(a, b), std::max(a, b)};
        const double d = norm2(pts[a] - pts[b]);
        if (d > best_d || (d == best_d && c < best)) {
            best_d = d;
            best = c;
        }
    };
    const std::size_t m = h.size();
    if (m <= 3) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) consider(h[i], h[j]);
        return best;
    }
    // rotating calipers over antipodal vertex pairs
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = (i + 1) % m;
        const Vec2 edge = pts[h[ni]] - pts[h[i]];
        while (cross(edge, pts[h[(j + 1) % m]] - pts[h[j]]) > 0.0) j = (j + 1) % m;
        consider(h[i], h[j]);
        consider(h[ni], h[j]);
        consider(h[i], h[(j + 1) % m]);
        consider(h[ni], h[(j + 1) % m]);
    }
    return best;
}

double ball_mass(const DiscreteMeasure& mu, const Point2& x, double r) {
    if (!(r > 0.0)) throw Error(Errc::invalid_argument, "ball radius must be positive");
    std::vector<std::uint32_t> idx;
    mu.ball_indices(x, r, idx);
    CompensatedSum s;
    for (auto i : idx) s.add(mu.weight(i));
    return s.value();
}

double ball_mass_bruteforce(const DiscreteMeasure& mu, const Point2& x, double r) {
    if (!(r > 0.0)) throw Error(Errc::invalid_argument, "ball radius must be positive");
    CompensatedSum s;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (in_ball(mu.point(i), x, r)) s.add(mu.weight(i));
    return s.value();
}

std::vector<double> geometric_scales(double r_min, double r_max, std::size_t n) {
    if (!(r_min > 0.0) || !(r_max >= r_min) || n == 0)
        throw Error(Errc::invalid_argument, "bad geometric scale range");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = r_min;
        return out;
    }
    const double ratio = std::log(r_max / r_min);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = r_min * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
    out.back() = r_max;
    return out;
}

RegularityReport ahlfors_report(const DiscreteMeasure& mu, const std::vector<Point2>& centers,
                                const std::vector<double>& scales) {
    if (centers.empty() || scales.empty()) throw Error(Errc::invalid_argument, "empty center or scale set");
    RegularityReport rep;
    rep.r_min = *std::min_element(scales.begin(), scales.end());
    rep.r_max = *std::max_element(scales.begin(), scales.end());
    for (const auto& x : centers) {
        for (double r : scales) {
            const double m = ball_mass(mu, x, r);
            rep.upper_ratio = std::max(rep.upper_ratio, m / r);
            rep.lower_ratio = std::max(rep.lower_ratio, m > 0.0 ? r / m : HUGE_VAL);
            ++rep.samples;
        }
    }
    rep.C0_upper = std::max(1.0, rep.upper_ratio);
    rep.C0_lower = std::max(1.0, rep.lower_ratio);
    return rep;
}

RegularityReport ahlfors_report(const DiscreteMeasure& mu, double r_min, double r_max,
                                std::size_t n_centers, std::size_t n_scales) {
    if (!(r_min > 0.0) || !(r_min < r_max)) throw Error(Errc::invalid_argument, "need 0 < r_min < r_max");
    if (n_centers == 0 || n_scales == 0) throw Error(Errc::invalid_argument, "need at least one center and scale");
    if (mu.diameter() == 0.0)
        throw Error(Errc::invalid_argument, "support is a single point; not Ahlfors regular");
    std::vector<Point2> centers;
    const std::size_t n = mu.size();
    const std::size_t k = std::min(n_centers, n);
    for (std::size_t c = 0; c < k; ++c) centers.push_back(mu.point(c * n / k));
    return ahlfors_report(mu, centers, geometric_scales(r_min, r_max, n_scales));
}

std::vector<double> density_profile(const DiscreteMeasure& mu, const Point2& x,
                                    const std::vector<double>& scales) {
    if (scales.empty()) throw Error(Errc::invalid_argument, "empty scale list");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw Error(Errc::invalid_argument, "scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1])) throw Error(Errc::invalid_argument, "scales must decrease");
    }
    std::vector<double> out;
    out.reserve(scales.size());
    for (double r : scales) out.push_back(ball_mass(mu, x, r) / r);
    return out;
}

DiscreteMeasure rescale(const DiscreteMeasure& mu, const Point2& x, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_argument, "rescale radius must be positive");
    std::vector<Point2> pts(mu.size());
    std::vector<double> w(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        pts[i] = (mu.point(i) - x) / r;
        w[i] = mu.weight(i) / r;
    }
    std::optional<double> h;
    if (mu.spacing()) h = *mu.spacing() / r;
    return DiscreteMeasure(std::move(pts), std::move(w), h);
}

DiscreteMeasure restrict_to_ball(const DiscreteMeasure& mu, const Point2& x, double r) {
    const auto idx = mu.ball_indices(x, r);
    if (idx.empty()) throw Error(Errc::empty_ball, "restriction to an empty ball");
    std::vector<Point2> pts;
    std::vector<double> w;
    for (auto i : idx) {
        pts.push_back(mu.point(i));
        w.push_back(mu.weight(i));
    }
    return DiscreteMeasure(std::move(pts), std::move(w), mu.spacing());
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const Vec2& v) {
    std::vector<Point2> pts(mu.points());
    for (auto& p : pts) p += v;
    return DiscreteMeasure(std::move(pts), mu.weights(), mu.spacing());
}

DiscreteMeasure rotate(const DiscreteMeasure& mu, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::vector<Point2> pts(mu.points());
    for (auto& p : pts) p = {c * p.x - s * p.y, s * p.x + c * p.y};
    return DiscreteMeasure(std::move(pts), mu.weights(), mu.spacing());
}

std::vector<Point2> sample_centers(const DiscreteMeasure& mu, std::size_t n, double margin,
                                   std::uint64_t seed) {
    const Point2 lo = mu.bbox_min();
    const Point2 hi = mu.bbox_max();
    const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    const double tol = mu.spacing() ? 0.5 * *mu.spacing() : 1e-12 * std::max(extent, 1.0);
    auto axis_ok = [&](double v, double a, double b) {
        if (b - a >= 2.0 * margin) return v >= a + margin && v <= b - margin;
        return std::abs(v - 0.5 * (a + b)) <= tol;
    };
    std::vector<std::uint32_t> cand;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const Point2& p = mu.point(i);
        if (axis_ok(p.x, lo.x, hi.x) && axis_ok(p.y, lo.y, hi.y)) cand.push_back(static_cast<std::uint32_t>(i));
    }
    if (cand.empty()) throw Error(Errc::invalid_argument, "no support points inside the sampling core");
    if (n < cand.size()) {
        // partial Fisher-Yates driven by raw engine output, so the draw does
        // not depend on the standard library's distribution algorithms
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(rng() % (cand.size() - k));
            std::swap(cand[k], cand[j]);
        }
        cand.resize(n);
        std::sort(cand.begin(), cand.end());
    }
    std::vector<Point2> out;
    out.reserve(cand.size());
    for (auto i : cand) out.push_back(mu.point(i));
    return out;
}

}  // namespace symflat
