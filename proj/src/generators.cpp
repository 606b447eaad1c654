#include "symflat/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "symflat/error.hpp"

namespace symflat {

namespace {

// Box-Muller on raw engine bits, so draws do not depend on the library's
// distribution implementation.
class Gauss {
public:
    explicit Gauss(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
        have_ = true;
        return rad * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

long steps(double extent, double h) {
    const double n = std::round(extent / h);
    if (!(n >= 1.0) || n > 5e7) throw Error(Errc::invalid_argument, "extent/h out of range");
    return static_cast<long>(n);
}

// Points (i - n/2) h for i = 0..n, so the sample set is symmetric about 0.
double centered(long i, long n, double h) { return (static_cast<double>(i) - 0.5 * static_cast<double>(n)) * h; }

Point2 rot(const Point2& p, double c, double s) { return {c * p.x - s * p.y, s * p.x + c * p.y}; }

}  // namespace

GeneratorKind parse_generator_kind(const std::string& s) {
    for (auto k : {GeneratorKind::line, GeneratorKind::segment, GeneratorKind::equidistant_lines, GeneratorKind::circle,
                   GeneratorKind::cross, GeneratorKind::lipschitz_graph, GeneratorKind::lebesgue_grid,
                   GeneratorKind::perturbed_line})
        if (s == generator_name(k)) return k;
    throw Error(Errc::invalid_argument, "unknown generator '" + s + "'");
}

const char* generator_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::line: return "line";
        case GeneratorKind::segment: return "segment";
        case GeneratorKind::equidistant_lines: return "equidistant_lines";
        case GeneratorKind::circle: return "circle";
        case GeneratorKind::cross: return "cross";
        case GeneratorKind::lipschitz_graph: return "lipschitz_graph";
        case GeneratorKind::lebesgue_grid: return "lebesgue_grid";
        case GeneratorKind::perturbed_line: return "perturbed_line";
    }
    return "unknown";
}

DiscreteMeasure generate(const GeneratorSpec& g) {
    if (!(g.h > 0.0) || !std::isfinite(g.h)) throw Error(Errc::invalid_argument, "h must be positive");
    if (!(g.extent > 0.0) || !std::isfinite(g.extent)) throw Error(Errc::invalid_argument, "extent must be positive");
    std::vector<Point2> pts;
    std::vector<double> w;
    const double c = std::cos(g.angle);
    const double s = std::sin(g.angle);

    switch (g.kind) {
        case GeneratorKind::line:
        case GeneratorKind::perturbed_line: {
            const long n = steps(g.extent, g.h);
            if (g.kind == GeneratorKind::perturbed_line && !(g.sigma >= 0.0))
                throw Error(Errc::invalid_argument, "sigma must be non-negative");
            Gauss noise(g.seed);
            for (long i = 0; i <= n; ++i) {
                const double y = g.kind == GeneratorKind::perturbed_line ? g.sigma * noise() : 0.0;
                pts.push_back(rot({centered(i, n, g.h), y}, c, s));
                w.push_back(g.h);
            }
            break;
        }
        case GeneratorKind::segment: {
            const long n = steps(g.extent, g.h);
            for (long i = 0; i <= n; ++i) {
                pts.push_back(rot({static_cast<double>(i) * g.h, 0.0}, c, s));
                w.push_back(g.h);
            }
            break;
        }
        case GeneratorKind::equidistant_lines: {
            if (g.m < 1) throw Error(Errc::invalid_argument, "need at least one line");
            if (!(g.gap > 0.0)) throw Error(Errc::invalid_argument, "gap must be positive");
            const long n = steps(g.extent, g.h);
            for (int k = 0; k < g.m; ++k) {
                const double y = (static_cast<double>(k) - 0.5 * (g.m - 1)) * g.gap;
                for (long i = 0; i <= n; ++i) {
                    pts.push_back(rot({centered(i, n, g.h), y}, c, s));
                    w.push_back(g.h);
                }
            }
            break;
        }
        case GeneratorKind::circle: {
            if (!(g.radius > 0.0)) throw Error(Errc::invalid_argument, "radius must be positive");
            const long n = steps(2.0 * std::numbers::pi * g.radius, g.h);
            const double wt = 2.0 * std::numbers::pi * g.radius / static_cast<double>(n);
            for (long i = 0; i < n; ++i) {
                const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
                pts.push_back({g.radius * std::cos(t), g.radius * std::sin(t)});
                w.push_back(wt);
            }
            break;
        }
        case GeneratorKind::cross: {
            const long n = steps(g.extent, g.h);
            for (long i = 0; i <= n; ++i) {
                const double t = centered(i, n, g.h);
                pts.push_back(rot({t, 0.0}, c, s));
                w.push_back(t == 0.0 ? 2.0 * g.h : g.h);
            }
            for (long i = 0; i <= n; ++i) {
                const double t = centered(i, n, g.h);
                if (t == 0.0) continue;  // crossing point already carries both masses
                pts.push_back(rot({0.0, t}, c, s));
                w.push_back(g.h);
            }
            break;
        }
        case GeneratorKind::lipschitz_graph: {
            const long n = steps(g.extent, g.h);
            for (long i = 0; i <= n; ++i) {
                const double x = centered(i, n, g.h);
                const double slope = g.amplitude * std::cos(x);
                pts.push_back(rot({x, g.amplitude * std::sin(x)}, c, s));
                w.push_back(g.h * std::sqrt(1.0 + slope * slope));
            }
            break;
        }
        case GeneratorKind::lebesgue_grid: {
            const long n = steps(g.extent, g.h);
            if (static_cast<double>(n + 1) * static_cast<double>(n + 1) > 5e7)
                throw Error(Errc::invalid_argument, "grid too fine");
            for (long i = 0; i <= n; ++i) {
                for (long j = 0; j <= n; ++j) {
                    pts.push_back({centered(i, n, g.h), centered(j, n, g.h)});
                    w.push_back(g.h * g.h);
                }
            }
            break;
        }
    }
    return DiscreteMeasure(std::move(pts), std::move(w), g.h);
}

}  // namespace symflat
