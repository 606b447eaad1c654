#include "symflat/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "symflat/beta.hpp"
#include "symflat/error.hpp"
#include "symflat/summation.hpp"

namespace symflat {

namespace {

struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const {
        return std::hash<std::int64_t>()(c.first * 73856093 ^ c.second * 19349663);
    }
};

using CellMap = std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::uint32_t>, CellHash>;

std::pair<std::int64_t, std::int64_t> cell_of(const Point2& p, double s) {
    return {static_cast<std::int64_t>(std::floor(p.x / s)), static_cast<std::int64_t>(std::floor(p.y / s))};
}

// Greedy net, pairwise distances strictly above delta, with nearest-net
// assignment. Strictness puts the closed ball B(z, delta/2) inside each cell.
struct NetLevel {
    std::vector<std::uint32_t> net;     // point indices in acceptance order
    std::vector<std::uint32_t> assign;  // per point: net slot
    std::vector<double> raw_mass;       // per slot: mass of its Voronoi cell
    CellMap grid;
    double delta = 1.0;
};

// `subset` is in greedy order; assignment is per subset position.
NetLevel net_level(const DiscreteMeasure& mu, const std::vector<std::uint32_t>& subset, double delta) {
    NetLevel nl;
    nl.delta = delta;
    const double d2 = delta * delta;
    for (auto i : subset) {
        const Point2& p = mu.point(i);
        const auto c = cell_of(p, delta);
        bool ok = true;
        for (std::int64_t dx = -1; dx <= 1 && ok; ++dx) {
            for (std::int64_t dy = -1; dy <= 1 && ok; ++dy) {
                auto it = nl.grid.find({c.first + dx, c.second + dy});
                if (it == nl.grid.end()) continue;
                for (auto slot : it->second)
                    if (norm2(mu.point(nl.net[slot]) - p) <= d2) { ok = false; break; }
            }
        }
        if (!ok) continue;
        nl.grid[c].push_back(static_cast<std::uint32_t>(nl.net.size()));
        nl.net.push_back(i);
    }

    nl.assign.resize(subset.size());
    std::vector<CompensatedSum> mass(nl.net.size());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        const Point2& p = mu.point(subset[k]);
        const auto c = cell_of(p, delta);
        double best = HUGE_VAL;
        std::uint32_t best_slot = 0;
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = nl.grid.find({c.first + dx, c.second + dy});
                if (it == nl.grid.end()) continue;
                for (auto slot : it->second) {
                    const double d = norm2(mu.point(nl.net[slot]) - p);
                    if (d < best || (d == best && slot < best_slot)) { best = d; best_slot = slot; }
                }
            }
        }
        nl.assign[k] = best_slot;
        mass[best_slot].add(mu.weight(subset[k]));
    }
    nl.raw_mass.resize(nl.net.size());
    for (std::size_t s = 0; s < mass.size(); ++s) nl.raw_mass[s] = mass[s].value();
    return nl;
}

struct Proto {
    std::vector<std::uint32_t> members;
    std::uint32_t center = 0;
    std::vector<std::size_t> children;  // indices into the finer level's proto list
};

}  // namespace

const std::vector<std::size_t>& CubeLattice::level(int j) const {
    if (j < j_min_ || j > j_max_) throw Error(Errc::invalid_argument, "level outside lattice");
    return levels_[static_cast<std::size_t>(j - j_min_)];
}

std::vector<std::size_t> CubeLattice::descendants(std::size_t id) const {
    std::vector<std::size_t> out{id};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (auto c : cubes_.at(out[k]).children) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t CubeLattice::ancestor(std::size_t id, int steps) const {
    for (int s = 0; s < steps && cubes_.at(id).parent; ++s) id = *cubes_[id].parent;
    return id;
}

std::size_t CubeLattice::owner(int j, std::uint32_t i) const {
    if (j < j_min_ || j > j_max_) throw Error(Errc::invalid_argument, "level outside lattice");
    return owner_[static_cast<std::size_t>(j - j_min_)].at(i);
}

CubeLattice build_lattice(const DiscreteMeasure& mu, int j_min, int j_max, const LatticeOptions& opt) {
    if (j_min > j_max) throw Error(Errc::invalid_argument, "j_min > j_max");
    if (!(opt.scale > 0.0)) throw Error(Errc::invalid_argument, "lattice scale must be positive");
    if (j_max - j_min > 40) throw Error(Errc::invalid_argument, "too many levels");
    const double finest = std::ldexp(opt.scale, -j_max);
    if (mu.spacing() && finest < 4.0 * *mu.spacing())
        throw Error(Errc::resolution_exhausted, "finest side is below 4 h");

    std::vector<std::uint32_t> order(mu.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (mu.weight(a) != mu.weight(b)) return mu.weight(a) > mu.weight(b);
        const Point2& p = mu.point(a);
        const Point2& q = mu.point(b);
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return a < b;
    });

    const int nlev = j_max - j_min + 1;
    std::vector<std::vector<Proto>> protos(static_cast<std::size_t>(nlev));

    // Nets are padded by two pitches: a sample then always lies between
    // side/2 and the bisector, so a cell reaches side/2 from its center
    // however the sampling falls.
    const double pad = 2.0 * mu.pitch();
    auto cells = [&](const std::vector<std::uint32_t>& subset, double delta) {
        const NetLevel nl = net_level(mu, subset, delta + pad);
        std::vector<Proto> out(nl.net.size());
        for (std::size_t s = 0; s < nl.net.size(); ++s) out[s].center = nl.net[s];
        for (std::size_t k = 0; k < subset.size(); ++k) out[nl.assign[k]].members.push_back(subset[k]);
        for (auto& p : out) std::sort(p.members.begin(), p.members.end());
        return out;
    };

    if (opt.nesting == Nesting::refine_within_parent) {
        std::vector<std::uint32_t> rank(mu.size());
        for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<std::uint32_t>(k);
        protos[0] = cells(order, std::ldexp(opt.scale, -j_min));
        for (int l = 1; l < nlev; ++l) {
            const double delta = std::ldexp(opt.scale, -(j_min + l));
            for (auto& parent : protos[static_cast<std::size_t>(l - 1)]) {
                std::vector<std::uint32_t> subset = parent.members;
                std::sort(subset.begin(), subset.end(),
                          [&](std::uint32_t a, std::uint32_t b) { return rank[a] < rank[b]; });
                for (auto& child : cells(subset, delta)) {
                    parent.children.push_back(protos[static_cast<std::size_t>(l)].size());
                    protos[static_cast<std::size_t>(l)].push_back(std::move(child));
                }
            }
        }
    } else {
        // finest level raw; each coarser cell takes the children whose centers it owns
        protos.back() = cells(order, finest);
        for (int j = j_max - 1; j >= j_min; --j) {
            const auto lj = static_cast<std::size_t>(j - j_min);
            const NetLevel nl = net_level(mu, order, std::ldexp(opt.scale, -j) + pad);
            std::vector<std::uint32_t> slot_of(mu.size());
            for (std::size_t k = 0; k < order.size(); ++k) slot_of[order[k]] = nl.assign[k];
            const auto& fine = protos[lj + 1];
            std::vector<std::vector<std::size_t>> kids(nl.net.size());
            for (std::size_t c = 0; c < fine.size(); ++c) kids[slot_of[fine[c].center]].push_back(c);
            auto& lv = protos[lj];
            for (std::size_t s = 0; s < nl.net.size(); ++s) {
                if (kids[s].empty()) continue;
                Proto p;
                p.children = kids[s];
                for (auto c : p.children)
                    p.members.insert(p.members.end(), fine[c].members.begin(), fine[c].members.end());
                std::sort(p.members.begin(), p.members.end());
                p.center = nl.net[s];
                if (!std::binary_search(p.members.begin(), p.members.end(), p.center)) {
                    // net point went to a sibling with its child; use the nearest member
                    const Point2 z = mu.point(nl.net[s]);
                    double best = HUGE_VAL;
                    for (auto i : p.members) {
                        const double d = norm2(mu.point(i) - z);
                        if (d < best) { best = d; p.center = i; }
                    }
                }
                lv.push_back(std::move(p));
            }
        }
    }

    CubeLattice L;
    L.j_min_ = j_min;
    L.j_max_ = j_max;
    L.scale_ = opt.scale;
    L.levels_.resize(static_cast<std::size_t>(nlev));
    L.owner_.assign(static_cast<std::size_t>(nlev), std::vector<std::uint32_t>(mu.size()));
    std::vector<std::size_t> first(static_cast<std::size_t>(nlev) + 1, 0);
    for (int l = 0; l < nlev; ++l) first[l + 1] = first[l] + protos[l].size();
    L.cubes_.resize(first.back());
    double c0 = 1.0;
    for (int l = 0; l < nlev; ++l) {
        const double side = std::ldexp(opt.scale, -(j_min + l));
        for (std::size_t s = 0; s < protos[l].size(); ++s) {
            Proto& p = protos[l][s];
            Cube& q = L.cubes_[first[l] + s];
            q.level = j_min + l;
            q.id = first[l] + s;
            q.side = side;
            q.center_index = p.center;
            q.center = mu.point(p.center);
            CompensatedSum m;
            for (auto i : p.members) m.add(mu.weight(i));
            q.mass = m.value();
            if (p.members.size() > 1) {
                const auto [a, b] = farthest_pair(mu.points(), p.members);
                q.diam = norm(mu.point(a) - mu.point(b));
            }
            for (auto c : p.children) {
                q.children.push_back(first[l + 1] + c);
                L.cubes_[first[l + 1] + c].parent = q.id;
            }
            for (auto i : p.members) L.owner_[l][i] = static_cast<std::uint32_t>(q.id);
            q.members = std::move(p.members);
            const double ratio = std::max({q.diam / side, q.mass / side, side / q.mass});
            q.bound_violation = ratio > opt.c0_reference;
            c0 = std::max(c0, ratio);
            L.levels_[l].push_back(q.id);
        }
    }
    L.c0_ = c0;
    return L;
}

BalancedPair balanced_points(const DiscreteMeasure& mu, const Cube& Q) {
    if (Q.members.size() < 2) throw Error(Errc::degenerate_cube, "cube has a single member");
    const auto [a, b] = farthest_pair(mu.points(), Q.members);
    BalancedPair bp;
    bp.i0 = a;
    bp.i1 = b;
    bp.x0 = mu.point(a);
    bp.x1 = mu.point(b);
    bp.eta = norm(bp.x1 - bp.x0) / Q.side;
    return bp;
}

GoodPair good_balanced_points(const DiscreteMeasure& mu, const Cube& Q, double A, double c_star,
                              const GoodPairOptions& opt) {
    if (Q.members.size() < 2) throw Error(Errc::degenerate_cube, "cube has a single member");
    if (!(A > 1.0)) throw Error(Errc::invalid_argument, "A must exceed 1");
    if (!(c_star >= 0.0)) throw Error(Errc::invalid_argument, "c_star must be non-negative");

    const BetaValue bq = beta_cube(mu, Q);
    std::vector<std::uint32_t> cand;
    const std::size_t m = Q.members.size();
    const std::size_t k = std::min(m, std::max<std::size_t>(opt.max_candidates, 2));
    for (std::size_t s = 0; s < k; ++s) cand.push_back(Q.members[s * m / k]);

    std::vector<double> dist(cand.size()), bsq(cand.size());
    CompensatedSum wsum, wb;
    for (std::size_t s = 0; s < cand.size(); ++s) {
        dist[s] = bq.line.distance(mu.point(cand[s]));
        const double b = beta_point_cube(mu, mu.point(cand[s]), Q, A);
        bsq[s] = b * b;
        wsum.add(mu.weight(cand[s]));
        wb.add(mu.weight(cand[s]) * bsq[s]);
    }
    const double mean_bsq = wb.value() / wsum.value();
    // floors keep exactly flat data from failing on rounding noise
    const double dist_floor = 1e-12 * Q.side;
    const double bsq_floor = 1e-24;

    double c = c_star;
    for (int attempt = 0; attempt <= opt.max_doublings; ++attempt) {
        std::vector<std::uint32_t> ok;
        for (std::size_t s = 0; s < cand.size(); ++s)
            if (dist[s] <= c * bq.beta * Q.side + dist_floor && bsq[s] <= c * mean_bsq + bsq_floor)
                ok.push_back(cand[s]);
        if (ok.size() >= 2) {
            std::sort(ok.begin(), ok.end());
            const auto [a, b] = farthest_pair(mu.points(), ok);
            GoodPair g;
            g.pair.i0 = a;
            g.pair.i1 = b;
            g.pair.x0 = mu.point(a);
            g.pair.x1 = mu.point(b);
            g.pair.eta = norm(g.pair.x1 - g.pair.x0) / Q.side;
            g.c_star_used = c;
            g.admissible = ok.size();
            return g;
        }
        c *= 2.0;
    }
    throw Error(Errc::no_good_points, "filters left fewer than two candidates");
}

Line balanced_line(const Point2& x0, const Point2& x1) { return Line::through_points(x0, x1); }

double boundary_mass_fraction(const DiscreteMeasure& mu, const CubeLattice& L, int j, double tau) {
    if (!(tau > 0.0)) throw Error(Errc::invalid_argument, "tau must be positive");
    const double side = std::ldexp(L.scale(), -j);
    CompensatedSum near, total;
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < mu.size(); ++i) {
        total.add(mu.weight(i));
        const auto own = L.owner(j, i);
        mu.ball_indices(mu.point(i), tau * side, idx);
        for (auto k : idx) {
            if (L.owner(j, k) != own) {
                near.add(mu.weight(i));
                break;
            }
        }
    }
    return near.value() / total.value();
}

namespace {

nlohmann::json cube_json(const CubeLattice& L, std::size_t id) {
    const Cube& q = L.cube(id);
    nlohmann::json j{{"level", q.level},
                     {"id", q.id},
                     {"center", {q.center.x, q.center.y}},
                     {"side", q.side},
                     {"mass", q.mass},
                     {"diam", q.diam},
                     {"members", q.members.size()}};
    j["children"] = nlohmann::json::array();
    for (auto c : q.children) j["children"].push_back(cube_json(L, c));
    return j;
}

}  // namespace

std::string lattice_to_json(const CubeLattice& L) {
    nlohmann::json j{{"j_min", L.j_min()}, {"j_max", L.j_max()}, {"scale", L.scale()}, {"C0", L.C0()}};
    j["cubes"] = nlohmann::json::array();
    for (auto id : L.level(L.j_min())) j["cubes"].push_back(cube_json(L, id));
    return j.dump(1);
}

}  // namespace symflat
