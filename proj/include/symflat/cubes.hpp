#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symflat/geometry.hpp"
#include "symflat/measure.hpp"

namespace symflat {

struct Cube {
    int level = 0;
    std::size_t id = 0;
    std::vector<std::uint32_t> members;  // ascending indices into the measure
    Point2 center{};
    std::uint32_t center_index = 0;
    double side = 0.0;
    double mass = 0.0;
    double diam = 0.0;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    bool bound_violation = false;  // some size/mass ratio exceeds the reference C0
};

enum class Nesting {
    // top-down: each parent is split by a greedy net of its own members
    refine_within_parent,
    // bottom-up: one global net per level, each child moves to the cell owning its center
    child_center,
};

struct LatticeOptions {
    double scale = 1.0;          // side length at level 0
    double c0_reference = 10.0;  // threshold for per-cube violation flags
    Nesting nesting = Nesting::refine_within_parent;
};

class CubeLattice {
public:
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    double scale() const { return scale_; }
    double C0() const { return c0_; }
    std::size_t size() const { return cubes_.size(); }

    const Cube& cube(std::size_t id) const { return cubes_.at(id); }
    const std::vector<Cube>& cubes() const { return cubes_; }
    const std::vector<std::size_t>& level(int j) const;
    // Q itself and every cube below it, by ascending id.
    std::vector<std::size_t> descendants(std::size_t id) const;
    // Walk up `steps` levels, stopping at the top level.
    std::size_t ancestor(std::size_t id, int steps) const;
    // Id of the cube at level j containing support point i.
    std::size_t owner(int j, std::uint32_t i) const;

private:
    friend CubeLattice build_lattice(const DiscreteMeasure&, int, int, const LatticeOptions&);

    int j_min_ = 0;
    int j_max_ = 0;
    double scale_ = 1.0;
    double c0_ = 1.0;
    std::vector<Cube> cubes_;
    std::vector<std::vector<std::size_t>> levels_;
    std::vector<std::vector<std::uint32_t>> owner_;  // per level: point -> cube id
};

CubeLattice build_lattice(const DiscreteMeasure& mu, int j_min, int j_max, const LatticeOptions& opt = {});

struct BalancedPair {
    Point2 x0{};
    Point2 x1{};
    std::uint32_t i0 = 0;
    std::uint32_t i1 = 0;
    double eta = 0.0;  // |x1 - x0| / side
};

BalancedPair balanced_points(const DiscreteMeasure& mu, const Cube& Q);

struct GoodPairOptions {
    std::size_t max_candidates = 256;  // members examined by the G filter (even stride)
    int max_doublings = 8;
};

struct GoodPair {
    BalancedPair pair;
    double c_star_used = 0.0;
    std::size_t admissible = 0;  // candidates passing both filters
};

GoodPair good_balanced_points(const DiscreteMeasure& mu, const Cube& Q, double A, double c_star,
                              const GoodPairOptions& opt = {});

Line balanced_line(const Point2& x0, const Point2& x1);

// Mass fraction of level-j points lying within tau*side of another cube.
double boundary_mass_fraction(const DiscreteMeasure& mu, const CubeLattice& L, int j, double tau);

std::string lattice_to_json(const CubeLattice& L);

}  // namespace symflat
