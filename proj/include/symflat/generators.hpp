#pragma once

#include <cstdint>
#include <string>

#include "symflat/measure.hpp"

namespace symflat {

enum class GeneratorKind {
    line,
    segment,
    equidistant_lines,
    circle,
    cross,
    lipschitz_graph,
    lebesgue_grid,
    perturbed_line,
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::line;
    double h = 1e-3;          // spacing
    double extent = 10.0;     // length of each line (side of the grid square)
    int m = 5;                // line count
    double gap = 1.0;         // distance between parallel lines
    double amplitude = 0.01;  // graph y = amplitude * sin(x)
    double sigma = 0.01;      // transverse noise of perturbed_line
    double radius = 1.0;      // circle radius
    double angle = 0.0;       // rotation applied to line-like generators
    std::uint64_t seed = 1;
};

GeneratorKind parse_generator_kind(const std::string& s);
const char* generator_name(GeneratorKind k);

// Weights are local density times h (h^2 for the planar grid).
DiscreteMeasure generate(const GeneratorSpec& spec);

}  // namespace symflat
