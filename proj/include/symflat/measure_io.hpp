#pragma once

#include <iosfwd>
#include <string>

#include "symflat/measure.hpp"

namespace symflat {

// CSV with mandatory header `x,y,w`. Lines starting with '#' are comments;
// a comment of the form `# spacing=<h>` restores the pitch metadata.
DiscreteMeasure read_measure_csv(std::istream& in);
DiscreteMeasure load_measure_csv(const std::string& path);

// Shortest round-trip decimal representation, so load(save(mu)) is bit-exact.
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu);
void save_measure_csv(const std::string& path, const DiscreteMeasure& mu);

std::string format_double(double v);

}  // namespace symflat
