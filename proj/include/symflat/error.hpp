#pragma once

#include <stdexcept>
#include <string>

namespace symflat {

enum class Errc {
    invalid_argument,
    undefined_at_origin,
    not_a_homeomorphism,
    inadmissible_kernel,
    resolution_exhausted,
    degenerate_cube,
    no_good_points,
    degenerate_pair,
    empty_ball,
    scale_out_of_range,
    invalid_cutoff,
    wrong_regime,
    io_error,
    parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace symflat
