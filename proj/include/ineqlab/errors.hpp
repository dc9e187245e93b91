#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ineqlab {

// Raised by the adaptive integrator when the integrand produces a non-finite
// sample. Carries the offending abscissa so callers can report where the
// integrand blew up.
class singularity_error : public std::runtime_error {
public:
    singularity_error(double abscissa, const std::string& what)
        : std::runtime_error(what), abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

// Raised by the text parsers (function specs, class ids, sweep configs).
// Position is a zero-based byte offset into the input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}
