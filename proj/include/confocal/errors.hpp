#pragma once

#include <stdexcept>
#include <string>

namespace confocal {

// Parameter validation failures use std::invalid_argument, mathematical
// domain violations std::domain_error.  The two below cover the remaining
// failure modes so the C API can map every throw to a distinct status code.

// Degenerate geometric configuration (parallel lines, non-planar face,
// non-tangential cell, ...).
class geometry_error : public std::runtime_error {
public:
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative procedure failed to converge.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace confocal
