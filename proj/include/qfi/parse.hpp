#pragma once

#include <string>

#include "qfi/potential.hpp"
#include "qfi/ring.hpp"

namespace qfi {

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    size_t position;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? base ('^' ('-')? integer)?
//   base   := number | coordinate | 'r' | '(' expr ')'
// Numbers are integers or finite decimals, converted exactly. Coordinates are
// x, y, z or q1..qn. Division and negative powers are only defined for
// invertible factors: nonzero numbers, r powers and products of those.
RingElem parse_ring_elem(const std::string& text, int dim);

Potential parse_potential(const std::string& text, int dim);

}  // namespace qfi
