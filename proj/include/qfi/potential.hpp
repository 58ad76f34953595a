#pragma once

#include <optional>
#include <vector>

#include "qfi/ring.hpp"

namespace qfi {

// Conservative potential with its cached exact gradient.
struct Potential {
    int dim = 3;
    RingElem expr;
    std::vector<RingElem> grad;

    bool is_zero() const { return expr.is_zero(); }
};

Potential make_potential(const RingElem& expr);

// Recognizes V = -k * r^(-ell) (ell != 0); positive even powers are stored as
// polynomials in rho, so the match is structural, not textual.
struct PowerLawForm {
    Rational k;
    int ell;
};
std::optional<PowerLawForm> power_law_form(const Potential& v);

}  // namespace qfi
