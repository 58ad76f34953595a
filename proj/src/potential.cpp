#include "qfi/potential.hpp"

namespace qfi {

Potential make_potential(const RingElem& expr) {
    Potential v;
    v.dim = expr.dim();
    v.expr = expr;
    v.grad.reserve(v.dim);
    for (int a = 0; a < v.dim; ++a) v.grad.push_back(expr.partial(a));
    return v;
}

std::optional<PowerLawForm> power_law_form(const Potential& v) {
    if (v.expr.is_zero() || v.expr.is_constant()) return std::nullopt;
    const auto& terms = v.expr.terms();
    if (terms.size() == 1) {
        const auto& [mono, c] = *terms.begin();
        if (mono.degree() == 0 && mono.r != 0) return PowerLawForm{Rational(-c), -mono.r};
    }
    // Positive even powers live as polynomials in rho; odd ones carry one r.
    const Rational lead = terms.rbegin()->second;
    const RingElem base = rho(v.expr.dim());
    RingElem power = RingElem::constant(v.expr.dim(), 1);
    for (int j = 1; j <= 6; ++j) {
        power = power * base;
        if (v.expr == lead * power) return PowerLawForm{Rational(-lead), -2 * j};
        if (v.expr == lead * (power * RingElem::radial(v.expr.dim())))
            return PowerLawForm{Rational(-lead), -(2 * j + 1)};
    }
    return std::nullopt;
}

}  // namespace qfi
