#pragma once

#include <vector>

#include "qfi/solver.hpp"

namespace qfi {

// Linear pencil A + mu*B in mu = lambda^2 for the exponential family
//   I = e^{lambda t} (-L_(a;b) v^a v^b + lambda L_a v^a + L_a V^,a),
// rows indexed by (axis, canonical monomial) of the condition
//   (L_b V^,b)_,a + 2 L_(a;b) V^,b + lambda^2 L_a = 0,
// columns by the generator family parameters.
struct Pencil {
    int dim = 3;
    std::vector<UnknownLabel> labels;
    RatMatrix A;  // rate-independent part
    RatMatrix B;  // coefficient of mu
};

Pencil build_pencil(const GeometryConfig& g, const Potential& V);

struct CriticalRate {
    Rational mu;
    std::vector<std::vector<Rational>> kernel;
};

// Irrational (or otherwise non-rationalizable) real rank-drop candidate,
// reported with the smallest relative singular value of A + mu*B as residual.
struct NumericRateCandidate {
    double mu = 0;
    double residual = 0;
};

struct PencilScan {
    int generic_rank = 0;
    std::vector<CriticalRate> rates;          // exact, mu != 0, kernel nonempty
    std::vector<NumericRateCandidate> numeric;
};

// Generic rank over Q(mu) by fraction-free elimination with polynomial
// pivots; candidate rates are the real roots of the pivot polynomials, every
// exact candidate certified by an exact rank recomputation at that mu.
PencilScan critical_rates(const Pencil& p);

struct ExponentialSolution {
    ExponentialRate rate;  // positive-sign representative; both signs assembled
    std::vector<VectorField> l_basis;
    std::vector<Qfi> qfis;  // for each kernel vector: sign +1 then sign -1
};

std::vector<ExponentialSolution> solve_family_exp(const GeometryConfig& g, const Potential& V);
std::vector<ExponentialSolution> assemble_exp_family(const GeometryConfig& g, const Potential& V,
                                                     const PencilScan& scan);

}  // namespace qfi
