#pragma once

#include <string>
#include <vector>

#include "qfi/geometry.hpp"
#include "qfi/linear.hpp"
#include "qfi/potential.hpp"
#include "qfi/qfi.hpp"

namespace qfi {

// A produced integral failed the exact dI/dt = 0 gate. Always a bug in the
// assembly, never a property of the input; callers should not continue.
struct VerificationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct UnknownLabel {
    std::string block;
    int index = 0;
};

// Linear expression in the unknowns with ring-element coefficients.
using LinearExpr = std::vector<std::pair<int, RingElem>>;

struct ConstraintSystem {
    std::vector<UnknownLabel> labels;
    RatMatrix matrix;
};

// One matrix row per (equation, canonical monomial) pair, rows grouped by
// equation in the given order, monomials in graded-lex order within each.
ConstraintSystem assemble(const std::vector<LinearExpr>& equations,
                          std::vector<UnknownLabel> labels);

struct SolutionSpace {
    int family = 1;
    // Reported quadratic families (the counting used by the reports).
    std::vector<Qfi> basis;
    std::vector<std::vector<Rational>> param_basis;
    // Directions that degenerate to linear first integrals (no quadratic
    // velocity part anywhere); kept separately so nothing is lost.
    std::vector<Qfi> lfi_basis;
    std::vector<std::vector<Rational>> lfi_param_basis;
};

// Family with time dependence up to t^2:
//   I = -t^2/2 L_(a;b) v^a v^b + C_ab v^a v^b + t L_a v^a + t^2/2 L_a V^,a + G
// over all Killing tensors C, generators L with (L_b V^,b)_,a = -2 L_(a;b) V^,b
// and scalars G with G_,a = 2 C_ab V^,b - L_a. Constant shifts of G are fixed
// to zero, which removes the trivial constant integrals.
SolutionSpace solve_family_t2(const GeometryConfig& g, const Potential& V);

// Family with time dependence up to t^3:
//   I = -t^3/3 L_(a;b) v^a v^b + t^2 L_a v^a + t^3/3 L_a V^,a
//       - t B_(a;b) v^a v^b + B_a v^a + t B_a V^,a
// with (L_b V^,b)_,a = -2 L_(a;b) V^,b and
// (B_b V^,b)_,a = -2 B_(a;b) V^,b - 2 L_a. For V != 0 directions whose
// quadratic part vanishes identically degenerate to linear integrals and are
// reported under lfi_basis; the geodesic case keeps the whole family.
SolutionSpace solve_family_t3(const GeometryConfig& g, const Potential& V);

// Exact dI/dt = 0 for a candidate integral; used as the gate on every output.
bool satisfies_derivative_gate(const Qfi& I, const Potential& V);

// (L_b V^,b)_,a + 2 L_(a;b) V^,b, the left side shared by the generator
// conditions of all three families.
RingElem generator_condition(const VectorField& l, const SymMat& ls, const Potential& V, int axis);

}  // namespace qfi
