#pragma once

#include <array>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qfi/rational.hpp"

namespace qfi {

// Monomial q1^e1 q2^e2 q3^e3 * r^re in the ring Q[q][r, 1/r] / (r^2 - rho),
// rho = sum q_i^2. Canonical exponent range: re <= 1 (higher even/odd powers
// of r reduce to polynomials times r^0 or r^1).
struct Monomial {
    std::array<int, 3> q{0, 0, 0};
    int r = 0;

    int degree() const { return q[0] + q[1] + q[2]; }
    bool is_unit() const { return q[0] == 0 && q[1] == 0 && q[2] == 0 && r == 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // Graded order: by coordinate degree, then lexicographic with x > y > z,
    // then r exponent. Gives the deterministic row/display ordering.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        if (auto c = a.q[0] <=> b.q[0]; c != 0) return c;
        if (auto c = a.q[1] <=> b.q[1]; c != 0) return c;
        if (auto c = a.q[2] <=> b.q[2]; c != 0) return c;
        return a.r <=> b.r;
    }
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularEvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of Q[q1..qn][r, 1/r] / (r^2 - rho) in canonical form: no zero
// coefficients, r exponents <= 1, and at every level r^e with e <= -1 the
// attached polynomial is fully reduced modulo rho (no monomial divisible by
// x^2, the leading monomial of rho under lex x > y > z). Canonical forms are
// unique, so equality of elements is equality of the term maps.
class RingElem {
  public:
    explicit RingElem(int dim = 3);
    static RingElem zero(int dim) { return RingElem(dim); }
    static RingElem constant(int dim, const Rational& value);
    static RingElem coordinate(int dim, int axis);
    static RingElem radial(int dim, int exponent = 1);
    static RingElem monomial(int dim, const Monomial& m, const Rational& coeff = 1);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coeff(const Monomial& m) const;

    RingElem& operator+=(const RingElem& other);
    RingElem& operator-=(const RingElem& other);
    RingElem& operator*=(const Rational& scale);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(RingElem a, const Rational& s) { return a *= s; }
    friend RingElem operator*(const Rational& s, RingElem a) { return a *= s; }
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem operator-() const;
    RingElem pow(unsigned exponent) const;

    // Exact partial derivative; d r / d q_a = q_a / r.
    RingElem partial(int axis) const;

    double eval(std::span<const double> point) const;

    // Canonical display, parseable by the potential grammar ("x", "r^-1",
    // "1/2*x^2*y", terms joined with " + " / " - ", zero prints "0").
    std::string str() const;

    friend bool operator==(const RingElem&, const RingElem&) = default;

  private:
    void add_term(std::array<int, 3> exps, int r_exp, const Rational& coeff);
    void reduce_negative_levels();
    void check_dim(const RingElem& other) const;

    int dim_;
    std::map<Monomial, Rational> terms_;

    friend RingElem ring_product(const RingElem& a, const RingElem& b);
};

RingElem rho(int dim);  // sum of squared coordinates

double eval_monomial(const Monomial& m, std::span<const double> point);

// Finite monomial ansatz for an unknown scalar whose gradient should match
// the span of `rhs`: coordinate degree up to max degree + degree_margin,
// r exponents from the lowest seen up to r_margin above the highest (clamped
// to the canonical <= 1, always including the polynomial levels 0 and 1).
// Only monomials in reduced form are emitted, so the ansatz is linearly
// independent over the ring. The margins are adjustable in case a potential
// ever needs a wider scalar ansatz; every emitted integral is still verified
// against the exact derivative gate downstream.
std::vector<Monomial> antiderivative_ansatz_basis(const std::vector<RingElem>& rhs, int dim,
                                                  int degree_margin = 1, int r_margin = 2);

}  // namespace qfi
