#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qfi {

// Exact rational scalar. GMP keeps the canonical form we rely on everywhere:
// gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool rat_sgn_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "a", "-a/b" or a finite decimal like "0.125", all exactly.
Rational rational_from_string(const std::string& text);

// True when q = (p/s)^2 for integers p, s; root receives p/s >= 0.
bool rational_sqrt(const Rational& q, Rational& root);

// Writes q as c^2 * m with m square-free (sign of m = sign of q, m != 0 for q != 0).
// Used to put radicals sqrt(q) = c*sqrt(m) into canonical form.
void squarefree_decompose(const Rational& q, Rational& c, long& m);

}  // namespace qfi
