#pragma once

#include <vector>

#include "qfi/rational.hpp"

namespace qfi {

// Dense exact rational matrix; rows are equations, columns unknowns.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rational>> entry;

    static RatMatrix zeros(int rows, int cols);
    Rational& at(int r, int c) { return entry[r][c]; }
    const Rational& at(int r, int c) const { return entry[r][c]; }
};

// Rank by fraction-free (Bareiss) elimination on the denominator-cleared
// integer matrix. With reverse_columns the elimination walks the columns from
// the right, giving an independent pivot order for cross-checking.
int rank(const RatMatrix& m, bool reverse_columns = false);

// Exact kernel basis. Free variables are taken in column order, one basis
// vector per free column, each scaled integer-primitive with the first
// nonzero entry positive. Deterministic.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& m);

// Divides by the gcd, clears denominators and makes the first nonzero entry
// positive. No-op on the zero vector.
void make_integer_primitive(std::vector<Rational>& v);

std::vector<Rational> matrix_apply(const RatMatrix& m, const std::vector<Rational>& v);

// Least-squares-free exact membership test: is `target` a linear combination
// of `basis`? On success writes the coefficients.
bool in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target,
             std::vector<Rational>* coefficients = nullptr);

}  // namespace qfi
