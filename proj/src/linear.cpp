#include "qfi/linear.hpp"

#include <algorithm>
#include <numeric>

namespace qfi {

RatMatrix RatMatrix::zeros(int rows, int cols) {
    RatMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entry.assign(rows, std::vector<Rational>(cols, Rational(0)));
    return m;
}

namespace {

// Denominator-cleared copy with rows scaled to integers.
std::vector<std::vector<Integer>> integer_rows(const RatMatrix& m) {
    std::vector<std::vector<Integer>> rows(m.rows, std::vector<Integer>(m.cols));
    for (int i = 0; i < m.rows; ++i) {
        Integer scale = 1;
        for (int j = 0; j < m.cols; ++j)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.entry[i][j].get_den().get_mpz_t());
        for (int j = 0; j < m.cols; ++j) {
            const Rational& q = m.entry[i][j];
            rows[i][j] = q.get_num() * (scale / q.get_den());
        }
    }
    return rows;
}

// Fraction-free forward elimination over the given column order. Returns the
// pivot (row, column) pairs in elimination order; `a` ends up in echelon form.
std::vector<std::pair<int, int>> bareiss(std::vector<std::vector<Integer>>& a,
                                         const std::vector<int>& column_order) {
    const int rows = static_cast<int>(a.size());
    std::vector<std::pair<int, int>> pivots;
    Integer previous = 1;
    int pivot_row = 0;
    for (int col : column_order) {
        if (pivot_row >= rows) break;
        int found = -1;
        for (int i = pivot_row; i < rows; ++i)
            if (sgn(a[i][col]) != 0) {
                found = i;
                break;
            }
        if (found < 0) continue;
        std::swap(a[pivot_row], a[found]);
        for (int i = pivot_row + 1; i < rows; ++i) {
            for (size_t j = 0; j < a[i].size(); ++j) {
                if (static_cast<int>(j) == col) continue;
                Integer value = a[pivot_row][col] * a[i][j] - a[i][col] * a[pivot_row][j];
                mpz_divexact(a[i][j].get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
            }
            a[i][col] = 0;
        }
        previous = a[pivot_row][col];
        pivots.emplace_back(pivot_row, col);
        ++pivot_row;
    }
    return pivots;
}

}  // namespace

int rank(const RatMatrix& m, bool reverse_columns) {
    auto a = integer_rows(m);
    std::vector<int> order(m.cols);
    std::iota(order.begin(), order.end(), 0);
    if (reverse_columns) std::reverse(order.begin(), order.end());
    return static_cast<int>(bareiss(a, order).size());
}

void make_integer_primitive(std::vector<Rational>& v) {
    Integer denom_lcm = 1;
    for (const Rational& q : v)
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    Integer content = 0;
    for (const Rational& q : v) {
        Integer scaled = q.get_num() * (denom_lcm / q.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    if (sgn(content) == 0) return;
    int lead = 0;
    for (Rational& q : v) {
        q *= Rational(denom_lcm, content);
        q.canonicalize();
        if (lead == 0) lead = sgn(q);
    }
    if (lead < 0)
        for (Rational& q : v) q = -q;
}

std::vector<std::vector<Rational>> nullspace(const RatMatrix& m) {
    auto a = integer_rows(m);
    std::vector<int> order(m.cols);
    std::iota(order.begin(), order.end(), 0);
    const auto pivots = bareiss(a, order);

    std::vector<int> pivot_column_of_row(pivots.size());
    std::vector<bool> is_pivot_column(m.cols, false);
    for (size_t k = 0; k < pivots.size(); ++k) {
        pivot_column_of_row[k] = pivots[k].second;
        is_pivot_column[pivots[k].second] = true;
    }

    std::vector<std::vector<Rational>> basis;
    for (int free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot_column[free_col]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[free_col] = 1;
        // Back-substitute through the echelon rows.
        for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
            const int row = pivots[k].first;
            const int col = pivot_column_of_row[k];
            Rational accumulated = 0;
            for (int j = 0; j < m.cols; ++j) {
                if (j == col) continue;
                if (sgn(a[row][j]) != 0 && !rat_sgn_zero(v[j]))
                    accumulated += Rational(a[row][j]) * v[j];
            }
            v[col] = -accumulated / Rational(a[row][col]);
            v[col].canonicalize();
        }
        make_integer_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rational> matrix_apply(const RatMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.rows, Rational(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!rat_sgn_zero(m.entry[i][j]) && !rat_sgn_zero(v[j])) out[i] += m.entry[i][j] * v[j];
    return out;
}

bool in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target,
             std::vector<Rational>* coefficients) {
    if (basis.empty()) {
        for (const Rational& q : target)
            if (!rat_sgn_zero(q)) return false;
        if (coefficients) coefficients->clear();
        return true;
    }
    const int dim = static_cast<int>(target.size());
    const int count = static_cast<int>(basis.size());
    // Solve [basis^T | target] by rational Gauss elimination.
    RatMatrix m = RatMatrix::zeros(dim, count + 1);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < count; ++j) m.at(i, j) = basis[j][i];
        m.at(i, count) = target[i];
    }
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < count && row < dim; ++col) {
        int found = -1;
        for (int i = row; i < dim; ++i)
            if (!rat_sgn_zero(m.at(i, col))) {
                found = i;
                break;
            }
        if (found < 0) continue;
        std::swap(m.entry[row], m.entry[found]);
        for (int i = 0; i < dim; ++i) {
            if (i == row || rat_sgn_zero(m.at(i, col))) continue;
            Rational factor = m.at(i, col) / m.at(row, col);
            for (int j = col; j <= count; ++j) {
                m.at(i, j) -= factor * m.at(row, j);
                m.at(i, j).canonicalize();
            }
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int i = row; i < dim; ++i)
        if (!rat_sgn_zero(m.at(i, count))) return false;
    if (coefficients) {
        coefficients->assign(count, Rational(0));
        for (int k = 0; k < row; ++k) {
            (*coefficients)[pivot_col_of_row[k]] = m.at(k, count) / m.at(k, pivot_col_of_row[k]);
            (*coefficients)[pivot_col_of_row[k]].canonicalize();
        }
    }
    return true;
}

}  // namespace qfi
