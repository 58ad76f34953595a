#include "qfi/pencil.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

#include "qfi/phase.hpp"

namespace qfi {

namespace {

// Dense polynomial over Q, coefficient of degree k at index k.
struct QPoly {
    std::vector<Rational> c;

    static QPoly constant(const Rational& v) {
        QPoly p;
        if (sgn(v) != 0) p.c.push_back(v);
        return p;
    }
    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }
    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (int k = degree(); k >= 0; --k) acc = acc * x + c[k];
        return acc;
    }
};

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.zero() || b.zero()) return {};
    QPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    QPoly out = a;
    if (out.c.size() < b.c.size()) out.c.resize(b.c.size(), Rational(0));
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] -= b.c[i];
    out.trim();
    return out;
}

// Exact division; the Bareiss update is divisible by the previous pivot.
QPoly divexact(const QPoly& num, const QPoly& den) {
    if (num.zero()) return {};
    if (den.zero()) throw std::logic_error("polynomial division by zero");
    QPoly rem = num;
    QPoly quot;
    quot.c.assign(std::max<size_t>(num.c.size() - den.c.size() + 1, 1), Rational(0));
    while (!rem.zero() && rem.degree() >= den.degree()) {
        const int shift = rem.degree() - den.degree();
        Rational factor = rem.c.back() / den.c.back();
        factor.canonicalize();
        quot.c[shift] += factor;
        for (size_t i = 0; i < den.c.size(); ++i) rem.c[shift + i] -= factor * den.c[i];
        rem.trim();
    }
    if (!rem.zero()) throw std::logic_error("inexact polynomial division in elimination");
    quot.trim();
    return quot;
}

// Fraction-free elimination over Q[mu]; returns the pivot polynomials.
std::vector<QPoly> polynomial_pivots(std::vector<std::vector<QPoly>>& a) {
    if (a.empty()) return {};
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    std::vector<QPoly> pivots;
    QPoly previous = QPoly::constant(1);
    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows; ++col) {
        int found = -1;
        for (int i = pivot_row; i < rows; ++i)
            if (!a[i][col].zero()) {
                found = i;
                break;
            }
        if (found < 0) continue;
        std::swap(a[pivot_row], a[found]);
        for (int i = pivot_row + 1; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                if (j == col) continue;
                a[i][j] = divexact(a[pivot_row][col] * a[i][j] - a[i][col] * a[pivot_row][j], previous);
            }
            a[i][col] = {};
        }
        previous = a[pivot_row][col];
        pivots.push_back(previous);
        ++pivot_row;
    }
    return pivots;
}

std::vector<double> real_roots(const QPoly& p) {
    QPoly work = p;
    work.trim();
    // strip mu^k factors; the root 0 is never a valid rate
    size_t low = 0;
    while (low < work.c.size() && sgn(work.c[low]) == 0) ++low;
    std::vector<Rational> coeffs(work.c.begin() + low, work.c.end());
    if (coeffs.size() <= 1) return {};
    const int deg = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        companion(i, deg - 1) = -Rational(coeffs[i] / coeffs[deg]).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<double> roots;
    for (int i = 0; i < deg; ++i) {
        const auto z = solver.eigenvalues()(i);
        if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z.real())))
            roots.push_back(z.real());
    }
    return roots;
}

// Best continued-fraction rational with denominator <= 10^6.
bool rationalize(double x, Rational& out) {
    long p_prev = 1, q_prev = 0;
    long p = static_cast<long>(std::floor(x));
    long q = 1;
    double rest = x - std::floor(x);
    for (int iter = 0; iter < 40; ++iter) {
        if (std::abs(x - static_cast<double>(p) / q) < 1e-9 * std::max(1.0, std::abs(x))) {
            out = Rational(p, q);
            out.canonicalize();
            return true;
        }
        if (rest < 1e-12) break;
        const double inv = 1.0 / rest;
        const long a = static_cast<long>(std::floor(inv));
        rest = inv - std::floor(inv);
        const long p_next = a * p + p_prev;
        const long q_next = a * q + q_prev;
        if (q_next > 1000000 || q_next <= 0) break;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    return false;
}

RatMatrix pencil_at(const Pencil& pencil, const Rational& mu) {
    RatMatrix m = pencil.A;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (sgn(pencil.B.entry[i][j]) != 0) m.entry[i][j] += mu * pencil.B.entry[i][j];
    return m;
}

double smallest_relative_singular_value(const Pencil& pencil, double mu) {
    Eigen::MatrixXd m(pencil.A.rows, pencil.A.cols);
    for (int i = 0; i < pencil.A.rows; ++i)
        for (int j = 0; j < pencil.A.cols; ++j)
            m(i, j) = pencil.A.entry[i][j].get_d() + mu * pencil.B.entry[i][j].get_d();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0.0;
    return sigma(sigma.size() - 1) / sigma(0);
}

}  // namespace

Pencil build_pencil(const GeometryConfig& g, const Potential& V) {
    if (V.dim != g.dim) throw DimensionError("potential dimension does not match geometry");
    const int dim = g.dim;
    const auto gens = l_family_basis(g);
    std::vector<SymMat> derivs;
    for (const VectorField& l : gens) derivs.push_back(symm_deriv(l));
    const int nl = static_cast<int>(gens.size());

    Pencil pencil;
    pencil.dim = dim;
    for (int j = 0; j < nl; ++j) pencil.labels.push_back({"gen_l", j});

    std::vector<std::vector<Rational>> a_rows, b_rows;
    for (int axis = 0; axis < dim; ++axis) {
        std::vector<RingElem> a_part, b_part;
        for (int j = 0; j < nl; ++j) {
            a_part.push_back(generator_condition(gens[j], derivs[j], V, axis));
            b_part.push_back(gens[j].comp[axis]);
        }
        std::set<Monomial> monos;
        for (const RingElem& e : a_part)
            for (const auto& [m, c] : e.terms()) monos.insert(m);
        for (const RingElem& e : b_part)
            for (const auto& [m, c] : e.terms()) monos.insert(m);
        for (const Monomial& m : monos) {
            std::vector<Rational> ra(nl, Rational(0)), rb(nl, Rational(0));
            for (int j = 0; j < nl; ++j) {
                ra[j] = a_part[j].coeff(m);
                rb[j] = b_part[j].coeff(m);
            }
            a_rows.push_back(std::move(ra));
            b_rows.push_back(std::move(rb));
        }
    }
    pencil.A.rows = pencil.B.rows = static_cast<int>(a_rows.size());
    pencil.A.cols = pencil.B.cols = nl;
    pencil.A.entry = std::move(a_rows);
    pencil.B.entry = std::move(b_rows);
    return pencil;
}

PencilScan critical_rates(const Pencil& pencil) {
    PencilScan scan;
    std::vector<std::vector<QPoly>> entries(pencil.A.rows, std::vector<QPoly>(pencil.A.cols));
    for (int i = 0; i < pencil.A.rows; ++i)
        for (int j = 0; j < pencil.A.cols; ++j) {
            QPoly p;
            p.c = {pencil.A.entry[i][j], pencil.B.entry[i][j]};
            p.trim();
            entries[i][j] = std::move(p);
        }
    const std::vector<QPoly> pivots = polynomial_pivots(entries);
    scan.generic_rank = static_cast<int>(pivots.size());

    std::set<Rational> exact_candidates;
    std::vector<double> stray;
    for (const QPoly& pivot : pivots) {
        for (double root : real_roots(pivot)) {
            Rational candidate;
            if (rationalize(root, candidate)) {
                if (sgn(candidate) != 0 && sgn(pivot.eval(candidate)) == 0) {
                    exact_candidates.insert(candidate);
                    continue;
                }
            }
            if (std::abs(root) > 1e-9) stray.push_back(root);
        }
    }
    for (const Rational& mu : exact_candidates) {
        const RatMatrix at = pencil_at(pencil, mu);
        if (rank(at) < scan.generic_rank) {
            CriticalRate rate;
            rate.mu = mu;
            rate.kernel = nullspace(at);
            scan.rates.push_back(std::move(rate));
        }
    }
    std::sort(scan.rates.begin(), scan.rates.end(),
              [](const CriticalRate& a, const CriticalRate& b) { return a.mu < b.mu; });
    std::sort(stray.begin(), stray.end());
    for (double root : stray) {
        if (!scan.numeric.empty() && std::abs(scan.numeric.back().mu - root) < 1e-7) continue;
        const double residual = smallest_relative_singular_value(pencil, root);
        if (residual < 1e-6) scan.numeric.push_back({root, residual});
    }
    return scan;
}

std::vector<ExponentialSolution> assemble_exp_family(const GeometryConfig& g, const Potential& V,
                                                     const PencilScan& scan) {
    std::vector<ExponentialSolution> out;
    for (const CriticalRate& rate : scan.rates) {
        ExponentialSolution sol;
        sol.rate = ExponentialRate{rate.mu, 1};
        for (const std::vector<Rational>& params : rate.kernel) {
            const VectorField L = l_from_params(g, params);
            SymMat LS = symm_deriv(L);
            RingElem lv(g.dim);
            for (int b = 0; b < g.dim; ++b) lv += L.comp[b] * V.grad[b];
            for (int sign : {1, -1}) {
                Qfi I(g.dim);
                QfiTerm term(g.dim, TimeBasis::exponential(rate.mu, sign));
                term.k2 = LS;
                term.k2 *= Rational(-1);
                term.k1 = L.comp;  // stored as the cofactor of lambda
                term.k0 = lv;
                I.terms.push_back(std::move(term));
                I.normalize();
                if (!satisfies_derivative_gate(I, V))
                    throw VerificationError(
                        "assembled exponential integral fails the exact derivative gate");
                sol.qfis.push_back(std::move(I));
            }
            sol.l_basis.push_back(L);
        }
        out.push_back(std::move(sol));
    }
    return out;
}

std::vector<ExponentialSolution> solve_family_exp(const GeometryConfig& g, const Potential& V) {
    const Pencil pencil = build_pencil(g, V);
    const PencilScan scan = critical_rates(pencil);
    return assemble_exp_family(g, V, scan);
}

}  // namespace qfi
