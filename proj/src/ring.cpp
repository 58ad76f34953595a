#include "qfi/ring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfi {

RingElem::RingElem(int dim) : dim_(dim) {
    if (dim < 1 || dim > 3) throw DimensionError("ring dimension must be 1..3");
}

RingElem RingElem::constant(int dim, const Rational& value) {
    RingElem e(dim);
    e.add_term({0, 0, 0}, 0, value);
    return e;
}

RingElem RingElem::coordinate(int dim, int axis) {
    RingElem e(dim);
    if (axis < 0 || axis >= dim) throw DimensionError("coordinate axis out of range");
    std::array<int, 3> exps{0, 0, 0};
    exps[axis] = 1;
    e.add_term(exps, 0, 1);
    return e;
}

RingElem RingElem::radial(int dim, int exponent) {
    RingElem e(dim);
    e.add_term({0, 0, 0}, exponent, 1);
    e.reduce_negative_levels();
    return e;
}

RingElem RingElem::monomial(int dim, const Monomial& m, const Rational& coeff) {
    RingElem e(dim);
    for (int a = dim; a < 3; ++a)
        if (m.q[a] != 0) throw DimensionError("monomial exponent beyond dimension");
    e.add_term(m.q, m.r, coeff);
    e.reduce_negative_levels();
    return e;
}

bool RingElem::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational RingElem::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value on non-constant element");
    return terms_.begin()->second;
}

Rational RingElem::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void RingElem::check_dim(const RingElem& other) const {
    if (dim_ != other.dim_) throw DimensionError("ring elements of different dimension");
}

// Inserts coeff * q^exps * r^r_exp, folding r^e with e >= 2 down through
// r^2 = rho. Negative levels are left as-is; callers run
// reduce_negative_levels() once after a batch of insertions.
void RingElem::add_term(std::array<int, 3> exps, int r_exp, const Rational& coeff) {
    if (rat_sgn_zero(coeff)) return;
    if (r_exp >= 2) {
        for (int a = 0; a < dim_; ++a) {
            auto bumped = exps;
            bumped[a] += 2;
            add_term(bumped, r_exp - 2, coeff);
        }
        return;
    }
    Monomial key{exps, r_exp};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (rat_sgn_zero(it->second)) terms_.erase(it);
    }
}

// Division of one r-level by rho with remainder in Groebner normal form:
// no remainder monomial is divisible by x^2. Since {rho} generates the ideal,
// the remainder is the unique normal form and divisibility by rho is exact.
void RingElem::reduce_negative_levels() {
    int min_level = 0;
    for (const auto& [m, c] : terms_) min_level = std::min(min_level, m.r);
    for (int level = min_level; level <= -1; ++level) {
        std::map<std::array<int, 3>, Rational> poly;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.r == level) {
                poly[it->first.q] = it->second;
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        std::map<std::array<int, 3>, Rational> quotient;
        while (true) {
            auto lead = std::find_if(poly.rbegin(), poly.rend(),
                                     [](const auto& t) { return t.first[0] >= 2; });
            if (lead == poly.rend()) break;
            const auto exps = lead->first;
            const Rational c = lead->second;
            auto reduced = exps;
            reduced[0] -= 2;
            quotient[reduced] += c;
            if (rat_sgn_zero(quotient[reduced])) quotient.erase(reduced);
            // subtract c * q^reduced * rho from poly
            for (int a = 0; a < dim_; ++a) {
                auto piece = reduced;
                piece[a] += 2;
                poly[piece] -= c;
                if (rat_sgn_zero(poly[piece])) poly.erase(piece);
            }
        }
        for (const auto& [exps, c] : poly) add_term(exps, level, c);
        for (const auto& [exps, c] : quotient) add_term(exps, level + 2, c);
    }
}

RingElem& RingElem::operator+=(const RingElem& other) {
    check_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m.q, m.r, c);
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& other) {
    check_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m.q, m.r, Rational(-c));
    return *this;
}

RingElem& RingElem::operator*=(const Rational& scale) {
    if (rat_sgn_zero(scale)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scale;
    return *this;
}

RingElem RingElem::operator-() const {
    RingElem out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    a.check_dim(b);
    RingElem out(a.dim());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            std::array<int, 3> exps{ma.q[0] + mb.q[0], ma.q[1] + mb.q[1], ma.q[2] + mb.q[2]};
            out.add_term(exps, ma.r + mb.r, ca * cb);
        }
    }
    out.reduce_negative_levels();
    return out;
}

RingElem RingElem::pow(unsigned exponent) const {
    RingElem out = constant(dim_, 1);
    RingElem base(*this);
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1u;
    }
    return out;
}

RingElem RingElem::partial(int axis) const {
    if (axis < 0 || axis >= dim_) throw DimensionError("derivative axis out of range");
    RingElem out(dim_);
    for (const auto& [m, c] : terms_) {
        if (m.q[axis] > 0) {
            auto exps = m.q;
            exps[axis] -= 1;
            out.add_term(exps, m.r, c * m.q[axis]);
        }
        if (m.r != 0) {
            auto exps = m.q;
            exps[axis] += 1;
            out.add_term(exps, m.r - 2, c * m.r);
        }
    }
    out.reduce_negative_levels();
    return out;
}

double RingElem::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionError("evaluation point of wrong dimension");
    double rho_val = 0;
    for (double v : point) rho_val += v * v;
    const double r = std::sqrt(rho_val);
    bool needs_inverse = false;
    for (const auto& [m, c] : terms_)
        if (m.r < 0) needs_inverse = true;
    if (needs_inverse && r < 1e-12)
        throw SingularEvalError("evaluation at r = 0 with negative radial powers");
    double total = 0;
    for (const auto& [m, c] : terms_) {
        double term = c.get_d();
        for (int a = 0; a < dim_; ++a)
            for (int i = 0; i < m.q[a]; ++i) term *= point[a];
        if (m.r != 0) term *= std::pow(r, m.r);
        total += term;
    }
    return total;
}

RingElem rho(int dim) {
    RingElem e(dim);
    for (int a = 0; a < dim; ++a) e += RingElem::coordinate(dim, a) * RingElem::coordinate(dim, a);
    return e;
}

double eval_monomial(const Monomial& m, std::span<const double> point) {
    double value = 1.0;
    for (size_t a = 0; a < point.size(); ++a)
        for (int i = 0; i < m.q[a]; ++i) value *= point[a];
    if (m.r != 0) {
        double rho_val = 0;
        for (double v : point) rho_val += v * v;
        value *= std::pow(std::sqrt(rho_val), m.r);
    }
    return value;
}

namespace {

const char* coordinate_names[3] = {"x", "y", "z"};

void append_monomial(std::ostringstream& os, const Monomial& m, const Rational& coeff) {
    const Rational magnitude = abs(coeff);
    bool printed = false;
    if (magnitude != 1 || m.is_unit()) {
        os << magnitude.get_str();
        printed = true;
    }
    for (int a = 0; a < 3; ++a) {
        if (m.q[a] == 0) continue;
        if (printed) os << '*';
        os << coordinate_names[a];
        if (m.q[a] != 1) os << '^' << m.q[a];
        printed = true;
    }
    if (m.r != 0) {
        if (printed) os << '*';
        os << 'r';
        if (m.r != 1) os << '^' << m.r;
    }
}

}  // namespace

std::string RingElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest monomial first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const bool negative = sgn(it->second) < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        append_monomial(os, it->first, it->second);
        first = false;
    }
    return os.str();
}

std::vector<Monomial> antiderivative_ansatz_basis(const std::vector<RingElem>& rhs, int dim,
                                                  int degree_margin, int r_margin) {
    bool empty = true;
    int max_degree = 0;
    int min_r = 0;
    int max_r = 0;
    for (const RingElem& e : rhs) {
        for (const auto& [m, c] : e.terms()) {
            empty = false;
            max_degree = std::max(max_degree, m.degree());
            min_r = std::min(min_r, m.r);
            max_r = std::max(max_r, m.r);
        }
    }
    if (empty) return {Monomial{}};  // only a constant can have a zero gradient
    const int degree_cap = max_degree + degree_margin;
    const int r_low = min_r;
    const int r_high = std::min(std::max(max_r + r_margin, 1), 1);
    std::vector<Monomial> basis;
    for (int e = r_low; e <= r_high; ++e) {
        std::array<int, 3> exps{0, 0, 0};
        const int cap_x = (e <= -1) ? 1 : degree_cap;  // reduced form below level 0
        for (exps[0] = 0; exps[0] <= cap_x; ++exps[0]) {
            for (exps[1] = 0; exps[1] <= (dim >= 2 ? degree_cap - exps[0] : 0); ++exps[1]) {
                const int cap_z = dim >= 3 ? degree_cap - exps[0] - exps[1] : 0;
                for (exps[2] = 0; exps[2] <= cap_z; ++exps[2]) {
                    basis.push_back(Monomial{exps, e});
                }
            }
        }
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace qfi
