#include "qfi/phase.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace qfi {

PhaseFunction::PhaseFunction(int dim, long radical) : dim_(dim), m_(radical) {
    if (dim < 1 || dim > 3) throw DimensionError("phase dimension must be 1..3");
    if (m_ == 0) throw std::invalid_argument("radical core must be nonzero");
}

PhaseFunction PhaseFunction::constant(int dim, const Rational& value) {
    PhaseFunction f(dim);
    f.add_term(PhaseKey{}, value);
    return f;
}

PhaseFunction PhaseFunction::coordinate(int dim, int axis) {
    PhaseFunction f(dim);
    PhaseKey key;
    key.mono.q[axis] = 1;
    f.add_term(key, 1);
    return f;
}

PhaseFunction PhaseFunction::momentum(int dim, int axis) {
    PhaseFunction f(dim);
    PhaseKey key;
    key.p[axis] = 1;
    f.add_term(key, 1);
    return f;
}

PhaseFunction PhaseFunction::from_ring(const RingElem& e) {
    PhaseFunction f(e.dim());
    for (const auto& [mono, c] : e.terms()) {
        PhaseKey key;
        key.mono = mono;
        f.add_term(key, c);
    }
    return f;
}

bool PhaseFunction::radical_in_use() const {
    for (const auto& [key, uv] : terms_)
        if (!rat_sgn_zero(uv.second) || !rat_sgn_zero(key.exp_c)) return true;
    return false;
}

bool PhaseFunction::autonomous() const {
    for (const auto& [key, uv] : terms_)
        if (key.t_power != 0 || !rat_sgn_zero(key.exp_c)) return false;
    return true;
}

void PhaseFunction::add_term(const PhaseKey& key, const Rational& u, const Rational& v) {
    Rational ru = u, rv = v;
    if (m_ == 1) {  // sqrt(1) = 1
        ru += rv;
        rv = 0;
    }
    if (rat_sgn_zero(ru) && rat_sgn_zero(rv)) return;
    auto [it, inserted] = terms_.try_emplace(key, std::make_pair(ru, rv));
    if (!inserted) {
        it->second.first += ru;
        it->second.second += rv;
        if (rat_sgn_zero(it->second.first) && rat_sgn_zero(it->second.second)) terms_.erase(it);
    }
}

void PhaseFunction::merge_radical(long other_m, bool other_uses) {
    if (!other_uses || other_m == m_) return;
    if (!radical_in_use()) {
        m_ = other_m;
        return;
    }
    throw std::invalid_argument("mixing distinct radical cores is unsupported");
}

PhaseFunction& PhaseFunction::operator+=(const PhaseFunction& other) {
    if (dim_ != other.dim_) throw DimensionError("phase functions of different dimension");
    merge_radical(other.m_, other.radical_in_use());
    for (const auto& [key, uv] : other.terms_) add_term(key, uv.first, uv.second);
    return *this;
}

PhaseFunction& PhaseFunction::operator-=(const PhaseFunction& other) {
    if (dim_ != other.dim_) throw DimensionError("phase functions of different dimension");
    merge_radical(other.m_, other.radical_in_use());
    for (const auto& [key, uv] : other.terms_) add_term(key, -uv.first, -uv.second);
    return *this;
}

PhaseFunction PhaseFunction::operator-() const {
    PhaseFunction out(dim_, m_);
    for (const auto& [key, uv] : terms_) out.add_term(key, -uv.first, -uv.second);
    return out;
}

PhaseFunction& PhaseFunction::scale(const Rational& s) {
    if (rat_sgn_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, uv] : terms_) {
        uv.first *= s;
        uv.second *= s;
    }
    return *this;
}

PhaseFunction& PhaseFunction::scale_radical(const Rational& c) {
    // (u + v sqrt(m)) * c sqrt(m) = c m v + c u sqrt(m)
    std::map<PhaseKey, std::pair<Rational, Rational>, PhaseKeyLess> scaled;
    for (const auto& [key, uv] : terms_) {
        Rational u = c * Rational(m_) * uv.second;
        Rational v = c * uv.first;
        if (m_ == 1) {
            u += v;
            v = 0;
        }
        if (!rat_sgn_zero(u) || !rat_sgn_zero(v)) scaled.emplace(key, std::make_pair(u, v));
    }
    terms_ = std::move(scaled);
    return *this;
}

PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b) {
    if (a.dim_ != b.dim_) throw DimensionError("phase functions of different dimension");
    long m = 1;
    if (a.radical_in_use()) m = a.m_;
    if (b.radical_in_use()) {
        if (m != 1 && m != b.m_)
            throw std::invalid_argument("mixing distinct radical cores is unsupported");
        m = b.m_;
    }
    PhaseFunction out(a.dim_, m);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            // (u1 + v1 s)(u2 + v2 s) with s^2 = m
            Rational u = ca.first * cb.first + Rational(m) * ca.second * cb.second;
            Rational v = ca.first * cb.second + ca.second * cb.first;
            RingElem monos = RingElem::monomial(a.dim_, ka.mono) * RingElem::monomial(a.dim_, kb.mono);
            PhaseKey key;
            key.t_power = ka.t_power + kb.t_power;
            key.exp_c = ka.exp_c + kb.exp_c;
            for (int i = 0; i < 3; ++i) key.p[i] = ka.p[i] + kb.p[i];
            for (const auto& [mono, c] : monos.terms()) {
                key.mono = mono;
                out.add_term(key, u * c, v * c);
            }
        }
    }
    return out;
}

PhaseFunction PhaseFunction::partial_q(int axis) const {
    PhaseFunction out(dim_, m_);
    for (const auto& [key, uv] : terms_) {
        RingElem d = RingElem::monomial(dim_, key.mono).partial(axis);
        for (const auto& [mono, c] : d.terms()) {
            PhaseKey nk = key;
            nk.mono = mono;
            out.add_term(nk, uv.first * c, uv.second * c);
        }
    }
    return out;
}

PhaseFunction PhaseFunction::partial_p(int axis) const {
    PhaseFunction out(dim_, m_);
    for (const auto& [key, uv] : terms_) {
        if (key.p[axis] == 0) continue;
        PhaseKey nk = key;
        nk.p[axis] -= 1;
        const Rational factor(key.p[axis]);
        out.add_term(nk, uv.first * factor, uv.second * factor);
    }
    return out;
}

PhaseFunction PhaseFunction::time_derivative() const {
    PhaseFunction out(dim_, m_);
    for (const auto& [key, uv] : terms_) {
        if (key.t_power > 0) {
            PhaseKey nk = key;
            nk.t_power -= 1;
            const Rational factor(key.t_power);
            out.add_term(nk, uv.first * factor, uv.second * factor);
        }
        if (!rat_sgn_zero(key.exp_c)) {
            // multiply by exp_c * sqrt(m)
            Rational u = key.exp_c * Rational(m_) * uv.second;
            Rational v = key.exp_c * uv.first;
            out.add_term(key, u, v);
        }
    }
    return out;
}

std::complex<double> PhaseFunction::eval(double t, std::span<const double> q,
                                         std::span<const double> p) const {
    const double root = std::sqrt(std::abs(static_cast<double>(m_)));
    const std::complex<double> s = m_ >= 0 ? std::complex<double>(root, 0.0)
                                           : std::complex<double>(0.0, root);
    std::complex<double> total = 0.0;
    for (const auto& [key, uv] : terms_) {
        std::complex<double> value = uv.first.get_d() + uv.second.get_d() * s;
        if (key.t_power) value *= std::pow(t, key.t_power);
        if (!rat_sgn_zero(key.exp_c)) value *= std::exp(key.exp_c.get_d() * s * t);
        value *= eval_monomial(key.mono, q);
        for (int a = 0; a < dim_; ++a)
            for (int i = 0; i < key.p[a]; ++i) value *= p[a];
        total += value;
    }
    return total;
}

bool operator==(const PhaseFunction& a, const PhaseFunction& b) {
    PhaseFunction diff = a;
    diff -= b;
    return diff.is_zero();
}

bool PhaseFunction::proportional(const PhaseFunction& other) const {
    if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
    const auto& [key, uv] = *terms_.begin();
    auto it = other.terms_.find(key);
    if (it == other.terms_.end()) return false;
    // Try other = c * this in Q(sqrt(m)): c = other_lead / this_lead.
    const Rational m(m_);
    const Rational norm = uv.first * uv.first - m * uv.second * uv.second;
    if (!rat_sgn_zero(norm)) {
        const Rational u2 = it->second.first, v2 = it->second.second;
        // (u2 + v2 s)/(u1 + v1 s) = ((u2 + v2 s)(u1 - v1 s))/norm
        Rational cu = (u2 * uv.first - m * v2 * uv.second) / norm;
        Rational cv = (v2 * uv.first - u2 * uv.second) / norm;
        cu.canonicalize();
        cv.canonicalize();
        PhaseFunction scaled_u = *this;
        scaled_u.scale(cu);
        PhaseFunction scaled_v = *this;
        scaled_v.scale_radical(cv);
        scaled_u += scaled_v;
        return scaled_u == other;
    }
    return false;
}

PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g) {
    if (f.dim() != g.dim()) throw DimensionError("phase functions of different dimension");
    PhaseFunction out(f.dim());
    for (int a = 0; a < f.dim(); ++a) {
        out += f.partial_q(a) * g.partial_p(a);
        out -= f.partial_p(a) * g.partial_q(a);
    }
    return out;
}

PhaseFunction total_derivative(const PhaseFunction& I, const PhaseFunction& H) {
    if (!H.autonomous()) throw std::invalid_argument("Hamiltonian must be autonomous");
    return I.time_derivative() + poisson_bracket(I, H);
}

PhaseFunction phase_from_qfi(const Qfi& I) {
    PhaseFunction out(I.dim);
    for (const QfiTerm& term : I.terms) {
        PhaseKey base;
        Rational rate_c = 0;
        long m = 1;
        if (term.time.kind == TimeBasis::Kind::Poly) {
            base.t_power = term.time.power;
        } else {
            term.time.rate.radical(rate_c, m);
            base.exp_c = rate_c;
        }
        PhaseFunction block(I.dim, m);
        for (int i = 0; i < I.dim; ++i)
            for (int j = i; j < I.dim; ++j) {
                const RingElem& c = term.k2.at(i, j);
                if (c.is_zero()) continue;
                const Rational factor = i == j ? 1 : 2;
                for (const auto& [mono, coeff] : c.terms()) {
                    PhaseKey key = base;
                    key.mono = mono;
                    key.p[i] += 1;
                    key.p[j] += 1;
                    block.add_term(key, coeff * factor);
                }
            }
        for (int a = 0; a < I.dim; ++a) {
            for (const auto& [mono, coeff] : term.k1[a].terms()) {
                PhaseKey key = base;
                key.mono = mono;
                key.p[a] += 1;
                if (term.time.kind == TimeBasis::Kind::Exp)
                    block.add_term(key, 0, rate_c * coeff);  // lambda * k1
                else
                    block.add_term(key, coeff);
            }
        }
        for (const auto& [mono, coeff] : term.k0.terms()) {
            PhaseKey key = base;
            key.mono = mono;
            block.add_term(key, coeff);
        }
        out += block;
    }
    return out;
}

PhaseFunction hamiltonian(const Potential& V) {
    PhaseFunction h(V.dim);
    for (int a = 0; a < V.dim; ++a) {
        PhaseKey key;
        key.p[a] = 2;
        h.add_term(key, Rational(1, 2));
    }
    h += PhaseFunction::from_ring(V.expr);
    return h;
}

PhaseFunction angular_momentum(int dim, int axis) {
    if (dim == 2) {
        if (axis != 2) throw DimensionError("plane systems only carry the normal component");
        return PhaseFunction::coordinate(2, 0) * PhaseFunction::momentum(2, 1) -
               PhaseFunction::coordinate(2, 1) * PhaseFunction::momentum(2, 0);
    }
    const int i = (axis + 1) % 3, j = (axis + 2) % 3;
    return PhaseFunction::coordinate(3, i) * PhaseFunction::momentum(3, j) -
           PhaseFunction::coordinate(3, j) * PhaseFunction::momentum(3, i);
}

PhaseFunction linear_momentum(int dim, int axis) { return PhaseFunction::momentum(dim, axis); }

PhaseFunction runge_lenz(int axis, const Rational& k) {
    PhaseFunction p2(3);
    for (int a = 0; a < 3; ++a) p2 += PhaseFunction::momentum(3, a) * PhaseFunction::momentum(3, a);
    PhaseFunction qp(3);
    for (int a = 0; a < 3; ++a)
        qp += PhaseFunction::coordinate(3, a) * PhaseFunction::momentum(3, a);
    PhaseFunction out = p2 * PhaseFunction::coordinate(3, axis);
    out -= qp * PhaseFunction::momentum(3, axis);
    RingElem tail = RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, -k);
    out += PhaseFunction::from_ring(tail * RingElem::coordinate(3, axis));
    return out;
}

PhaseFunction oscillator_tensor(int i, int j, const Rational& k) {
    PhaseFunction out = PhaseFunction::momentum(3, i) * PhaseFunction::momentum(3, j);
    PhaseFunction qq = PhaseFunction::coordinate(3, i) * PhaseFunction::coordinate(3, j);
    qq.scale(-2 * k);
    return out + qq;
}

std::vector<std::vector<bool>> involution_check(std::span<const PhaseFunction> set) {
    const int n = static_cast<int>(set.size());
    std::vector<std::vector<bool>> table(n, std::vector<bool>(n, true));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool commutes = poisson_bracket(set[i], set[j]).is_zero();
            table[i][j] = table[j][i] = commutes;
        }
    return table;
}

int functional_independence(std::span<const PhaseFunction> set, int samples, unsigned seed) {
    if (set.empty()) return 0;
    const int dim = set.front().dim();
    if (samples < static_cast<int>(set.size()))
        throw std::invalid_argument("need at least as many samples as functions");
    // Precompute gradients once.
    std::vector<std::vector<PhaseFunction>> grads;
    for (const PhaseFunction& f : set) {
        if (f.radical() < 0 && f.radical_in_use())
            throw std::invalid_argument("independence rank needs real-valued functions");
        std::vector<PhaseFunction> g;
        for (int a = 0; a < dim; ++a) g.push_back(f.partial_q(a));
        for (int a = 0; a < dim; ++a) g.push_back(f.partial_p(a));
        grads.push_back(std::move(g));
    }
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        // deterministic uniform in [0.5, 1.5] with random sign
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double magnitude = 0.5 + u;
        return (rng() & 1u) ? magnitude : -magnitude;
    };
    // Functional dependence is a pointwise property of the gradient rows (the
    // dependency coefficients vary over phase space), so the rank is taken
    // per sample point and maximized over the samples.
    int best = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> q(dim), p(dim);
        for (int a = 0; a < dim; ++a) q[a] = draw();
        for (int a = 0; a < dim; ++a) p[a] = draw();
        Eigen::MatrixXd jacobian(set.size(), 2 * dim);
        for (size_t f = 0; f < grads.size(); ++f)
            for (int c = 0; c < 2 * dim; ++c)
                jacobian(f, c) = grads[f][c].eval(0.0, q, p).real();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
        const auto& sigma = svd.singularValues();
        if (sigma.size() == 0 || sigma(0) == 0.0) continue;
        int rank = 0;
        for (int i = 0; i < sigma.size(); ++i)
            if (sigma(i) > 1e-8 * sigma(0)) ++rank;
        best = std::max(best, rank);
    }
    return best;
}

bool relation_check_runge_lenz(const Potential& v) {
    const auto form = power_law_form(v);
    if (!form || form->ell != 1)
        throw std::invalid_argument("Runge-Lenz relations require V = -k/r");
    const Rational k = form->k;
    PhaseFunction rl_dot(3);  // R.L
    PhaseFunction r2(3);      // R.R
    PhaseFunction l2(3);      // L.L
    for (int a = 0; a < 3; ++a) {
        const PhaseFunction r = runge_lenz(a, k);
        const PhaseFunction l = angular_momentum(3, a);
        rl_dot += r * l;
        r2 += r * r;
        l2 += l * l;
    }
    if (!rl_dot.is_zero()) return false;
    PhaseFunction expected = PhaseFunction::constant(3, k * k);
    PhaseFunction el2 = hamiltonian(v) * l2;
    el2.scale(2);
    expected += el2;
    return r2 == expected;
}

}  // namespace qfi
