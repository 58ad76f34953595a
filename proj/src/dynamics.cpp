#include "qfi/dynamics.hpp"

#include <cmath>
#include <random>

namespace qfi {

namespace {

struct State {
    std::vector<double> q, v;
};

void acceleration(const Potential& V, const std::vector<double>& q, std::vector<double>& a) {
    for (int i = 0; i < V.dim; ++i) a[i] = -V.grad[i].eval(q);
}

double radius(const std::vector<double>& q) {
    double s = 0;
    for (double c : q) s += c * c;
    return std::sqrt(s);
}

}  // namespace

Trajectory integrate(const Potential& V, std::span<const double> q0, std::span<const double> v0,
                     double t_end, double h) {
    if (h <= 0) throw std::invalid_argument("step must be positive");
    if (static_cast<int>(q0.size()) != V.dim || static_cast<int>(v0.size()) != V.dim)
        throw DimensionError("initial state of wrong dimension");
    bool has_negative_power = false;
    for (const auto& [m, c] : V.expr.terms())
        if (m.r < 0) has_negative_power = true;
    if (has_negative_power && radius(std::vector<double>(q0.begin(), q0.end())) < 1e-6)
        throw SingularEvalError("initial state at the singularity");

    const int steps = static_cast<int>(std::llround(t_end / h));
    Trajectory out;
    out.step = h;
    State s{std::vector<double>(q0.begin(), q0.end()), std::vector<double>(v0.begin(), v0.end())};
    std::vector<double> a1(V.dim), a2(V.dim), a3(V.dim), a4(V.dim);
    std::vector<double> q_mid(V.dim), v_mid(V.dim);

    out.times.push_back(0);
    out.q.push_back(s.q);
    out.v.push_back(s.v);
    for (int n = 0; n < steps; ++n) {
        // classic RK4 on (q, v)
        acceleration(V, s.q, a1);
        for (int i = 0; i < V.dim; ++i) {
            q_mid[i] = s.q[i] + 0.5 * h * s.v[i];
            v_mid[i] = s.v[i] + 0.5 * h * a1[i];
        }
        acceleration(V, q_mid, a2);
        std::vector<double> q2(V.dim), v2(V.dim);
        for (int i = 0; i < V.dim; ++i) {
            q2[i] = s.q[i] + 0.5 * h * v_mid[i];
            v2[i] = s.v[i] + 0.5 * h * a2[i];
        }
        acceleration(V, q2, a3);
        std::vector<double> q3(V.dim), v3(V.dim);
        for (int i = 0; i < V.dim; ++i) {
            q3[i] = s.q[i] + h * v2[i];
            v3[i] = s.v[i] + h * a3[i];
        }
        acceleration(V, q3, a4);
        for (int i = 0; i < V.dim; ++i) {
            const double dq = s.v[i] + 2 * v_mid[i] + 2 * v2[i] + v3[i];
            const double dv = a1[i] + 2 * a2[i] + 2 * a3[i] + a4[i];
            s.q[i] += h / 6.0 * dq;
            s.v[i] += h / 6.0 * dv;
        }
        if (has_negative_power && radius(s.q) < 1e-6) {
            out.truncated = true;
            break;
        }
        out.times.push_back(h * (n + 1));
        out.q.push_back(s.q);
        out.v.push_back(s.v);
    }
    return out;
}

namespace {

// Flat numeric form of a QFI, so drift scans do not walk exact-term maps at
// every sample.
struct CompiledTerm {
    bool exponential = false;
    int t_power = 0;
    std::complex<double> lambda;
    std::array<int, 3> vel{0, 0, 0};
    std::array<int, 3> coord{0, 0, 0};
    int r_exp = 0;
    double coeff = 0;
    bool lambda_factor = false;
};

std::vector<CompiledTerm> compile(const Qfi& I) {
    std::vector<CompiledTerm> terms;
    auto emit = [&terms, &I](const TimeBasis& time, const RingElem& coeff,
                             std::array<int, 3> vel, double scale, bool lambda_factor) {
        for (const auto& [m, c] : coeff.terms()) {
            CompiledTerm t;
            t.exponential = time.kind == TimeBasis::Kind::Exp;
            if (t.exponential)
                t.lambda = time.rate.value();
            else
                t.t_power = time.power;
            t.vel = vel;
            t.coord = m.q;
            t.r_exp = m.r;
            t.coeff = c.get_d() * scale;
            t.lambda_factor = lambda_factor;
            terms.push_back(t);
        }
    };
    for (const QfiTerm& block : I.terms) {
        for (int i = 0; i < I.dim; ++i)
            for (int j = i; j < I.dim; ++j) {
                std::array<int, 3> vel{0, 0, 0};
                vel[i] += 1;
                vel[j] += 1;
                emit(block.time, block.k2.at(i, j), vel, i == j ? 1.0 : 2.0, false);
            }
        for (int a = 0; a < I.dim; ++a) {
            std::array<int, 3> vel{0, 0, 0};
            vel[a] = 1;
            emit(block.time, block.k1[a], vel, 1.0,
                 block.time.kind == TimeBasis::Kind::Exp);
        }
        emit(block.time, block.k0, {0, 0, 0}, 1.0, false);
    }
    return terms;
}

std::complex<double> eval_compiled(const std::vector<CompiledTerm>& terms, int dim, double t,
                                   const std::vector<double>& q, const std::vector<double>& v) {
    double r = 0;
    for (double c : q) r += c * c;
    r = std::sqrt(r);
    std::complex<double> total = 0;
    for (const CompiledTerm& term : terms) {
        double real_part = term.coeff;
        for (int a = 0; a < dim; ++a) {
            for (int i = 0; i < term.coord[a]; ++i) real_part *= q[a];
            for (int i = 0; i < term.vel[a]; ++i) real_part *= v[a];
        }
        if (term.r_exp != 0) real_part *= std::pow(r, term.r_exp);
        std::complex<double> value = real_part;
        if (term.exponential) {
            if (term.lambda_factor) value *= term.lambda;
            value *= std::exp(term.lambda * t);
        } else if (term.t_power) {
            value *= std::pow(t, term.t_power);
        }
        total += value;
    }
    return total;
}

}  // namespace

double drift(const Qfi& I, const Trajectory& trajectory) {
    if (trajectory.times.empty()) return 0;
    const auto compiled = compile(I);
    const std::complex<double> initial =
        eval_compiled(compiled, I.dim, trajectory.times[0], trajectory.q[0], trajectory.v[0]);
    const double scale = std::max(1.0, std::abs(initial));
    double worst = 0;
    for (size_t n = 1; n < trajectory.times.size(); ++n) {
        const std::complex<double> value =
            eval_compiled(compiled, I.dim, trajectory.times[n], trajectory.q[n], trajectory.v[n]);
        worst = std::max(worst, std::abs(value - initial) / scale);
    }
    return worst;
}

QuadratureSolution quadrature_solution(const Potential& V, std::span<const double> q0,
                                       std::span<const double> v0) {
    const auto form = power_law_form(V);
    if (!form || form->ell != -2 || sgn(form->k) == 0)
        throw std::invalid_argument("quadrature reconstruction requires V = -k r^2, k != 0");
    QuadratureSolution sol;
    sol.dim = V.dim;
    const double two_k = 2.0 * form->k.get_d();
    sol.lambda = two_k >= 0 ? std::complex<double>(std::sqrt(two_k), 0)
                            : std::complex<double>(0, std::sqrt(-two_k));
    for (int a = 0; a < V.dim; ++a) {
        // values of e^{-+lambda t}(v -+ lambda q) at t = 0
        sol.coeff[a][0] = v0[a] - sol.lambda * q0[a];
        sol.coeff[a][1] = v0[a] + sol.lambda * q0[a];
    }
    return sol;
}

std::vector<double> QuadratureSolution::position(double t) const {
    std::vector<double> q(dim);
    for (int a = 0; a < dim; ++a) {
        const std::complex<double> value =
            (-coeff[a][0] * std::exp(-lambda * t) + coeff[a][1] * std::exp(lambda * t)) /
            (2.0 * lambda);
        q[a] = value.real();
    }
    return q;
}

std::vector<double> QuadratureSolution::velocity(double t) const {
    std::vector<double> v(dim);
    for (int a = 0; a < dim; ++a) {
        const std::complex<double> value =
            (coeff[a][0] * std::exp(-lambda * t) + coeff[a][1] * std::exp(lambda * t)) / 2.0;
        v[a] = value.real();
    }
    return v;
}

void seeded_state(unsigned seed, int index, int dim, std::vector<double>& q0,
                  std::vector<double>& v0) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<unsigned long long>(index + 1));
    auto draw = [&rng]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double magnitude = 0.5 + u;
        return (rng() & 1u) ? magnitude : -magnitude;
    };
    q0.resize(dim);
    v0.resize(dim);
    for (int a = 0; a < dim; ++a) q0[a] = draw();
    for (int a = 0; a < dim; ++a) v0[a] = draw();
}

}  // namespace qfi
