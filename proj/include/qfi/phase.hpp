#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "qfi/potential.hpp"
#include "qfi/qfi.hpp"
#include "qfi/ring.hpp"

namespace qfi {

// Term label of a phase-space function: t^power * e^{exp_c*sqrt(m)*t} times a
// momentum monomial times a configuration monomial. The square-free core m
// lives on the owning PhaseFunction.
struct PhaseKey {
    int t_power = 0;
    Rational exp_c = 0;
    std::array<int, 3> p{0, 0, 0};
    Monomial mono;
};

struct PhaseKeyLess {
    bool operator()(const PhaseKey& a, const PhaseKey& b) const {
        if (a.t_power != b.t_power) return a.t_power < b.t_power;
        if (int c = cmp(a.exp_c, b.exp_c); c != 0) return c < 0;
        if (a.p != b.p) return a.p < b.p;
        return a.mono < b.mono;
    }
};

// Polynomial in momenta over the radical ring, with time factors t^k and
// e^{lambda t} and coefficients in Q(sqrt(m)): each term carries the pair
// (u, v) standing for u + v*sqrt(m). With m = 1 the v component is folded
// away, so plain rational functions stay plain. Splitting coefficients into
// (u, v) is what makes identities with an irrational rate decidable: a
// function vanishes iff both components vanish.
class PhaseFunction {
  public:
    explicit PhaseFunction(int dim = 3, long radical = 1);
    static PhaseFunction constant(int dim, const Rational& value);
    static PhaseFunction coordinate(int dim, int axis);
    static PhaseFunction momentum(int dim, int axis);
    static PhaseFunction from_ring(const RingElem& e);

    int dim() const { return dim_; }
    long radical() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    // m is only meaningful while a sqrt(m) coefficient or rate is present.
    bool radical_in_use() const;
    bool autonomous() const;

    void add_term(const PhaseKey& key, const Rational& u, const Rational& v = 0);

    PhaseFunction& operator+=(const PhaseFunction& other);
    PhaseFunction& operator-=(const PhaseFunction& other);
    friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
    friend PhaseFunction operator-(PhaseFunction a, const PhaseFunction& b) { return a -= b; }
    friend PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b);
    PhaseFunction operator-() const;
    PhaseFunction& scale(const Rational& s);
    // Multiplication by c*sqrt(m).
    PhaseFunction& scale_radical(const Rational& c);

    PhaseFunction partial_q(int axis) const;
    PhaseFunction partial_p(int axis) const;
    PhaseFunction time_derivative() const;

    std::complex<double> eval(double t, std::span<const double> q,
                              std::span<const double> p) const;

    friend bool operator==(const PhaseFunction& a, const PhaseFunction& b);

    const std::map<PhaseKey, std::pair<Rational, Rational>, PhaseKeyLess>& terms() const {
        return terms_;
    }

    // True when other = c * this or c*sqrt(m) * this for a rational c != 0.
    bool proportional(const PhaseFunction& other) const;

  private:
    void merge_radical(long other_m, bool other_uses);

    int dim_;
    long m_;
    std::map<PhaseKey, std::pair<Rational, Rational>, PhaseKeyLess> terms_;
};

PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g);
// dI/dt along the flow of the autonomous Hamiltonian H.
PhaseFunction total_derivative(const PhaseFunction& I, const PhaseFunction& H);

PhaseFunction phase_from_qfi(const Qfi& I);
PhaseFunction hamiltonian(const Potential& V);

// Standard first integrals used by the report commands and tests.
PhaseFunction angular_momentum(int dim, int axis);
PhaseFunction linear_momentum(int dim, int axis);
PhaseFunction runge_lenz(int axis, const Rational& k);
// Components of p_i p_j - 2k q_i q_j (conserved for V = -k r^2).
PhaseFunction oscillator_tensor(int i, int j, const Rational& k);

std::vector<std::vector<bool>> involution_check(std::span<const PhaseFunction> set);
// Numeric rank of stacked gradients at `samples` random regular phase points.
int functional_independence(std::span<const PhaseFunction> set, int samples, unsigned seed);
// R.L = 0 and R^2 = k^2 + 2 E L^2, exactly, for V = -k/r.
bool relation_check_runge_lenz(const Potential& v);

}  // namespace qfi
