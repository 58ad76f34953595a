#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qfi/potential.hpp"
#include "qfi/qfi.hpp"

namespace qfi {

// Fixed-step RK4 solution of qddot^a = -V^,a.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> v;
    double step = 0;
    bool truncated = false;  // stopped near the r = 0 singularity
};

Trajectory integrate(const Potential& V, std::span<const double> q0, std::span<const double> v0,
                     double t_end, double h);

// max over samples of |I(t) - I(0)| / max(1, |I(0)|); complex-aware, so the
// bound covers modulus and both components at once.
double drift(const Qfi& I, const Trajectory& trajectory);

// Closed-form solution of the ell = -2 equations of motion from the
// exponential first integrals evaluated at t = 0:
//   coeff[a][0,1] = v0_a -/+ lambda q0_a with lambda = sqrt(2k),
//   q_a(t) = (-coeff[a][0] e^{-lambda t} + coeff[a][1] e^{lambda t}) / (2 lambda).
// Imaginary lambda (k < 0) runs through the same complex arithmetic.
struct QuadratureSolution {
    int dim = 3;
    std::complex<double> lambda;
    std::array<std::array<std::complex<double>, 2>, 3> coeff;

    std::vector<double> position(double t) const;
    std::vector<double> velocity(double t) const;
};

QuadratureSolution quadrature_solution(const Potential& V, std::span<const double> q0,
                                       std::span<const double> v0);

// Seeded regular initial condition: components in [0.5, 1.5] with random
// signs, away from the singular radius.
void seeded_state(unsigned seed, int index, int dim, std::vector<double>& q0,
                  std::vector<double>& v0);

}  // namespace qfi
