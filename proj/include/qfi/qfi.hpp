#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qfi/geometry.hpp"
#include "qfi/ring.hpp"

namespace qfi {

// Exponential rate lambda = sign * sqrt(mu), kept exact through mu = lambda^2.
// mu < 0 tags an imaginary rate.
struct ExponentialRate {
    Rational mu;
    int sign = 1;

    bool imaginary() const { return sgn(mu) < 0; }
    // lambda = c * sqrt(m) with m square-free (m = 1 means lambda rational).
    void radical(Rational& c, long& m) const;
    std::complex<double> value() const;
    std::string str() const;
};

struct TimeBasis {
    enum class Kind { Poly, Exp };
    Kind kind = Kind::Poly;
    int power = 0;        // Poly: t^power, 0..3
    ExponentialRate rate;  // Exp

    static TimeBasis poly(int power);
    static TimeBasis exponential(const Rational& mu, int sign);
    std::complex<double> value(double t) const;

    friend bool operator==(const TimeBasis& a, const TimeBasis& b);
    friend bool operator<(const TimeBasis& a, const TimeBasis& b);
};

// One time-separated block of a quadratic first integral,
// time(t) * (k2_ab v^a v^b + K_a v^a + k0).
// For exponential blocks K_a = lambda * k1_a: the stored k1 is the cofactor
// of lambda, which keeps every entry inside the rational ring.
struct QfiTerm {
    TimeBasis time;
    SymMat k2;
    std::vector<RingElem> k1;
    RingElem k0;

    QfiTerm(int dim, TimeBasis basis);
    bool is_zero() const;
};

struct Qfi {
    int dim = 3;
    std::vector<QfiTerm> terms;

    explicit Qfi(int dim = 3) : dim(dim) {}
    bool is_zero() const;
    // Sorts blocks by time basis, merges duplicates, drops zero blocks.
    void normalize();

    friend bool operator==(const Qfi&, const Qfi&);
};

Qfi qfi_scale(const Qfi& a, const Rational& s);
Qfi qfi_add(const Qfi& a, const Qfi& b);

// Numeric value at a phase point; complex as soon as an imaginary rate is
// present, otherwise the imaginary part is zero.
std::complex<double> evaluate(const Qfi& I, double t, std::span<const double> q,
                              std::span<const double> v);

// Gauged symmetry generator read off a QFI: eta_a = -K_ab v^b - K_a, f = K.
// Pure bookkeeping, invertible bit-exactly.
struct NoetherGenerator {
    struct Term {
        TimeBasis time;
        SymMat eta_velocity;            // coefficient of v^b in eta_a
        std::vector<RingElem> eta_base;  // velocity-free part (lambda cofactor on Exp blocks)
        RingElem gauge;

        Term(int dim, TimeBasis basis);
    };
    int dim = 3;
    std::vector<Term> terms;
};

NoetherGenerator noether_generator(const Qfi& I);
Qfi qfi_from_generator(const NoetherGenerator& gen);

// Deterministic display; identical integrals produce identical strings.
std::string canonical_display(const Qfi& I);
std::string display(const NoetherGenerator& gen);

std::string qfi_to_json(const Qfi& I);
Qfi qfi_from_json_text(const std::string& text);

}  // namespace qfi
