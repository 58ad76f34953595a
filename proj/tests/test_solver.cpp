#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "qfi/parse.hpp"
#include "qfi/solver.hpp"

using namespace qfi;
using qfi::testing::qfi_in_span;

namespace {

PhaseFunction time_poly(int dim, int power) {
    PhaseFunction f(dim);
    PhaseKey key;
    key.t_power = power;
    f.add_term(key, 1);
    return f;
}

PhaseFunction dot_qp(int dim) {
    PhaseFunction out(dim);
    for (int a = 0; a < dim; ++a)
        out += PhaseFunction::coordinate(dim, a) * PhaseFunction::momentum(dim, a);
    return out;
}

int steady_count(const SolutionSpace& space) {
    int count = 0;
    for (const Qfi& I : space.basis) {
        bool steady = true;
        for (const QfiTerm& t : I.terms)
            if (!(t.time == TimeBasis::poly(0))) steady = false;
        if (steady) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("assemble golden cases") {
    // 0 = 0 contributes no rows
    const ConstraintSystem empty = assemble({LinearExpr{}}, {{"u", 0}, {"u", 1}});
    CHECK(empty.matrix.rows == 0);
    CHECK(empty.matrix.cols == 2);

    // a1 x + a2 x = 0 is a single row [1, 1]
    LinearExpr eq;
    eq.emplace_back(0, RingElem::coordinate(3, 0));
    eq.emplace_back(1, RingElem::coordinate(3, 0));
    const ConstraintSystem sys = assemble({eq}, {{"u", 0}, {"u", 1}});
    REQUIRE(sys.matrix.rows == 1);
    CHECK(sys.matrix.entry[0] == std::vector<Rational>{1, 1});
}

TEST_CASE("Kepler potential") {
    const GeometryConfig g = geometry(3);
    const Potential V = parse_potential("-1/r", 3);
    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(f1.basis.size() == 10);

    // named integrals lie in the span
    CHECK(qfi_in_span(f1.basis, hamiltonian(V)));
    for (int a = 0; a < 3; ++a) CHECK(qfi_in_span(f1.basis, runge_lenz(a, 1)));
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            CHECK(qfi_in_span(f1.basis, angular_momentum(3, a) * angular_momentum(3, b)));
    // but not a non-integral
    CHECK(!qfi_in_span(f1.basis, dot_qp(3)));

    const SolutionSpace f2 = solve_family_t3(g, V);
    CHECK(f2.basis.empty());
    CHECK(f2.lfi_basis.size() == 3);
    for (int a = 0; a < 3; ++a) CHECK(qfi_in_span(f2.lfi_basis, angular_momentum(3, a)));

    // same counting at another coupling
    const SolutionSpace f1b = solve_family_t2(g, parse_potential("-3/2/r", 3));
    CHECK(f1b.basis.size() == 10);
}

TEST_CASE("oscillator-family potential") {
    const GeometryConfig g = geometry(3);
    const Potential V = parse_potential("-r^2", 3);  // k = 1
    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(f1.basis.size() == 12);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) CHECK(qfi_in_span(f1.basis, oscillator_tensor(i, j, 1)));
    CHECK(qfi_in_span(f1.basis, hamiltonian(V)));

    const SolutionSpace f2 = solve_family_t3(g, V);
    CHECK(f2.basis.empty());
    CHECK(f2.lfi_basis.size() == 3);
}

TEST_CASE("inverse-square potential produces the time-dependent pair") {
    const GeometryConfig g = geometry(3);
    const Potential V = parse_potential("-1/r^2", 3);
    const PhaseFunction H = hamiltonian(V);

    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(f1.basis.size() == 8);
    // I = -H t^2 + t q.p - r^2/2
    PhaseFunction target = time_poly(3, 2) * H;
    target.scale(-1);
    target += time_poly(3, 1) * dot_qp(3);
    target += PhaseFunction::from_ring(rho(3) * RingElem::constant(3, rat(-1, 2)));
    CHECK(qfi_in_span(f1.basis, target));
    CHECK(steady_count(f1) == 7);

    const SolutionSpace f2 = solve_family_t3(g, V);
    REQUIRE(f2.basis.size() == 1);
    // I = -H t + q.p / 2
    PhaseFunction expected = time_poly(3, 1) * H;
    expected.scale(-1);
    PhaseFunction half_qp = dot_qp(3);
    half_qp.scale(rat(1, 2));
    expected += half_qp;
    CHECK(phase_from_qfi(f2.basis[0]).proportional(expected));
}

TEST_CASE("generic power law keeps only rotations and energy") {
    const GeometryConfig g = geometry(3);
    const Potential V = parse_potential("-1/r^3", 3);
    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(f1.basis.size() == 7);
    CHECK(steady_count(f1) == 7);
    const SolutionSpace f2 = solve_family_t3(g, V);
    CHECK(f2.basis.empty());
}

TEST_CASE("geodesics carry the full tensor families") {
    const GeometryConfig g = geometry(3);
    const Potential V = make_potential(RingElem(3));
    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(f1.basis.size() == 29);
    CHECK(steady_count(f1) == 20);

    const SolutionSpace f2 = solve_family_t3(g, V);
    CHECK(f2.basis.size() == 20);
    CHECK(f2.lfi_basis.empty());

    // t^2/2 G_;ab v v - t G_,a v + G for the quadratic scalar G = x^2
    PhaseFunction target(3);
    {
        PhaseFunction px = PhaseFunction::momentum(3, 0);
        PhaseFunction xq = PhaseFunction::coordinate(3, 0);
        target += time_poly(3, 2) * px * px;               // t^2/2 * 2 p_x^2 / ... G_;ab = 2 e_xx
        target += time_poly(3, 1) * xq * px * PhaseFunction::constant(3, -2);
        target += xq * xq;
    }
    CHECK(qfi_in_span(f1.basis, target));
}

TEST_CASE("plane systems solve as well") {
    const GeometryConfig g = geometry(2);
    const Potential V = parse_potential("-1/r", 2);
    const SolutionSpace f1 = solve_family_t2(g, V);
    CHECK(!f1.basis.empty());
    CHECK(qfi_in_span(f1.basis, hamiltonian(V)));
    const PhaseFunction l3 = angular_momentum(2, 2);
    CHECK(qfi_in_span(f1.basis, l3 * l3));
}

TEST_CASE("scaling the potential rescales the solutions predictably") {
    const GeometryConfig g = geometry(3);
    const Rational c = rat(3, 2);
    const Potential V = parse_potential("-1/r", 3);
    const Potential scaled = make_potential(V.expr * c);
    const SolutionSpace base = solve_family_t2(g, V);
    const SolutionSpace rescaled = solve_family_t2(g, scaled);
    REQUIRE(base.basis.size() == rescaled.basis.size());

    // map (C, L, G) -> (C, cL, cG) on the time-separated blocks
    std::vector<Qfi> mapped;
    for (const Qfi& I : base.basis) {
        Qfi out(I.dim);
        for (const QfiTerm& term : I.terms) {
            QfiTerm copy = term;
            if (term.time == TimeBasis::poly(0)) {
                copy.k0 *= c;  // G block
            } else {
                for (RingElem& e : copy.k1) e *= c;  // L block
                copy.k2 *= c;                        // -t^2/2 L_(a;b)
                copy.k0 *= c * c;                    // t^2/2 L_a V^,a picks up both factors
            }
            out.terms.push_back(std::move(copy));
        }
        out.normalize();
        mapped.push_back(std::move(out));
    }
    for (const Qfi& I : mapped) CHECK(qfi_in_span(rescaled.basis, I));
    for (const Qfi& I : rescaled.basis) CHECK(satisfies_derivative_gate(I, scaled));
}
