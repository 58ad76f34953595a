#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfi/ring.hpp"

using namespace qfi;

namespace {

RingElem x(int dim = 3) { return RingElem::coordinate(dim, 0); }
RingElem y(int dim = 3) { return RingElem::coordinate(dim, 1); }
RingElem z() { return RingElem::coordinate(3, 2); }
RingElem r(int dim = 3) { return RingElem::radial(dim); }
RingElem c(long num, long den = 1, int dim = 3) { return RingElem::constant(dim, rat(num, den)); }

RingElem random_elem(std::mt19937_64& rng, int dim, int max_terms = 4, int max_degree = 2,
                     int min_r = -3) {
    RingElem e(dim);
    std::uniform_int_distribution<int> term_count(0, max_terms);
    std::uniform_int_distribution<int> exponent(0, max_degree);
    std::uniform_int_distribution<int> r_exp(min_r, 1);
    std::uniform_int_distribution<long> numerator(-6, 6);
    std::uniform_int_distribution<long> denominator(1, 4);
    const int terms = term_count(rng);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int a = 0; a < dim; ++a) m.q[a] = exponent(rng);
        m.r = r_exp(rng);
        e += RingElem::monomial(dim, m, rat(numerator(rng), denominator(rng)));
    }
    return e;
}

}  // namespace

TEST_CASE("additive inverse and defining relation") {
    CHECK((x() + (-x())).is_zero());
    CHECK(r() + r() == c(2) * r());
    // x^2 + y^2 + z^2 - r^2 = 0
    CHECK((rho(3) - r() * r()).is_zero());
    CHECK((rho(2) - r(2) * r(2)).is_zero());
}

TEST_CASE("products with radial reduction") {
    CHECK(r() * r() == rho(3));
    // r^-1 * r^-1 stays an irreducible r^-2
    const RingElem inv = RingElem::radial(3, -1);
    const RingElem inv2 = inv * inv;
    REQUIRE(inv2.terms().size() == 1);
    CHECK(inv2.terms().begin()->first.r == -2);
    // (x r^-3)(x^2+y^2+z^2) = x r^-1
    const RingElem lhs = RingElem::monomial(3, Monomial{{1, 0, 0}, -3}) * rho(3);
    CHECK(lhs == RingElem::monomial(3, Monomial{{1, 0, 0}, -1}));
}

TEST_CASE("canonical form is construction-order independent") {
    // x^2 r^-1 == r - (y^2+z^2) r^-1
    const RingElem a = RingElem::monomial(3, Monomial{{2, 0, 0}, -1});
    RingElem b = r();
    b -= RingElem::monomial(3, Monomial{{0, 2, 0}, -1});
    b -= RingElem::monomial(3, Monomial{{0, 0, 2}, -1});
    CHECK(a == b);
    // no canonical monomial at a negative level is divisible by x^2
    for (const auto& [m, coeff] : a.terms())
        if (m.r <= -1) CHECK(m.q[0] <= 1);
}

TEST_CASE("partial derivatives") {
    // d(r^-1)/dx = -x r^-3
    CHECK(RingElem::radial(3, -1).partial(0) == RingElem::monomial(3, Monomial{{1, 0, 0}, -3}, -1));
    // d(-k r^-1)/dx = k x r^-3 with k = 1
    const RingElem kepler = RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, -1);
    CHECK(kepler.partial(0) == RingElem::monomial(3, Monomial{{1, 0, 0}, -3}));
    // d(x^2 y)/dy = x^2
    CHECK(RingElem::monomial(3, Monomial{{2, 1, 0}, 0}).partial(1) ==
          RingElem::monomial(3, Monomial{{2, 0, 0}, 0}));
    // derivative of the defining relation vanishes
    for (int axis = 0; axis < 3; ++axis) CHECK((r() * r() - rho(3)).partial(axis).is_zero());
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(x(2) + x(3), DimensionError);
    CHECK_THROWS_AS(x(2) * x(3), DimensionError);
}

TEST_CASE("evaluation") {
    const double point[3] = {1.0, 2.0, 2.0};
    CHECK(RingElem::radial(3, -1).eval(point) == doctest::Approx(1.0 / 3.0));
    CHECK((x() * y()).eval(point) == doctest::Approx(2.0));
    CHECK_THROWS_AS(RingElem::radial(3, -1).eval(std::array<double, 3>{0, 0, 0}),
                    SingularEvalError);
}

TEST_CASE("ring axioms, randomized") {
    std::mt19937_64 rng(12345);
    for (int iteration = 0; iteration < 1200; ++iteration) {
        const int dim = (iteration % 2) ? 2 : 3;
        const RingElem a = random_elem(rng, dim);
        const RingElem b = random_elem(rng, dim);
        const RingElem cc = random_elem(rng, dim);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + cc == a + (b + cc));
        CHECK((a * b) * cc == a * (b * cc));
        CHECK(a * (b + cc) == a * b + a * cc);
    }
}

TEST_CASE("Leibniz rule, randomized") {
    std::mt19937_64 rng(777);
    for (int iteration = 0; iteration < 1000; ++iteration) {
        const int dim = (iteration % 2) ? 2 : 3;
        const RingElem a = random_elem(rng, dim);
        const RingElem b = random_elem(rng, dim);
        const int axis = static_cast<int>(rng() % dim);
        CHECK((a * b).partial(axis) == a.partial(axis) * b + a * b.partial(axis));
    }
}

TEST_CASE("antiderivative ansatz basis") {
    // gradient of -1/r
    std::vector<RingElem> kepler_rhs;
    const RingElem minus_inv_r = RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, -1);
    for (int a = 0; a < 3; ++a) kepler_rhs.push_back(minus_inv_r.partial(a));
    const auto basis = antiderivative_ansatz_basis(kepler_rhs, 3);
    auto contains = [&basis](const Monomial& m) {
        return std::find(basis.begin(), basis.end(), m) != basis.end();
    };
    CHECK(contains(Monomial{{1, 0, 0}, -1}));  // x r^-1
    CHECK(contains(Monomial{{0, 1, 0}, -1}));
    CHECK(contains(Monomial{{0, 0, 1}, -1}));
    CHECK(contains(Monomial{{0, 0, 0}, -1}));  // r^-1
    CHECK(contains(Monomial{{0, 0, 0}, 0}));   // 1
    CHECK(contains(Monomial{{1, 0, 0}, 0}));   // x, y, z
    CHECK(contains(Monomial{{0, 1, 0}, 0}));
    CHECK(contains(Monomial{{0, 0, 1}, 0}));

    // -1/r has gradient in the span of the emitted monomial derivatives:
    // solve for G = -1/r coefficients by construction
    // (differentiating x r^-1 etc. reproduces the Kepler G terms).
    // zero rhs keeps only the constant
    const auto trivial = antiderivative_ansatz_basis({RingElem(3)}, 3);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].is_unit());

    // gradient of r^2: all polynomials of degree <= 2 present
    std::vector<RingElem> square_rhs;
    for (int a = 0; a < 3; ++a) square_rhs.push_back(rho(3).partial(a));
    const auto square = antiderivative_ansatz_basis(square_rhs, 3);
    auto contains2 = [&square](const Monomial& m) {
        return std::find(square.begin(), square.end(), m) != square.end();
    };
    CHECK(contains2(Monomial{{2, 0, 0}, 0}));
    CHECK(contains2(Monomial{{0, 2, 0}, 0}));
    CHECK(contains2(Monomial{{0, 0, 2}, 0}));
    CHECK(contains2(Monomial{{1, 1, 0}, 0}));
}

TEST_CASE("display grammar") {
    CHECK(RingElem(3).str() == "0");
    CHECK((c(1, 2) * x() * x()).str() == "1/2*x^2");
    const RingElem kepler = RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, -1);
    CHECK(kepler.str() == "-r^-1");
    CHECK((x() - y() + c(1)).str() == "x - y + 1");
}
