#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfi/parse.hpp"

using namespace qfi;

TEST_CASE("potential grammar") {
    // Kepler
    CHECK(parse_ring_elem("-1/r", 3) == RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, -1));
    // harmonic oscillator in the k = -1/2 convention
    CHECK(parse_ring_elem("1/2*r^2", 3) == RingElem::constant(3, rat(1, 2)) * rho(3));
    // plain polynomial in two dimensions
    const RingElem p = parse_ring_elem("x^2 + y", 2);
    CHECK(p == RingElem::monomial(2, Monomial{{2, 0, 0}, 0}) +
                   RingElem::monomial(2, Monomial{{0, 1, 0}, 0}));
    // whitespace insensitivity and parentheses
    CHECK(parse_ring_elem("  ( x + y ) * ( x - y )  ", 2) ==
          parse_ring_elem("x^2 - y^2", 2));
    // unary minus binds to the factor
    CHECK(parse_ring_elem("-x^2", 2) == -parse_ring_elem("x^2", 2));
    // q-aliases
    CHECK(parse_ring_elem("q1*q2", 3) == parse_ring_elem("x*y", 3));
}

TEST_CASE("decimals convert exactly") {
    CHECK(parse_ring_elem("0.5", 3) == RingElem::constant(3, rat(1, 2)));
    CHECK(parse_ring_elem("0.125*x", 3) ==
          RingElem::constant(3, rat(1, 8)) * RingElem::coordinate(3, 0));
    CHECK(parse_ring_elem("-1.5/r", 3) == RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, rat(-3, 2)));
}

TEST_CASE("radial powers") {
    CHECK(parse_ring_elem("r^2", 3) == rho(3));
    CHECK(parse_ring_elem("r^-2", 3) == RingElem::radial(3, -2));
    CHECK(parse_ring_elem("r^3", 3) == rho(3) * RingElem::radial(3));
    CHECK(parse_ring_elem("1/r^3", 3) == RingElem::radial(3, -3));
    CHECK(parse_ring_elem("2/(4*r)", 3) == RingElem::monomial(3, Monomial{{0, 0, 0}, -1}, rat(1, 2)));
    CHECK(parse_ring_elem("x/r", 3) == RingElem::monomial(3, Monomial{{1, 0, 0}, -1}));
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_ring_elem("x +", 3), ParseError);
    CHECK_THROWS_AS(parse_ring_elem("1/x", 3), ParseError);          // division by a coordinate
    CHECK_THROWS_AS(parse_ring_elem("1/(x+y)", 3), ParseError);      // division by a sum
    CHECK_THROWS_AS(parse_ring_elem("x^y", 3), ParseError);          // non-integer exponent
    CHECK_THROWS_AS(parse_ring_elem("x^1.5", 3), ParseError);        // decimal exponent
    CHECK_THROWS_AS(parse_ring_elem("z", 2), ParseError);            // coordinate beyond dim
    CHECK_THROWS_AS(parse_ring_elem("w + 1", 3), ParseError);        // unknown symbol
    CHECK_THROWS_AS(parse_ring_elem("x^-1", 3), ParseError);         // coordinate inverse
    CHECK_THROWS_AS(parse_ring_elem("1/0", 3), ParseError);
    try {
        parse_ring_elem("x + + y", 3);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("display round-trips through the parser") {
    std::mt19937_64 rng(555);
    for (int iteration = 0; iteration < 400; ++iteration) {
        const int dim = (iteration % 2) ? 2 : 3;
        RingElem e(dim);
        const int terms = static_cast<int>(rng() % 5);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            for (int a = 0; a < dim; ++a) m.q[a] = static_cast<int>(rng() % 3);
            m.r = static_cast<int>(rng() % 5) - 3;
            e += RingElem::monomial(dim, m, rat(static_cast<long>(rng() % 15) - 7, 1 + rng() % 4));
        }
        CHECK(parse_ring_elem(e.str(), dim) == e);
    }
}
