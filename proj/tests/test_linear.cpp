#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfi/linear.hpp"

using namespace qfi;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RatMatrix m = RatMatrix::zeros(static_cast<int>(rows.size()),
                                   rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.entry[i][j] = rat(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("nullspace golden cases") {
    // identity: empty kernel
    CHECK(nullspace(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());

    // zero 2x5: all unit vectors
    const auto zero_kernel = nullspace(from_rows({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
    REQUIRE(zero_kernel.size() == 5);
    for (size_t j = 0; j < 5; ++j)
        for (size_t i = 0; i < 5; ++i) CHECK(zero_kernel[j][i] == (i == j ? 1 : 0));

    // [[1, -1, 0]]: kernel {(1,1,0), (0,0,1)}
    const auto kernel = nullspace(from_rows({{1, -1, 0}}));
    REQUIRE(kernel.size() == 2);
    CHECK(kernel[0] == std::vector<Rational>{1, 1, 0});
    CHECK(kernel[1] == std::vector<Rational>{0, 0, 1});
}

TEST_CASE("kernel vectors are exact and integer-primitive") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    for (int iteration = 0; iteration < 300; ++iteration) {
        const int rows = 1 + static_cast<int>(rng() % 6);
        const int cols = 1 + static_cast<int>(rng() % 7);
        RatMatrix m = RatMatrix::zeros(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.entry[i][j] = rat(num(rng), den(rng));
        const auto kernel = nullspace(m);
        // dimension equals cols - rank under an independent elimination order
        CHECK(static_cast<int>(kernel.size()) == cols - rank(m, true));
        for (const auto& v : kernel) {
            for (const Rational& q : matrix_apply(m, v)) CHECK(sgn(q) == 0);
            Integer content = 0;
            bool saw_positive_lead = false;
            bool lead_found = false;
            for (const Rational& q : v) {
                CHECK(q.get_den() == 1);
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q.get_num().get_mpz_t());
                if (!lead_found && sgn(q) != 0) {
                    lead_found = true;
                    saw_positive_lead = sgn(q) > 0;
                }
            }
            CHECK(content == 1);
            CHECK(saw_positive_lead);
        }
    }
}

TEST_CASE("span membership") {
    const std::vector<std::vector<Rational>> basis = {{1, 0, 1}, {0, 1, 1}};
    std::vector<Rational> coefficients;
    CHECK(in_span(basis, {2, 3, 5}, &coefficients));
    REQUIRE(coefficients.size() == 2);
    CHECK(coefficients[0] == 2);
    CHECK(coefficients[1] == 3);
    CHECK(!in_span(basis, {1, 0, 0}));
    CHECK(in_span({}, {0, 0}));
    CHECK(!in_span({}, {1, 0}));
}
