#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "qfi/geometry.hpp"
#include "qfi/linear.hpp"

using namespace qfi;

namespace {

bool all_zero(const std::vector<RingElem>& v) {
    for (const RingElem& e : v)
        if (!e.is_zero()) return false;
    return true;
}

// Flattens symmetric components over a shared monomial index so tensor spans
// can be compared as plain rational vectors.
struct Flattener {
    std::map<std::pair<int, Monomial>, int> index;

    void admit(const SymMat& m) {
        int dim = m.dim();
        int slot = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j, ++slot)
                for (const auto& [mono, c] : m.at(i, j).terms())
                    index.emplace(std::make_pair(slot, mono), 0);
    }
    void freeze() {
        int next = 0;
        for (auto& [key, value] : index) value = next++;
    }
    std::vector<Rational> flatten(const SymMat& m) const {
        std::vector<Rational> out(index.size(), Rational(0));
        int dim = m.dim();
        int slot = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j, ++slot)
                for (const auto& [mono, c] : m.at(i, j).terms())
                    out[index.at(std::make_pair(slot, mono))] = c;
        return out;
    }
};

int span_rank(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    RatMatrix m = RatMatrix::zeros(static_cast<int>(rows.size()),
                                   static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) m.entry[i] = rows[i];
    const int forward = rank(m);
    CHECK(forward == rank(m, true));
    return forward;
}

// Covariant form of the general order-2 Killing tensor on flat 3-space,
// built from a symmetric A, traceless symmetric B, vector lam and symmetric D.
SymMat covariant_kt(const std::array<std::array<Rational, 3>, 3>& A,
                    const std::array<std::array<Rational, 3>, 3>& B,
                    const std::array<Rational, 3>& lam,
                    const std::array<std::array<Rational, 3>, 3>& D) {
    auto eps = [](int i, int j, int k) -> int {
        if (i == j || j == k || i == k) return 0;
        return ((j - i) * (k - j) * (k - i)) > 0 ? 1 : -1;
    };
    SymMat out(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            RingElem entry(3);
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    Rational quad = 0;
                    for (int m = 0; m < 3; ++m)
                        for (int n = 0; n < 3; ++n) {
                            const int e1 = eps(i, k, m) * eps(j, l, n);
                            const int e2 = eps(j, k, m) * eps(i, l, n);
                            if (e1 + e2 != 0) quad += Rational(e1 + e2) * A[m][n];
                        }
                    if (sgn(quad) != 0) {
                        Monomial mono;
                        mono.q[k] += 1;
                        mono.q[l] += 1;
                        entry += RingElem::monomial(3, mono, quad);
                    }
                }
            for (int k = 0; k < 3; ++k) {
                Rational lin = 0;
                for (int l = 0; l < 3; ++l)
                    lin += Rational(eps(j, k, l)) * B[i][l] + Rational(eps(i, k, l)) * B[j][l];
                lin /= 2;
                lin += (Rational(j == k) * lam[i] + Rational(i == k) * lam[j]) / 2;
                if (i == j) lin -= lam[k];
                if (sgn(lin) != 0) entry += RingElem::coordinate(3, k) * RingElem::constant(3, lin);
            }
            entry += RingElem::constant(3, D[i][j]);
            out.at(i, j) = entry;
        }
    return out;
}

}  // namespace

TEST_CASE("basis sizes match the dimension bound n(n+1)^2(n+2)/12") {
    CHECK(kt_basis(geometry(2)).size() == 6);
    CHECK(kt_basis(geometry(3)).size() == 20);
    CHECK(l_family_basis(geometry(2)).size() == 8);
    CHECK(l_family_basis(geometry(3)).size() == 20);
    CHECK_THROWS_AS(geometry(4), DimensionError);
}

TEST_CASE("every basis tensor satisfies the Killing condition") {
    for (int dim : {2, 3})
        for (const KillingTensor& kt : kt_basis(geometry(dim)))
            CHECK(all_zero(kt_condition(kt)));
}

TEST_CASE("x * identity is not a Killing tensor") {
    KillingTensor c{3, SymMat(3), std::nullopt};
    for (int i = 0; i < 3; ++i) c.comp.at(i, i) = RingElem::coordinate(3, 0);
    const auto condition = kt_condition(c);
    // component (1,1,1) of the symmetrized gradient is exactly 1
    CHECK(condition[0] == RingElem::constant(3, 1));
    CHECK(!all_zero(condition));
}

TEST_CASE("symmetrized derivative examples") {
    const GeometryConfig g3 = geometry(3);
    // homothetic generator (x, y, z) gives the flat metric
    VectorField hv{3, {RingElem::coordinate(3, 0), RingElem::coordinate(3, 1),
                       RingElem::coordinate(3, 2)}, std::nullopt};
    const SymMat metric = symm_deriv(hv);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            CHECK(metric.at(i, j) == (i == j ? RingElem::constant(3, 1) : RingElem(3)));

    // a rotation is a Killing vector
    VectorField rot{3, {-RingElem::coordinate(3, 1), RingElem::coordinate(3, 0), RingElem(3)},
                    std::nullopt};
    CHECK(symm_deriv(rot).is_zero());

    // the generated tensor of the fifth family direction
    std::vector<Rational> params(20, Rational(0));
    params[4] = 1;  // a5
    const SymMat generated = symm_deriv(l_from_params(g3, params));
    CHECK(generated.at(0, 0) == RingElem::coordinate(3, 1));
    CHECK(generated.at(0, 1) == RingElem::coordinate(3, 0) * RingElem::constant(3, rat(-1, 2)));
    CHECK(generated.at(1, 1).is_zero());
    CHECK(generated.at(2, 2).is_zero());
}

TEST_CASE("every generator produces a Killing tensor") {
    for (int dim : {2, 3})
        for (const VectorField& l : l_family_basis(geometry(dim))) {
            KillingTensor kt{dim, symm_deriv(l), std::nullopt};
            CHECK(all_zero(kt_condition(kt)));
        }
}

TEST_CASE("generator map rank and Killing-vector kernel") {
    for (int dim : {2, 3}) {
        const GeometryConfig g = geometry(dim);
        const auto family = l_family_basis(g);
        Flattener flat;
        std::vector<SymMat> images;
        for (const VectorField& l : family) images.push_back(symm_deriv(l));
        for (const SymMat& m : images) flat.admit(m);
        flat.freeze();
        std::vector<std::vector<Rational>> rows;
        for (const SymMat& m : images) rows.push_back(flat.flatten(m));
        const int image_rank = span_rank(rows);
        const int kernel = static_cast<int>(family.size()) - image_rank;
        if (dim == 3) {
            CHECK(image_rank == 14);
            CHECK(kernel == 6);
        } else {
            CHECK(image_rank == 5);
            CHECK(kernel == 3);
        }
    }
    // the constant direction a6 is a Killing vector
    std::vector<Rational> params(20, Rational(0));
    params[5] = 1;
    CHECK(symm_deriv(l_from_params(geometry(3), params)).is_zero());
}

TEST_CASE("covariant Killing tensor form spans the same 20-dimensional space") {
    std::mt19937_64 rng(42);
    auto draw = [&rng]() { return rat(static_cast<long>(rng() % 13) - 6, 1 + rng() % 3); };

    // random instance satisfies the Killing condition
    std::array<std::array<Rational, 3>, 3> A{}, B{}, D{};
    std::array<Rational, 3> lam{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            A[i][j] = A[j][i] = draw();
            D[i][j] = D[j][i] = draw();
        }
    B[0][0] = draw();
    B[1][1] = draw();
    B[2][2] = -B[0][0] - B[1][1];
    B[0][1] = B[1][0] = draw();
    B[0][2] = B[2][0] = draw();
    B[1][2] = B[2][1] = draw();
    for (int i = 0; i < 3; ++i) lam[i] = draw();
    KillingTensor random_kt{3, covariant_kt(A, B, lam, D), std::nullopt};
    CHECK(all_zero(kt_condition(random_kt)));

    // 20 unit instantiations of (A, B, lam, D)
    std::vector<SymMat> covariant_basis;
    auto zero33 = std::array<std::array<Rational, 3>, 3>{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            auto unit = zero33;
            unit[i][j] = unit[j][i] = 1;
            covariant_basis.push_back(covariant_kt(unit, zero33, {}, zero33));
            covariant_basis.push_back(covariant_kt(zero33, zero33, {}, unit));
        }
    const std::array<std::pair<int, int>, 5> b_slots{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}}};
    for (auto [i, j] : b_slots) {
        auto unit = zero33;
        unit[i][j] = unit[j][i] = 1;
        if (i == j) unit[2][2] = -1;  // keep traceless
        covariant_basis.push_back(covariant_kt(zero33, unit, {}, zero33));
    }
    for (int i = 0; i < 3; ++i) {
        std::array<Rational, 3> unit{};
        unit[i] = 1;
        covariant_basis.push_back(covariant_kt(zero33, zero33, unit, zero33));
    }
    REQUIRE(covariant_basis.size() == 20);

    const auto explicit_basis = kt_basis(geometry(3));
    Flattener flat;
    for (const SymMat& m : covariant_basis) flat.admit(m);
    for (const KillingTensor& kt : explicit_basis) flat.admit(kt.comp);
    flat.freeze();
    std::vector<std::vector<Rational>> covariant_rows, joint;
    for (const SymMat& m : covariant_basis) {
        covariant_rows.push_back(flat.flatten(m));
        joint.push_back(covariant_rows.back());
    }
    CHECK(span_rank(covariant_rows) == 20);
    for (const KillingTensor& kt : explicit_basis) joint.push_back(flat.flatten(kt.comp));
    // mutual containment: the union still has rank 20
    CHECK(span_rank(joint) == 20);
}
