#include "qfi/solver.hpp"

#include <set>

#include "qfi/phase.hpp"

namespace qfi {

RingElem generator_condition(const VectorField& l, const SymMat& ls, const Potential& V,
                             int axis) {
    const int dim = V.dim;
    RingElem scalar(dim);
    for (int b = 0; b < dim; ++b) scalar += l.comp[b] * V.grad[b];
    RingElem out = scalar.partial(axis);
    for (int b = 0; b < dim; ++b) {
        RingElem piece = ls.at(axis, b) * V.grad[b];
        piece *= 2;
        out += piece;
    }
    return out;
}

namespace {

// Union of the monomial supports, all coefficients set to 1; feeds the
// antiderivative ansatz without sign cancellations across unknowns.
RingElem support_union(const std::vector<RingElem>& elems, int dim) {
    std::set<Monomial> monos;
    for (const RingElem& e : elems)
        for (const auto& [m, c] : e.terms()) monos.insert(m);
    RingElem out(dim);
    for (const Monomial& m : monos) out += RingElem::monomial(dim, m);
    return out;
}

struct FamilyBases {
    std::vector<KillingTensor> kt;
    std::vector<VectorField> gen;
    std::vector<SymMat> gen_deriv;
};

FamilyBases load_bases(const GeometryConfig& g) {
    FamilyBases b;
    b.kt = kt_basis(g);
    b.gen = l_family_basis(g);
    b.gen_deriv.reserve(b.gen.size());
    for (const VectorField& l : b.gen) b.gen_deriv.push_back(symm_deriv(l));
    return b;
}

std::vector<Rational> slice(const std::vector<Rational>& v, int begin, int count) {
    return std::vector<Rational>(v.begin() + begin, v.begin() + begin + count);
}

void verify_or_throw(const Qfi& I, const Potential& V, const char* family) {
    if (!satisfies_derivative_gate(I, V))
        throw VerificationError(std::string("assembled ") + family +
                                " integral fails the exact derivative gate");
}

}  // namespace

ConstraintSystem assemble(const std::vector<LinearExpr>& equations,
                          std::vector<UnknownLabel> labels) {
    ConstraintSystem sys;
    sys.labels = std::move(labels);
    const int unknowns = static_cast<int>(sys.labels.size());
    std::vector<std::vector<Rational>> rows;
    for (const LinearExpr& eq : equations) {
        std::set<Monomial> monos;
        for (const auto& [unknown, coeff] : eq) {
            if (unknown < 0 || unknown >= unknowns)
                throw std::logic_error("equation references unknown outside the label set");
            for (const auto& [m, c] : coeff.terms()) monos.insert(m);
        }
        for (const Monomial& m : monos) {
            std::vector<Rational> row(unknowns, Rational(0));
            for (const auto& [unknown, coeff] : eq) row[unknown] += coeff.coeff(m);
            rows.push_back(std::move(row));
        }
    }
    sys.matrix.rows = static_cast<int>(rows.size());
    sys.matrix.cols = unknowns;
    sys.matrix.entry = std::move(rows);
    return sys;
}

bool satisfies_derivative_gate(const Qfi& I, const Potential& V) {
    return total_derivative(phase_from_qfi(I), hamiltonian(V)).is_zero();
}

SolutionSpace solve_family_t2(const GeometryConfig& g, const Potential& V) {
    if (V.dim != g.dim) throw DimensionError("potential dimension does not match geometry");
    const int dim = g.dim;
    const FamilyBases bases = load_bases(g);
    const int nc = static_cast<int>(bases.kt.size());
    const int nl = static_cast<int>(bases.gen.size());

    // Scalar ansatz covering 2 C_ab V^,b and the generator components.
    std::vector<RingElem> ansatz_rhs;
    for (int a = 0; a < dim; ++a) {
        std::vector<RingElem> pieces;
        for (const KillingTensor& kt : bases.kt) {
            RingElem e(dim);
            for (int b = 0; b < dim; ++b) e += kt.comp.at(a, b) * V.grad[b];
            e *= 2;
            pieces.push_back(e);
        }
        for (const VectorField& l : bases.gen) pieces.push_back(l.comp[a]);
        ansatz_rhs.push_back(support_union(pieces, dim));
    }
    std::vector<Monomial> ansatz = antiderivative_ansatz_basis(ansatz_rhs, dim);
    std::erase_if(ansatz, [](const Monomial& m) { return m.is_unit(); });  // pin G(0) = 0
    const int ng = static_cast<int>(ansatz.size());

    std::vector<UnknownLabel> labels;
    for (int j = 0; j < nc; ++j) labels.push_back({"kt", j});
    for (int j = 0; j < nl; ++j) labels.push_back({"gen", j});
    for (int j = 0; j < ng; ++j) labels.push_back({"scalar", j});
    const int gen_base = nc;
    const int scalar_base = nc + nl;

    std::vector<LinearExpr> equations;
    // (L_b V^,b)_,a + 2 L_(a;b) V^,b = 0
    for (int a = 0; a < dim; ++a) {
        LinearExpr eq;
        for (int j = 0; j < nl; ++j) {
            RingElem c = generator_condition(bases.gen[j], bases.gen_deriv[j], V, a);
            if (!c.is_zero()) eq.emplace_back(gen_base + j, std::move(c));
        }
        equations.push_back(std::move(eq));
    }
    // G_,a - 2 C_ab V^,b + L_a = 0
    for (int a = 0; a < dim; ++a) {
        LinearExpr eq;
        for (int j = 0; j < ng; ++j) {
            RingElem d = RingElem::monomial(dim, ansatz[j]).partial(a);
            if (!d.is_zero()) eq.emplace_back(scalar_base + j, std::move(d));
        }
        for (int j = 0; j < nc; ++j) {
            RingElem c(dim);
            for (int b = 0; b < dim; ++b) c += bases.kt[j].comp.at(a, b) * V.grad[b];
            c *= -2;
            if (!c.is_zero()) eq.emplace_back(j, std::move(c));
        }
        for (int j = 0; j < nl; ++j)
            if (!bases.gen[j].comp[a].is_zero()) eq.emplace_back(gen_base + j, bases.gen[j].comp[a]);
        equations.push_back(std::move(eq));
    }

    const ConstraintSystem sys = assemble(equations, labels);
    SolutionSpace space;
    space.family = 1;
    for (std::vector<Rational>& v : nullspace(sys.matrix)) {
        const KillingTensor C = kt_from_params(g, slice(v, 0, nc));
        const VectorField L = l_from_params(g, slice(v, gen_base, nl));
        RingElem G(dim);
        for (int j = 0; j < ng; ++j)
            if (sgn(v[scalar_base + j]) != 0)
                G += RingElem::monomial(dim, ansatz[j], v[scalar_base + j]);

        Qfi I(dim);
        QfiTerm steady(dim, TimeBasis::poly(0));
        steady.k2 = C.comp;
        steady.k0 = G;
        I.terms.push_back(std::move(steady));
        if (!L.is_zero()) {
            QfiTerm linear(dim, TimeBasis::poly(1));
            linear.k1 = L.comp;
            I.terms.push_back(std::move(linear));

            QfiTerm quadratic(dim, TimeBasis::poly(2));
            quadratic.k2 = symm_deriv(L);
            quadratic.k2 *= Rational(-1, 2);
            RingElem lv(dim);
            for (int b = 0; b < dim; ++b) lv += L.comp[b] * V.grad[b];
            lv *= Rational(1, 2);
            quadratic.k0 = lv;
            I.terms.push_back(std::move(quadratic));
        }
        I.normalize();
        verify_or_throw(I, V, "t^2-family");
        space.basis.push_back(std::move(I));
        space.param_basis.push_back(std::move(v));
    }
    return space;
}

SolutionSpace solve_family_t3(const GeometryConfig& g, const Potential& V) {
    if (V.dim != g.dim) throw DimensionError("potential dimension does not match geometry");
    const int dim = g.dim;
    const FamilyBases bases = load_bases(g);
    const int nl = static_cast<int>(bases.gen.size());

    std::vector<UnknownLabel> labels;
    for (int j = 0; j < nl; ++j) labels.push_back({"gen_l", j});
    for (int j = 0; j < nl; ++j) labels.push_back({"gen_b", j});
    const int b_base = nl;

    std::vector<LinearExpr> equations;
    for (int a = 0; a < dim; ++a) {
        LinearExpr eq;
        for (int j = 0; j < nl; ++j) {
            RingElem c = generator_condition(bases.gen[j], bases.gen_deriv[j], V, a);
            if (!c.is_zero()) eq.emplace_back(j, std::move(c));
        }
        equations.push_back(std::move(eq));
    }
    // (B_b V^,b)_,a + 2 B_(a;b) V^,b + 2 L_a = 0
    for (int a = 0; a < dim; ++a) {
        LinearExpr eq;
        for (int j = 0; j < nl; ++j) {
            RingElem c = generator_condition(bases.gen[j], bases.gen_deriv[j], V, a);
            if (!c.is_zero()) eq.emplace_back(b_base + j, std::move(c));
        }
        for (int j = 0; j < nl; ++j) {
            RingElem c = bases.gen[j].comp[a];
            c *= 2;
            if (!c.is_zero()) eq.emplace_back(j, std::move(c));
        }
        equations.push_back(std::move(eq));
    }

    const ConstraintSystem sys = assemble(equations, labels);
    SolutionSpace space;
    space.family = 2;
    for (std::vector<Rational>& v : nullspace(sys.matrix)) {
        const VectorField L = l_from_params(g, slice(v, 0, nl));
        const VectorField B = l_from_params(g, slice(v, b_base, nl));
        const SymMat LS = symm_deriv(L);
        const SymMat BS = symm_deriv(B);

        Qfi I(dim);
        QfiTerm steady(dim, TimeBasis::poly(0));
        steady.k1 = B.comp;
        I.terms.push_back(std::move(steady));

        QfiTerm t1(dim, TimeBasis::poly(1));
        t1.k2 = BS;
        t1.k2 *= Rational(-1);
        RingElem bv(dim);
        for (int b = 0; b < dim; ++b) bv += B.comp[b] * V.grad[b];
        t1.k0 = bv;
        I.terms.push_back(std::move(t1));

        if (!L.is_zero()) {
            QfiTerm t2(dim, TimeBasis::poly(2));
            t2.k1 = L.comp;
            I.terms.push_back(std::move(t2));

            QfiTerm t3(dim, TimeBasis::poly(3));
            t3.k2 = LS;
            t3.k2 *= Rational(-1, 3);
            RingElem lv(dim);
            for (int b = 0; b < dim; ++b) lv += L.comp[b] * V.grad[b];
            lv *= Rational(1, 3);
            t3.k0 = lv;
            I.terms.push_back(std::move(t3));
        }
        I.normalize();
        verify_or_throw(I, V, "t^3-family");

        const bool degenerate = !V.is_zero() && L.is_zero() && BS.is_zero();
        if (degenerate) {
            space.lfi_basis.push_back(std::move(I));
            space.lfi_param_basis.push_back(std::move(v));
        } else {
            space.basis.push_back(std::move(I));
            space.param_basis.push_back(std::move(v));
        }
    }
    return space;
}

}  // namespace qfi
