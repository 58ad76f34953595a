#include "qfi/geometry.hpp"

namespace qfi {

SymMat::SymMat(int dim) : dim_(dim), data_(dim * (dim + 1) / 2, RingElem(dim)) {}

RingElem& SymMat::at(int i, int j) {
    if (i > j) std::swap(i, j);
    return data_[i * dim_ - i * (i - 1) / 2 + (j - i)];
}

const RingElem& SymMat::at(int i, int j) const {
    return const_cast<SymMat*>(this)->at(i, j);
}

bool SymMat::is_zero() const {
    for (const RingElem& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

SymMat& SymMat::operator+=(const SymMat& other) {
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SymMat& SymMat::operator*=(const Rational& s) {
    for (RingElem& e : data_) e *= s;
    return *this;
}

bool VectorField::is_zero() const {
    for (const RingElem& e : comp)
        if (!e.is_zero()) return false;
    return true;
}

int kt_param_count(const GeometryConfig& g) { return g.dim == 2 ? 6 : 20; }
int l_param_count(const GeometryConfig& g) { return g.dim == 2 ? 8 : 20; }

namespace {

RingElem cst(int dim, const Rational& v) { return RingElem::constant(dim, v); }

RingElem mono(int dim, int ex, int ey, int ez, const Rational& coeff) {
    return RingElem::monomial(dim, Monomial{{ex, ey, ez}, 0}, coeff);
}

// General KT of E^2, parameters (gamma, a, beta, A, B, C).
SymMat kt_e2(const std::vector<Rational>& p) {
    SymMat c(2);
    const Rational &ga = p[0], &a = p[1], &be = p[2], &A = p[3], &B = p[4], &C = p[5];
    c.at(0, 0) = mono(2, 0, 2, 0, ga) + mono(2, 0, 1, 0, 2 * a) + cst(2, A);
    c.at(0, 1) = mono(2, 1, 1, 0, -ga) + mono(2, 1, 0, 0, -a) + mono(2, 0, 1, 0, -be) + cst(2, C);
    c.at(1, 1) = mono(2, 2, 0, 0, ga) + mono(2, 1, 0, 0, 2 * be) + cst(2, B);
    return c;
}

// General KT of E^3, parameters a1..a20.
SymMat kt_e3(const std::vector<Rational>& a) {
    SymMat c(3);
    auto h = [](const Rational& q) { return Rational(q / 2); };
    c.at(0, 0) = mono(3, 0, 2, 0, h(a[5])) + mono(3, 0, 0, 2, h(a[0])) + mono(3, 0, 1, 1, a[3]) +
                 mono(3, 0, 1, 0, a[4]) + mono(3, 0, 0, 1, a[1]) + cst(3, a[2]);
    c.at(0, 1) = mono(3, 0, 0, 2, h(a[9])) + mono(3, 1, 1, 0, -h(a[5])) +
                 mono(3, 1, 0, 1, -h(a[3])) + mono(3, 0, 1, 1, -h(a[13])) +
                 mono(3, 1, 0, 0, -h(a[4])) + mono(3, 0, 1, 0, -h(a[14])) +
                 mono(3, 0, 0, 1, a[15]) + cst(3, a[16]);
    c.at(0, 2) = mono(3, 0, 2, 0, h(a[13])) + mono(3, 1, 1, 0, -h(a[3])) +
                 mono(3, 1, 0, 1, -h(a[0])) + mono(3, 0, 1, 1, -h(a[9])) +
                 mono(3, 1, 0, 0, -h(a[1])) + mono(3, 0, 1, 0, a[17]) +
                 mono(3, 0, 0, 1, -h(a[10])) + cst(3, a[18]);
    c.at(1, 1) = mono(3, 2, 0, 0, h(a[5])) + mono(3, 0, 0, 2, h(a[6])) + mono(3, 1, 0, 1, a[13]) +
                 mono(3, 1, 0, 0, a[14]) + mono(3, 0, 0, 1, a[11]) + cst(3, a[12]);
    c.at(1, 2) = mono(3, 2, 0, 0, h(a[3])) + mono(3, 1, 1, 0, -h(a[13])) +
                 mono(3, 1, 0, 1, -h(a[9])) + mono(3, 0, 1, 1, -h(a[6])) +
                 mono(3, 1, 0, 0, -(a[15] + a[17])) + mono(3, 0, 1, 0, -h(a[11])) +
                 mono(3, 0, 0, 1, -h(a[7])) + cst(3, a[19]);
    c.at(2, 2) = mono(3, 2, 0, 0, h(a[0])) + mono(3, 0, 2, 0, h(a[6])) + mono(3, 1, 1, 0, a[9]) +
                 mono(3, 1, 0, 0, a[10]) + mono(3, 0, 1, 0, a[7]) + cst(3, a[8]);
    return c;
}

std::vector<RingElem> l_e2(const std::vector<Rational>& p) {
    const Rational &a = p[0], &be = p[1], &A = p[2], &B = p[3];
    const Rational &a8 = p[4], &a9 = p[5], &a10 = p[6], &a11 = p[7];
    std::vector<RingElem> l(2, RingElem(2));
    l[0] = mono(2, 0, 2, 0, -2 * be) + mono(2, 1, 1, 0, 2 * a) + mono(2, 1, 0, 0, A) +
           mono(2, 0, 1, 0, a8) + cst(2, a11);
    l[1] = mono(2, 2, 0, 0, -2 * a) + mono(2, 1, 1, 0, 2 * be) + mono(2, 1, 0, 0, a10) +
           mono(2, 0, 1, 0, B) + cst(2, a9);
    return l;
}

std::vector<RingElem> l_e3(const std::vector<Rational>& a) {
    std::vector<RingElem> l(3, RingElem(3));
    l[0] = mono(3, 0, 2, 0, -a[14]) + mono(3, 0, 0, 2, -a[10]) + mono(3, 1, 1, 0, a[4]) +
           mono(3, 1, 0, 1, a[1]) + mono(3, 0, 1, 1, 2 * (a[15] + a[17])) +
           mono(3, 1, 0, 0, a[2]) + mono(3, 0, 1, 0, 2 * a[3]) + mono(3, 0, 0, 1, 2 * a[0]) +
           cst(3, a[5]);
    l[1] = mono(3, 2, 0, 0, -a[4]) + mono(3, 0, 0, 2, -a[7]) + mono(3, 1, 1, 0, a[14]) +
           mono(3, 1, 0, 1, -2 * a[17]) + mono(3, 0, 1, 1, a[11]) +
           mono(3, 1, 0, 0, 2 * (a[16] - a[3])) + mono(3, 0, 1, 0, a[12]) +
           mono(3, 0, 0, 1, 2 * a[6]) + cst(3, a[13]);
    l[2] = mono(3, 2, 0, 0, -a[1]) + mono(3, 0, 2, 0, -a[11]) + mono(3, 1, 1, 0, -2 * a[15]) +
           mono(3, 1, 0, 1, a[10]) + mono(3, 0, 1, 1, a[7]) +
           mono(3, 1, 0, 0, 2 * (a[18] - a[0])) + mono(3, 0, 1, 0, 2 * (a[19] - a[6])) +
           mono(3, 0, 0, 1, a[8]) + cst(3, a[9]);
    return l;
}

}  // namespace

KillingTensor kt_from_params(const GeometryConfig& g, const std::vector<Rational>& params) {
    if (static_cast<int>(params.size()) != kt_param_count(g))
        throw DimensionError("wrong Killing tensor parameter count");
    KillingTensor kt{g.dim, g.dim == 2 ? kt_e2(params) : kt_e3(params), params};
    return kt;
}

std::vector<KillingTensor> kt_basis(const GeometryConfig& g) {
    const int count = kt_param_count(g);
    std::vector<KillingTensor> basis;
    basis.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<Rational> params(count, Rational(0));
        params[i] = 1;
        basis.push_back(kt_from_params(g, params));
    }
    return basis;
}

VectorField l_from_params(const GeometryConfig& g, const std::vector<Rational>& params) {
    if (static_cast<int>(params.size()) != l_param_count(g))
        throw DimensionError("wrong generator parameter count");
    VectorField v{g.dim, g.dim == 2 ? l_e2(params) : l_e3(params), params};
    return v;
}

std::vector<VectorField> l_family_basis(const GeometryConfig& g) {
    const int count = l_param_count(g);
    std::vector<VectorField> basis;
    basis.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<Rational> params(count, Rational(0));
        params[i] = 1;
        basis.push_back(l_from_params(g, params));
    }
    return basis;
}

SymMat symm_deriv(const VectorField& v) {
    SymMat out(v.dim);
    for (int i = 0; i < v.dim; ++i)
        for (int j = i; j < v.dim; ++j) {
            RingElem e = v.comp[j].partial(i) + v.comp[i].partial(j);
            e *= Rational(1, 2);
            out.at(i, j) = e;
        }
    return out;
}

std::vector<RingElem> kt_condition(const KillingTensor& c) {
    std::vector<RingElem> out;
    for (int i = 0; i < c.dim; ++i)
        for (int j = i; j < c.dim; ++j)
            for (int k = j; k < c.dim; ++k) {
                RingElem e = c.comp.at(i, j).partial(k) + c.comp.at(j, k).partial(i) +
                             c.comp.at(k, i).partial(j);
                e *= Rational(1, 3);
                out.push_back(e);
            }
    return out;
}

}  // namespace qfi
