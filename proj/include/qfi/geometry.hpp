#pragma once

#include <optional>
#include <vector>

#include "qfi/ring.hpp"

namespace qfi {

// Euclidean configuration space, kinetic metric = identity. Only n = 2, 3
// carry explicit Killing-tensor bases.
struct GeometryConfig {
    int dim = 3;
};

inline GeometryConfig geometry(int dim) {
    if (dim != 2 && dim != 3) throw DimensionError("supported dimensions are 2 and 3");
    return GeometryConfig{dim};
}

// Symmetric matrix of ring elements (upper-triangular storage).
class SymMat {
  public:
    explicit SymMat(int dim = 3);
    int dim() const { return dim_; }
    RingElem& at(int i, int j);
    const RingElem& at(int i, int j) const;
    bool is_zero() const;
    SymMat& operator+=(const SymMat& other);
    SymMat& operator*=(const Rational& s);
    friend bool operator==(const SymMat&, const SymMat&) = default;

  private:
    int dim_;
    std::vector<RingElem> data_;
};

struct KillingTensor {
    int dim = 3;
    SymMat comp;
    std::optional<std::vector<Rational>> params;
};

struct VectorField {
    int dim = 3;
    std::vector<RingElem> comp;
    std::optional<std::vector<Rational>> params;

    bool is_zero() const;
};

// Order-2 Killing tensor with the given parameter vector: 6 parameters for
// n = 2 (gamma, a, beta, A, B, C), 20 for n = 3 (a1..a20).
KillingTensor kt_from_params(const GeometryConfig& g, const std::vector<Rational>& params);
std::vector<KillingTensor> kt_basis(const GeometryConfig& g);
int kt_param_count(const GeometryConfig& g);

// Vector fields whose symmetrized derivative is a Killing tensor: 8
// parameters for n = 2, 20 for n = 3.
VectorField l_from_params(const GeometryConfig& g, const std::vector<Rational>& params);
std::vector<VectorField> l_family_basis(const GeometryConfig& g);
int l_param_count(const GeometryConfig& g);

// L_(a;b) = (d_a L_b + d_b L_a) / 2; on flat space covariant = partial.
SymMat symm_deriv(const VectorField& v);

// Independent components of the fully symmetrized gradient C_(ab,c), indexed
// by triples i <= j <= k. All zero iff C is a Killing tensor.
std::vector<RingElem> kt_condition(const KillingTensor& c);

}  // namespace qfi
