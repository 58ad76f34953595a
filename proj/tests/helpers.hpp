#pragma once

#include <map>
#include <vector>

#include "qfi/linear.hpp"
#include "qfi/phase.hpp"
#include "qfi/qfi.hpp"

namespace qfi::testing {

// Flattens phase-space functions over a joint term index so span questions
// about integrals become exact rational linear algebra. Both components of
// each coefficient (u, v) with value u + v sqrt(m) get a slot.
class PhaseFlattener {
  public:
    void admit(const PhaseFunction& f) {
        for (const auto& [key, uv] : f.terms()) index_.emplace(key, 0);
    }
    void freeze() {
        int next = 0;
        for (auto& [key, slot] : index_) slot = next++;
    }
    std::vector<Rational> flatten(const PhaseFunction& f) const {
        std::vector<Rational> out(2 * index_.size(), Rational(0));
        for (const auto& [key, uv] : f.terms()) {
            const int slot = index_.at(key);
            out[2 * slot] = uv.first;
            out[2 * slot + 1] = uv.second;
        }
        return out;
    }

  private:
    std::map<PhaseKey, int, PhaseKeyLess> index_;
};

inline bool qfi_in_span(const std::vector<Qfi>& basis, const PhaseFunction& target) {
    std::vector<PhaseFunction> phase_basis;
    for (const Qfi& I : basis) phase_basis.push_back(phase_from_qfi(I));
    PhaseFlattener flat;
    for (const PhaseFunction& f : phase_basis) flat.admit(f);
    flat.admit(target);
    flat.freeze();
    std::vector<std::vector<Rational>> rows;
    for (const PhaseFunction& f : phase_basis) rows.push_back(flat.flatten(f));
    return in_span(rows, flat.flatten(target));
}

inline bool qfi_in_span(const std::vector<Qfi>& basis, const Qfi& target) {
    return qfi_in_span(basis, phase_from_qfi(target));
}

}  // namespace qfi::testing
