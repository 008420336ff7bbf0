#pragma once

#include <cstdint>
#include <vector>

#include "model.hpp"

namespace hubo {

// Per-variable adjacency over terms plus a cached value per term,
// kept synchronized with one SpinConfig. Gives O(deg(i)) single-flip
// deltas and O(deg(i)) flip application; this is the hot structure every
// solver sweeps over.
//
// Layout is CSR: term ids of variable i live in
// term_ids[offsets[i] .. offsets[i+1]).
class IndexTable {
 public:
  IndexTable(const HuboInstance& instance, const SpinConfig& config);

  // Energy difference of flipping `var`, without mutation:
  // -2 * sum of cached values of terms containing var.
  double delta_energy(int32_t var) const;

  // Negates the spin, renegotiates every cached term value touching
  // `var`, and updates the running energy. Returns the new energy.
  double apply_flip(SpinConfig& config, int32_t var);

  double energy() const { return energy_; }
  int32_t n_vars() const { return n_vars_; }
  int64_t total_terms() const { return static_cast<int64_t>(values_.size()); }
  int32_t degree(int32_t var) const {
    return offsets_[var + 1] - offsets_[var];
  }

  // Sum of cached term values; equals the running energy up to fp
  // accumulation order.
  double recompute_energy_from_cache() const;

  const std::vector<double>& term_values() const { return values_; }

 private:
  void check_var(int32_t var) const;

  int32_t n_vars_;
  std::vector<int32_t> offsets_;
  std::vector<int32_t> term_ids_;
  std::vector<double> values_;
  double energy_ = 0.0;
};

}  // namespace hubo
