#include "index_table.hpp"

#include <stdexcept>
#include <string>

namespace hubo {

IndexTable::IndexTable(const HuboInstance& instance, const SpinConfig& config)
    : n_vars_(instance.n_vars()) {
  if (static_cast<int32_t>(config.size()) != n_vars_) {
    throw std::invalid_argument("config length does not match instance");
  }
  const auto& terms = instance.terms();
  offsets_.assign(n_vars_ + 1, 0);
  for (const Term& t : terms) {
    for (int i = 0; i < t.arity; ++i) offsets_[t.vars[i] + 1]++;
  }
  for (int32_t v = 0; v < n_vars_; ++v) offsets_[v + 1] += offsets_[v];
  term_ids_.resize(offsets_[n_vars_]);
  std::vector<int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  values_.resize(terms.size());
  energy_ = 0.0;
  for (size_t tid = 0; tid < terms.size(); ++tid) {
    const Term& t = terms[tid];
    double value = t.coeff;
    for (int i = 0; i < t.arity; ++i) {
      value *= config[t.vars[i]];
      term_ids_[cursor[t.vars[i]]++] = static_cast<int32_t>(tid);
    }
    values_[tid] = value;
    energy_ += value;
  }
}

void IndexTable::check_var(int32_t var) const {
  if (var < 0 || var >= n_vars_) {
    throw std::out_of_range("variable index " + std::to_string(var) +
                            " out of range [0, " + std::to_string(n_vars_) +
                            ")");
  }
}

double IndexTable::delta_energy(int32_t var) const {
  check_var(var);
  double sum = 0.0;
  for (int32_t k = offsets_[var]; k < offsets_[var + 1]; ++k) {
    sum += values_[term_ids_[k]];
  }
  return -2.0 * sum;
}

double IndexTable::apply_flip(SpinConfig& config, int32_t var) {
  check_var(var);
  double sum = 0.0;
  for (int32_t k = offsets_[var]; k < offsets_[var + 1]; ++k) {
    const int32_t tid = term_ids_[k];
    sum += values_[tid];
    values_[tid] = -values_[tid];
  }
  config[var] = static_cast<int8_t>(-config[var]);
  energy_ += -2.0 * sum;
  return energy_;
}

double IndexTable::recompute_energy_from_cache() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum;
}

}  // namespace hubo
