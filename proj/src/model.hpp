#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hubo {

// One interaction term: 1 to 3 distinct variable indices (strictly
// increasing) and a finite nonzero coupling coefficient.
struct Term {
  std::array<int32_t, 3> vars{-1, -1, -1};
  int arity = 0;
  double coeff = 0.0;

  Term() = default;
  Term(std::initializer_list<int32_t> vs, double c);

  bool same_support(const Term& o) const {
    return arity == o.arity && vars == o.vars;
  }
};

bool support_less(const Term& a, const Term& b);

// Spin assignment, one entry per variable, values exactly +1 or -1.
using SpinConfig = std::vector<int8_t>;

struct InstanceMetadata {
  std::string family;        // "3S", "4S", "random", "imported", ...
  uint64_t seed = 0;
  int n_swap_layers = 0;
  std::string provenance;    // free-form
};

// Immutable after construction. Construction canonicalizes: variable
// indices sorted within each term, duplicate supports merged by summing
// coefficients, zero-sum merges dropped, term list sorted by arity then
// lexicographic vars. Hard violations (index out of range, repeated
// index inside a term, non-finite coefficient, bad arity) throw.
class HuboInstance {
 public:
  HuboInstance(int32_t n_vars, std::vector<Term> terms,
               InstanceMetadata meta = {});

  int32_t n_vars() const { return n_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  const InstanceMetadata& metadata() const { return meta_; }

  // Term counts keyed by arity 1..3.
  std::array<int64_t, 4> term_counts_by_arity() const;

  // Sum of all coefficients == energy of the all-plus configuration.
  double coeff_sum() const;

 private:
  int32_t n_vars_;
  std::vector<Term> terms_;
  InstanceMetadata meta_;
};

// Full energy H(s) = sum over terms of coeff * prod of spins. Throws on
// dimension mismatch or a non-spin entry.
double evaluate_energy(const HuboInstance& instance, const SpinConfig& config);

SpinConfig all_plus(int32_t n_vars);
SpinConfig random_config(int32_t n_vars, uint64_t seed);

// Spin strings use '+' and '-' one character per variable.
std::string config_to_string(const SpinConfig& config);
SpinConfig config_from_string(const std::string& s);

// Validation over a raw (possibly non-canonical) term list. Never
// throws; every problem is reported as one violation entry.
enum class ViolationKind {
  kIndexOutOfRange,
  kRepeatedIndexInTerm,
  kBadArity,
  kNonFiniteCoeff,
  kZeroCoeff,
  kDuplicateSupport,
  kNonCanonicalOrder,
};

struct Violation {
  ViolationKind kind;
  size_t term_index;   // position in the raw list
  std::string detail;
};

struct RawTerm {
  std::vector<int32_t> vars;
  double coeff = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_terms(int32_t n_vars,
                                const std::vector<RawTerm>& terms);
ValidationReport validate_instance(const HuboInstance& instance);

const char* violation_kind_name(ViolationKind kind);

}  // namespace hubo
