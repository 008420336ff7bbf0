#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace hubo {

Term::Term(std::initializer_list<int32_t> vs, double c) : coeff(c) {
  if (vs.size() < 1 || vs.size() > 3) {
    throw std::invalid_argument("term arity must be 1..3, got " +
                                std::to_string(vs.size()));
  }
  arity = static_cast<int>(vs.size());
  int i = 0;
  for (int32_t v : vs) vars[i++] = v;
}

bool support_less(const Term& a, const Term& b) {
  if (a.arity != b.arity) return a.arity < b.arity;
  return a.vars < b.vars;
}

namespace {

void canonicalize_term(Term& t, int32_t n_vars) {
  std::sort(t.vars.begin(), t.vars.begin() + t.arity);
  for (int i = 0; i < t.arity; ++i) {
    if (t.vars[i] < 0 || t.vars[i] >= n_vars) {
      throw std::invalid_argument("term variable index " +
                                  std::to_string(t.vars[i]) +
                                  " out of range [0, " +
                                  std::to_string(n_vars) + ")");
    }
    if (i > 0 && t.vars[i] == t.vars[i - 1]) {
      throw std::invalid_argument("term repeats variable index " +
                                  std::to_string(t.vars[i]));
    }
  }
  if (!std::isfinite(t.coeff)) {
    throw std::invalid_argument("term coefficient is not finite");
  }
  if (t.arity < 1 || t.arity > 3) {
    throw std::invalid_argument("term arity must be 1..3");
  }
}

}  // namespace

HuboInstance::HuboInstance(int32_t n_vars, std::vector<Term> terms,
                           InstanceMetadata meta)
    : n_vars_(n_vars), meta_(std::move(meta)) {
  if (n_vars <= 0) {
    throw std::invalid_argument("instance needs a positive variable count");
  }
  for (Term& t : terms) canonicalize_term(t, n_vars);
  std::sort(terms.begin(), terms.end(), support_less);
  terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().same_support(t)) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  // Zero-sum merges disappear entirely.
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0.0; });
}

std::array<int64_t, 4> HuboInstance::term_counts_by_arity() const {
  std::array<int64_t, 4> counts{0, 0, 0, 0};
  for (const Term& t : terms_) counts[t.arity]++;
  return counts;
}

double HuboInstance::coeff_sum() const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.coeff;
  return s;
}

double evaluate_energy(const HuboInstance& instance, const SpinConfig& config) {
  if (static_cast<int32_t>(config.size()) != instance.n_vars()) {
    throw std::invalid_argument(
        "config length " + std::to_string(config.size()) +
        " does not match instance variable count " +
        std::to_string(instance.n_vars()));
  }
  for (int8_t s : config) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("config entries must be +1 or -1");
    }
  }
  double energy = 0.0;
  for (const Term& t : instance.terms()) {
    double prod = t.coeff;
    for (int i = 0; i < t.arity; ++i) prod *= config[t.vars[i]];
    energy += prod;
  }
  return energy;
}

SpinConfig all_plus(int32_t n_vars) { return SpinConfig(n_vars, 1); }

SpinConfig random_config(int32_t n_vars, uint64_t seed) {
  SplitMix64 rng(seed);
  SpinConfig c(n_vars);
  for (int32_t i = 0; i < n_vars; ++i) c[i] = rng.next_bool() ? 1 : -1;
  return c;
}

std::string config_to_string(const SpinConfig& config) {
  std::string s;
  s.reserve(config.size());
  for (int8_t v : config) s.push_back(v > 0 ? '+' : '-');
  return s;
}

SpinConfig config_from_string(const std::string& s) {
  SpinConfig c;
  c.reserve(s.size());
  for (char ch : s) {
    if (ch == '+') {
      c.push_back(1);
    } else if (ch == '-') {
      c.push_back(-1);
    } else {
      throw std::invalid_argument(std::string("spin string character '") + ch +
                                  "' is not '+' or '-'");
    }
  }
  return c;
}

namespace {

void add(ValidationReport& report, ViolationKind kind, size_t idx,
         std::string detail) {
  report.violations.push_back({kind, idx, std::move(detail)});
}

}  // namespace

ValidationReport validate_terms(int32_t n_vars,
                                const std::vector<RawTerm>& terms) {
  ValidationReport report;
  // Sorted-support key -> first raw index, for duplicate detection.
  std::map<std::vector<int32_t>, size_t> seen;
  std::vector<int32_t> prev_key;
  bool order_ok = true;
  for (size_t i = 0; i < terms.size(); ++i) {
    const RawTerm& t = terms[i];
    if (t.vars.size() < 1 || t.vars.size() > 3) {
      add(report, ViolationKind::kBadArity, i,
          "arity " + std::to_string(t.vars.size()));
      continue;
    }
    bool indices_ok = true;
    for (int32_t v : t.vars) {
      if (v < 0 || v >= n_vars) {
        add(report, ViolationKind::kIndexOutOfRange, i,
            "index " + std::to_string(v));
        indices_ok = false;
      }
    }
    std::vector<int32_t> key = t.vars;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
      add(report, ViolationKind::kRepeatedIndexInTerm, i, "");
      indices_ok = false;
    }
    if (!std::isfinite(t.coeff)) {
      add(report, ViolationKind::kNonFiniteCoeff, i, "");
    } else if (t.coeff == 0.0) {
      add(report, ViolationKind::kZeroCoeff, i, "");
    }
    if (!indices_ok) continue;
    auto [it, inserted] = seen.emplace(key, i);
    if (!inserted) {
      add(report, ViolationKind::kDuplicateSupport, i,
          "same support as term " + std::to_string(it->second));
    }
    // Canonical order: sorted-within-term and (arity, vars) non-decreasing.
    if (key != t.vars) order_ok = false;
    if (!prev_key.empty()) {
      if (key.size() < prev_key.size() ||
          (key.size() == prev_key.size() && key < prev_key)) {
        order_ok = false;
      }
    }
    prev_key = key;
  }
  if (!order_ok) {
    add(report, ViolationKind::kNonCanonicalOrder, 0,
        "term list is not sorted by (arity, vars)");
  }
  return report;
}

ValidationReport validate_instance(const HuboInstance& instance) {
  std::vector<RawTerm> raw;
  raw.reserve(instance.terms().size());
  for (const Term& t : instance.terms()) {
    RawTerm r;
    r.vars.assign(t.vars.begin(), t.vars.begin() + t.arity);
    r.coeff = t.coeff;
    raw.push_back(std::move(r));
  }
  return validate_terms(instance.n_vars(), raw);
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kIndexOutOfRange: return "index-out-of-range";
    case ViolationKind::kRepeatedIndexInTerm: return "repeated-index-in-term";
    case ViolationKind::kBadArity: return "bad-arity";
    case ViolationKind::kNonFiniteCoeff: return "non-finite-coeff";
    case ViolationKind::kZeroCoeff: return "zero-coeff";
    case ViolationKind::kDuplicateSupport: return "duplicate-support";
    case ViolationKind::kNonCanonicalOrder: return "non-canonical-order";
  }
  return "unknown";
}

}  // namespace hubo
