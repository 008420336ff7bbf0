#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"

namespace hubo {

// Instance files are a single JSON object:
//
//   {
//     "format_version": 1,
//     "n_vars": <int>,
//     "family": <string>,
//     "n_swap_layers": <int>,
//     "seed": <uint64>,
//     "term_counts": {"1": <int>, "2": <int>, "3": <int>},
//     "provenance": <string>,
//     "terms": [
//       [<arity>, [<indices...>], <coefficient>],
//       ...
//     ]
//   }
//
// The writer emits terms in canonical order, one record per line, with
// coefficients at 17 significant digits so the round trip is exact and
// regeneration is byte-identical. The reader accepts any JSON layout of
// the same object and re-canonicalizes.

std::string instance_to_string(const HuboInstance& instance);
void save_instance(const HuboInstance& instance, const std::string& path);

HuboInstance instance_from_string(const std::string& text,
                                  const std::string& origin = "<string>");
HuboInstance load_instance(const std::string& path);

// Formats a double with 17 significant digits, round-trippable.
std::string format_coeff(double value);

// Deterministic generation manifest: one entry per written instance
// with its term-count breakdown. No timestamps, so reruns are
// byte-identical.
struct ManifestEntry {
  std::string file;
  int32_t n_vars = 0;
  uint64_t seed = 0;
  int64_t n_terms = 0;
  std::array<int64_t, 4> term_counts{0, 0, 0, 0};
};

std::string manifest_to_string(const std::string& family, int count,
                               uint64_t base_seed,
                               const std::vector<ManifestEntry>& entries);

}  // namespace hubo
