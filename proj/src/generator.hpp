#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "swap_schedule.hpp"

namespace hubo {

struct GenerationConfig {
  int n_swap_layers = 3;            // 3 -> family "3S", 4 -> "4S"
  uint64_t seed = 0;
  std::string lattice = "156";
  std::string coupling_distribution = "cauchy";  // only supported tag
};

// Draws one independent standard-Cauchy coefficient per support, in
// canonical support order, from splitmix64-v1 seeded with `seed`.
// Identical seeds give bit-identical instances.
HuboInstance sample_couplings(int32_t n_vars,
                              const std::vector<Support>& supports,
                              uint64_t seed, InstanceMetadata meta = {});

// One densified instance under the default schedule.
HuboInstance generate_instance(const GenerationConfig& config);

// Family shorthand: "3S" or "4S" on the default lattice.
HuboInstance generate_instance(const std::string& family, uint64_t seed);

// Instance k of the batch uses seed = base_seed XOR k.
std::vector<HuboInstance> generate_family(const std::string& family,
                                          int count, uint64_t base_seed);

// Small random instances for tests and desk-scale experiments: n_terms
// distinct supports drawn uniformly over mixed arities {1,2,3}, Cauchy
// coefficients. Not a benchmark family.
HuboInstance random_instance(int32_t n_vars, int32_t n_terms, uint64_t seed);

}  // namespace hubo
