#include "generator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace hubo {

HuboInstance sample_couplings(int32_t n_vars,
                              const std::vector<Support>& supports,
                              uint64_t seed, InstanceMetadata meta) {
  SplitMix64 rng(seed);
  std::vector<Term> terms;
  terms.reserve(supports.size());
  for (const Support& s : supports) {
    Term t;
    t.arity = static_cast<int>(s.size());
    for (size_t i = 0; i < s.size(); ++i) t.vars[i] = s[i];
    t.coeff = rng.next_cauchy();
    terms.push_back(t);
  }
  meta.seed = seed;
  return HuboInstance(n_vars, std::move(terms), std::move(meta));
}

namespace {

int swap_layers_for_family(const std::string& family) {
  if (family == "3S") return 3;
  if (family == "4S") return 4;
  throw std::invalid_argument("unknown instance family \"" + family +
                              "\" (supported: 3S, 4S)");
}

}  // namespace

HuboInstance generate_instance(const GenerationConfig& config) {
  if (config.n_swap_layers < 0) {
    throw std::invalid_argument("swap layer count must be non-negative");
  }
  if (config.coupling_distribution != "cauchy") {
    throw std::invalid_argument("unsupported coupling distribution \"" +
                                config.coupling_distribution + "\"");
  }
  const HeavyHexGraph graph = build_heavy_hex(config.lattice);
  const SliceSchedule schedule = default_schedule(graph);
  const std::vector<Support> supports =
      densify(graph, schedule, config.n_swap_layers);
  InstanceMetadata meta;
  meta.family = std::to_string(config.n_swap_layers) + "S";
  meta.n_swap_layers = config.n_swap_layers;
  meta.provenance = "heavy-hex-" + config.lattice +
                    " swap-layer densification, default schedule, cauchy "
                    "couplings (splitmix64-v1)";
  return sample_couplings(graph.n_nodes, supports, config.seed,
                          std::move(meta));
}

HuboInstance generate_instance(const std::string& family, uint64_t seed) {
  GenerationConfig config;
  config.n_swap_layers = swap_layers_for_family(family);
  config.seed = seed;
  return generate_instance(config);
}

std::vector<HuboInstance> generate_family(const std::string& family,
                                          int count, uint64_t base_seed) {
  if (count < 1) {
    throw std::invalid_argument("instance count must be at least 1");
  }
  const int n = swap_layers_for_family(family);
  const HeavyHexGraph graph = build_heavy_hex("156");
  const SliceSchedule schedule = default_schedule(graph);
  const std::vector<Support> supports = densify(graph, schedule, n);
  std::vector<HuboInstance> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    InstanceMetadata meta;
    meta.family = family;
    meta.n_swap_layers = n;
    meta.provenance = "heavy-hex-156 swap-layer densification, default "
                      "schedule, cauchy couplings (splitmix64-v1)";
    out.push_back(sample_couplings(graph.n_nodes, supports,
                                   base_seed ^ static_cast<uint64_t>(k),
                                   std::move(meta)));
  }
  return out;
}

HuboInstance random_instance(int32_t n_vars, int32_t n_terms, uint64_t seed) {
  if (n_vars < 3) {
    throw std::invalid_argument("random instances need at least 3 variables");
  }
  const int64_t max_supports = static_cast<int64_t>(n_vars) +
                               static_cast<int64_t>(n_vars) * (n_vars - 1) / 2 +
                               static_cast<int64_t>(n_vars) * (n_vars - 1) *
                                   (n_vars - 2) / 6;
  if (n_terms < 1 || n_terms > max_supports) {
    throw std::invalid_argument("term count must be in [1, " +
                                std::to_string(max_supports) + "]");
  }
  SplitMix64 rng(seed);
  std::set<Support> supports;
  while (static_cast<int32_t>(supports.size()) < n_terms) {
    const int arity = 1 + static_cast<int>(rng.next_below(3));
    Support s;
    while (static_cast<int>(s.size()) < arity) {
      int32_t v = static_cast<int32_t>(rng.next_below(n_vars));
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    supports.insert(std::move(s));
  }
  std::vector<Support> ordered(supports.begin(), supports.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const Support& a, const Support& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::vector<Term> terms;
  terms.reserve(ordered.size());
  for (const Support& s : ordered) {
    Term t;
    t.arity = static_cast<int>(s.size());
    for (size_t i = 0; i < s.size(); ++i) t.vars[i] = s[i];
    t.coeff = rng.next_cauchy();
    terms.push_back(t);
  }
  InstanceMetadata meta;
  meta.family = "random";
  meta.seed = seed;
  meta.provenance = "uniform random supports, cauchy couplings";
  return HuboInstance(n_vars, std::move(terms), std::move(meta));
}

}  // namespace hubo
