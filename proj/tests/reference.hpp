#pragma once

// Independent reference implementations used only by tests. These are
// deliberately written against the raw definitions, not the library's
// incremental machinery, so they can serve as oracles for it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "model.hpp"

namespace huboref {

// Closeness under a relative tolerance with an absolute fallback for
// values near zero.
inline bool rel_close(double a, double b, double tol) {
  const double diff = std::abs(a - b);
  return diff <= tol * std::max(std::abs(a), std::abs(b)) || diff <= tol;
}

// Term-by-term summation with explicit sign counting; no shared code
// with hubo::evaluate_energy.
inline double ref_energy(const hubo::HuboInstance& instance,
                         const hubo::SpinConfig& config) {
  double total = 0.0;
  for (const hubo::Term& t : instance.terms()) {
    int minus_count = 0;
    for (int i = 0; i < t.arity; ++i) {
      if (config[t.vars[i]] < 0) minus_count++;
    }
    total += (minus_count % 2 == 0) ? t.coeff : -t.coeff;
  }
  return total;
}

// Exhaustive minimum by plain binary counting (bit b of the state index
// selects spin b), re-evaluating every configuration from scratch.
struct RefGroundState {
  double energy;
  int64_t degeneracy;
};

inline RefGroundState ref_ground_state(const hubo::HuboInstance& instance,
                                       double tie_tol = 1e-12) {
  const int32_t n = instance.n_vars();
  if (n > 20) throw std::runtime_error("reference enumeration capped at 20");
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> energies;
  energies.reserve(size_t{1} << n);
  hubo::SpinConfig config(n);
  for (uint64_t state = 0; state < (uint64_t{1} << n); ++state) {
    for (int32_t b = 0; b < n; ++b) {
      config[b] = ((state >> b) & 1) ? -1 : 1;
    }
    const double e = ref_energy(instance, config);
    energies.push_back(e);
    best = std::min(best, e);
  }
  int64_t degeneracy = 0;
  for (double e : energies) {
    if (e <= best + tie_tol) degeneracy++;
  }
  return {best, degeneracy};
}

// Nearest-rank percentile: the ceil(p * n)-th smallest value, p in (0,1].
inline double ref_percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::runtime_error("empty percentile input");
  std::sort(values.begin(), values.end());
  size_t rank = static_cast<size_t>(
      std::ceil(p * static_cast<double>(values.size())));
  if (rank == 0) rank = 1;
  return values[rank - 1];
}

// The 156-node heavy-hex lattice built from planar coordinates instead
// of index arithmetic: chain nodes at (2r, c), bridge nodes at
// (2r+1, bridge column); edges connect horizontally adjacent chain
// nodes and vertically adjacent (chain, bridge) pairs.
inline std::vector<std::pair<int32_t, int32_t>> ref_heavy_hex_156_edges() {
  struct Coord {
    int y, x;
  };
  std::vector<Coord> coords;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 16; ++c) coords.push_back({2 * r, c});
    if (r < 7) {
      const int off = (r % 2 == 0) ? 3 : 1;
      for (int b = 0; b < 4; ++b) coords.push_back({2 * r + 1, off + 4 * b});
    }
  }
  std::vector<std::pair<int32_t, int32_t>> edges;
  const int n = static_cast<int>(coords.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Coord a = coords[i];
      const Coord b = coords[j];
      const bool horizontal = a.y == b.y && std::abs(a.x - b.x) == 1 &&
                              a.y % 2 == 0;
      const bool vertical = a.x == b.x && std::abs(a.y - b.y) == 1;
      if (horizontal || vertical) edges.emplace_back(i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace huboref
