#pragma once

#include <cstdint>

#include "model.hpp"

namespace hubo {

struct GroundState {
  double energy = 0.0;
  SpinConfig config;
  // Number of configurations whose energy lies within 1e-12 absolute of
  // the minimum.
  int64_t degeneracy = 0;
  // Enumeration bookkeeping: flips performed, always 2^N - 1.
  int64_t flips = 0;
};

// Exhaustive enumeration over all 2^N configurations using incremental
// Gray-code flips, O(2^N * avg-degree). Ties within tolerance keep the
// lexicographically smallest minimizer ('-' sorts before '+', i.e. the
// comparison is on the raw -1/+1 entries). Rejects instances with more
// than max_vars variables; the default cap keeps single-core runtime
// around a minute. Raising it is allowed but each extra variable doubles
// the cost.
GroundState brute_force_ground_state(const HuboInstance& instance,
                                     int32_t max_vars = 24);

// |e_candidate - e_gs| / |e_gs|. Rejects e_gs == 0.
double relative_gap(double e_candidate, double e_gs);

}  // namespace hubo
