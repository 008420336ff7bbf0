#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "heavy_hex.hpp"

namespace hubo {

// A support is a set of 1-3 physical node indices, stored sorted.
using Support = std::vector<int32_t>;

// Supports scheduled together; must be mutually vertex-disjoint and
// each connected in the lattice.
struct Slice {
  std::vector<Support> supports;
};

// A (partial) matching on lattice edges, applied as simultaneous swaps
// of the logical occupants of each pair.
struct SwapLayer {
  std::vector<std::pair<int32_t, int32_t>> swaps;
};

// Iteration k of the densification adds slices[k] (mapped through the
// current logical-to-physical assignment) to the cumulative hypergraph,
// for k = 0 .. n_swap_layers; swap_layers[k-1] permutes the assignment
// before iteration k. A schedule supporting n swap layers therefore
// carries n+1 slice sets and n swap layers.
struct SliceSchedule {
  std::vector<std::vector<Slice>> iteration_slices;
  std::vector<SwapLayer> swap_layers;

  int max_swap_layers() const {
    return static_cast<int>(swap_layers.size());
  }
};

// Knobs of the committed default schedule. The slice content per
// iteration is the full set of edge-coloring matchings (two-local) plus
// a truncated prefix of the three-local path pool; the prefix lengths
// and the pair of matchings used as alternating swap layers were chosen
// so the default 156-node lattice yields 1128 distinct supports at
// three swap layers and 1323 at four.
struct DefaultScheduleParams {
  std::vector<int> three_local_per_iteration;
  int swap_matching_a = 0;
  int swap_matching_b = 1;
};

DefaultScheduleParams calibrated_default_params();

// Greedy edge coloring by edge order: each edge takes the smallest
// color unused at both endpoints. On the heavy-hex lattice this yields
// a small fixed number of matchings.
std::vector<std::vector<std::pair<int32_t, int32_t>>> edge_color_matchings(
    const HeavyHexGraph& graph);

// Deterministic pool of three-local path supports: every length-2 path
// of the lattice, degree-3 centers first (ascending center id, neighbor
// pairs in ascending order), then the remaining degree-2-centered
// paths. Schedules draw a prefix of this pool, so the ordering is part
// of the reproducibility contract.
std::vector<Support> three_local_pool(const HeavyHexGraph& graph);

SliceSchedule default_schedule(const HeavyHexGraph& graph,
                               const DefaultScheduleParams& params);
SliceSchedule default_schedule(const HeavyHexGraph& graph);

// Validates slice disjointness/connectivity and swap-edge membership;
// throws on violation.
void validate_schedule(const HeavyHexGraph& graph,
                       const SliceSchedule& schedule);

// Runs the swap-layer densification: iteration 0 adds the base slices,
// then each of the n_swap_layers iterations permutes the assignment by
// its swap layer and adds that iteration's slices mapped to logical
// indices. Output supports are deduplicated and canonically sorted
// (arity, then lexicographic).
std::vector<Support> densify(const HeavyHexGraph& graph,
                             const SliceSchedule& schedule,
                             int n_swap_layers);

}  // namespace hubo
