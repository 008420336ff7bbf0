#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hubo {

// Degree-<=3 heavy-hex coupling lattice. The default 156-node layout is
// eight rows of 16 node chains joined by seven rows of four bridge
// nodes; bridge columns alternate between {3,7,11,15} and {1,5,9,13}
// so every node keeps degree at most 3.
struct HeavyHexGraph {
  int32_t n_nodes = 0;
  std::vector<std::pair<int32_t, int32_t>> edges;  // u < v, sorted
  std::vector<int32_t> degree;

  bool has_edge(int32_t u, int32_t v) const;
  bool connected() const;
  int32_t max_degree() const;
};

// Supported selectors: "156" (aliases "default", "heavy-hex-156").
// Unknown selectors are rejected.
HeavyHexGraph build_heavy_hex(const std::string& size_selector = "156");

}  // namespace hubo
