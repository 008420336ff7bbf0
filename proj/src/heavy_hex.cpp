#include "heavy_hex.hpp"

#include <algorithm>
#include <stdexcept>

namespace hubo {

bool HeavyHexGraph::has_edge(int32_t u, int32_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

bool HeavyHexGraph::connected() const {
  if (n_nodes == 0) return false;
  std::vector<std::vector<int32_t>> adj(n_nodes);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n_nodes, 0);
  std::vector<int32_t> stack{0};
  seen[0] = 1;
  int32_t count = 0;
  while (!stack.empty()) {
    int32_t u = stack.back();
    stack.pop_back();
    count++;
    for (int32_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return count == n_nodes;
}

int32_t HeavyHexGraph::max_degree() const {
  int32_t m = 0;
  for (int32_t d : degree) m = std::max(m, d);
  return m;
}

namespace {

HeavyHexGraph build_row_lattice(int rows, int row_len, int bridges_per_row,
                                int bridge_spacing, int offset_a,
                                int offset_b) {
  HeavyHexGraph g;
  const int row_stride = row_len + bridges_per_row;
  g.n_nodes = rows * row_len + (rows - 1) * bridges_per_row;

  auto row_node = [&](int r, int c) { return r * row_stride + c; };
  auto bridge_node = [&](int r, int b) { return r * row_stride + row_len + b; };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < row_len; ++c) {
      g.edges.emplace_back(row_node(r, c), row_node(r, c + 1));
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    const int offset = (r % 2 == 0) ? offset_a : offset_b;
    for (int b = 0; b < bridges_per_row; ++b) {
      const int c = offset + b * bridge_spacing;
      g.edges.emplace_back(row_node(r, c), bridge_node(r, b));
      g.edges.emplace_back(bridge_node(r, b), row_node(r + 1, c));
    }
  }
  for (auto& [u, v] : g.edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.degree.assign(g.n_nodes, 0);
  for (auto [u, v] : g.edges) {
    g.degree[u]++;
    g.degree[v]++;
  }
  return g;
}

}  // namespace

HeavyHexGraph build_heavy_hex(const std::string& size_selector) {
  if (size_selector == "156" || size_selector == "default" ||
      size_selector == "heavy-hex-156") {
    return build_row_lattice(8, 16, 4, 4, 3, 1);
  }
  throw std::invalid_argument("unknown heavy-hex size selector \"" +
                              size_selector + "\" (supported: 156)");
}

}  // namespace hubo
