#include "mmsel/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "mmsel/common.hpp"

namespace mmsel {

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
    throw std::invalid_argument("Graph::add_edge: invalid endpoints");
  }
  if (has_edge(u, v)) return;
  adj[u].push_back(v);
  adj[v].push_back(u);
  std::sort(adj[u].begin(), adj[u].end());
  std::sort(adj[v].begin(), adj[v].end());
}

bool Graph::has_edge(int u, int v) const {
  return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::connected() const {
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

void Gadget::validate() const {
  if (graph.n <= 0) {
    throw std::invalid_argument("Gadget: graph must be non-empty");
  }
  if (graph.max_degree() > 3) {
    throw std::invalid_argument("Gadget: max degree must be <= 3");
  }
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Gadget: n must be >= 1");
  }
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    throw std::invalid_argument("Gadget: eps must lie in (0, 1]");
  }
}

double subset_sum_rate(const Gadget& g, std::uint32_t subset_mask) {
  g.validate();
  if (g.graph.n > 24) {
    throw std::invalid_argument("subset_sum_rate: graph too large for mask");
  }
  double total = 0.0;
  for (int v = 0; v < g.graph.n; ++v) {
    if (!(subset_mask >> v & 1u)) continue;
    int inside = 0;
    for (int w : g.graph.adj[v]) inside += subset_mask >> w & 1u;
    total += std::log2(1.0 + g.n / (1.0 + inside * g.eps * g.n));
  }
  return total;
}

double subset_sum_rate(const Gadget& g, const std::vector<int>& subset) {
  g.validate();
  std::vector<bool> in(g.graph.n, false);
  for (int v : subset) {
    if (v < 0 || v >= g.graph.n) {
      throw std::invalid_argument("subset_sum_rate: node out of range");
    }
    if (in[v]) {
      throw std::invalid_argument("subset_sum_rate: duplicate node");
    }
    in[v] = true;
  }
  double total = 0.0;
  for (int v : subset) {
    int inside = 0;
    for (int w : g.graph.adj[v]) inside += in[w] ? 1 : 0;
    total += std::log2(1.0 + g.n / (1.0 + inside * g.eps * g.n));
  }
  return total;
}

namespace {

void check_factor_args(int m, double n, double eps) {
  if (m < 1 || m > 3) {
    throw std::invalid_argument("rate factor: m must be 1, 2 or 3");
  }
  if (!(n >= 1.0)) {
    throw std::invalid_argument("rate factor: n must be >= 1");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("rate factor: eps must lie in (0, 1)");
  }
}

}  // namespace

double drop_edge_factor(int m, double n, double eps) {
  check_factor_args(m, n, eps);
  const double md = m;
  return (md * eps * n + 1.0) / ((md * eps + 1.0) * n + 1.0) *
         (((md - 1.0) * eps + 1.0) * n + 1.0) / ((md - 1.0) * eps * n + 1.0);
}

double drop_node_factor(int m, double n, double eps) {
  check_factor_args(m, n, eps);
  const double md = m;
  return (md * eps * n + 1.0) / ((md * eps + 1.0) * n + 1.0);
}

std::optional<int> drop_increment_check(const Gadget& g,
                                        const std::vector<int>& subset) {
  const double base = subset_sum_rate(g, subset);  // validates arguments
  std::vector<bool> in(g.graph.n, false);
  for (int v : subset) in[v] = true;

  int max_deg = 0;
  for (int v : subset) {
    int inside = 0;
    for (int w : g.graph.adj[v]) inside += in[w] ? 1 : 0;
    max_deg = std::max(max_deg, inside);
  }
  if (max_deg == 0) return std::nullopt;  // independent subset

  for (int v : subset) {
    int inside = 0;
    for (int w : g.graph.adj[v]) inside += in[w] ? 1 : 0;
    if (inside != max_deg) continue;
    std::vector<int> without;
    for (int w : subset) {
      if (w != v) without.push_back(w);
    }
    if (subset_sum_rate(g, without) > base) return v;
  }
  throw std::logic_error(
      "drop_increment_check: no max-degree removal helps; n too small for eps");
}

MisResult brute_force_mis(const Graph& graph) {
  if (graph.n <= 0 || graph.n > 24) {
    throw std::invalid_argument("brute_force_mis: need 1 <= |V| <= 24");
  }
  std::vector<std::uint32_t> nbr(graph.n, 0);
  for (int v = 0; v < graph.n; ++v) {
    for (int w : graph.adj[v]) nbr[v] |= 1u << w;
  }
  MisResult result;
  std::vector<std::uint32_t> best_masks;
  // Depth-first over vertices; prune when even taking everything left
  // cannot beat the best size found.
  const auto popcount = [](std::uint32_t m) {
    return __builtin_popcount(m);
  };
  struct Frame {
    int v;
    std::uint32_t chosen;
    std::uint32_t banned;
  };
  std::vector<Frame> stack = {{0, 0u, 0u}};
  while (!stack.empty()) {
    auto [v, chosen, banned] = stack.back();
    stack.pop_back();
    if (v == graph.n) {
      const int size = popcount(chosen);
      if (size > result.size) {
        result.size = size;
        best_masks.clear();
      }
      if (size == result.size) best_masks.push_back(chosen);
      continue;
    }
    if (popcount(chosen) + (graph.n - v) < result.size) continue;
    // Explore "take v" before "skip v" is unnecessary for completeness;
    // push skip first so take is processed first (LIFO).
    stack.push_back({v + 1, chosen, banned});
    if (!(banned >> v & 1u)) {
      stack.push_back({v + 1, chosen | 1u << v, banned | nbr[v]});
    }
  }
  std::sort(best_masks.begin(), best_masks.end());
  best_masks.erase(std::unique(best_masks.begin(), best_masks.end()),
                   best_masks.end());
  for (std::uint32_t mask : best_masks) {
    std::vector<int> set;
    for (int v = 0; v < graph.n; ++v) {
      if (mask >> v & 1u) set.push_back(v);
    }
    result.sets.push_back(std::move(set));
  }
  return result;
}

bool verify_reduction(const Gadget& g) {
  g.validate();
  if (g.graph.n > 20) {
    throw std::invalid_argument("verify_reduction: |V| must be <= 20");
  }
  const std::uint32_t limit = 1u << g.graph.n;
  double best = 0.0;  // the empty subset scores 0
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    best = std::max(best, subset_sum_rate(g, mask));
  }
  std::vector<std::uint32_t> best_masks;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (subset_sum_rate(g, mask) >= best - 1e-9) best_masks.push_back(mask);
  }

  const MisResult mis = brute_force_mis(g.graph);
  std::vector<std::uint32_t> mis_masks;
  for (const auto& set : mis.sets) {
    std::uint32_t mask = 0;
    for (int v : set) mask |= 1u << v;
    mis_masks.push_back(mask);
  }
  std::sort(best_masks.begin(), best_masks.end());
  std::sort(mis_masks.begin(), mis_masks.end());
  return best_masks == mis_masks;
}

Instance materialize_instance(const Gadget& g, double noise_watts) {
  g.validate();
  if (!(noise_watts > 0.0)) {
    throw std::invalid_argument("materialize_instance: noise must be > 0");
  }
  const int nodes = g.graph.n;
  Instance inst;
  inst.rss = RssTensor(1, nodes, nodes, 0.0);
  inst.weights.assign(nodes, 1.0);
  inst.noise_power = noise_watts;
  inst.bandwidth = 1.0;
  inst.rss_threshold = 0.0;
  for (int v = 0; v < nodes; ++v) {
    inst.rss.at(0, v, v) = g.n * noise_watts;
    for (int w : g.graph.adj[v]) {
      inst.rss.at(0, w, v) = g.eps * g.n * noise_watts;
    }
  }
  inst.validate();
  return inst;
}

Graph load_graph_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_node = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) {
      throw std::invalid_argument("edge list: expected two node ids per line");
    }
    if (u < 0 || v < 0) {
      throw std::invalid_argument("edge list: node ids must be >= 0");
    }
    edges.emplace_back(u, v);
    max_node = std::max({max_node, u, v});
  }
  if (max_node < 0) {
    throw std::invalid_argument("edge list: no edges found");
  }
  Graph graph(max_node + 1);
  for (const auto& [u, v] : edges) graph.add_edge(u, v);
  return graph;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open graph file: " + path);
  }
  return load_graph_edge_list(in);
}

}  // namespace mmsel
