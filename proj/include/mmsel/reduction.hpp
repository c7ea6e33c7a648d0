#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mmsel/instance.hpp"

namespace mmsel {

// Simple undirected graph (adjacency lists, no self-loops).
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit Graph(int nodes = 0) : n(nodes), adj(nodes) {}
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int max_degree() const;
  bool connected() const;
};

/**
 * Interference gadget over a max-degree-3 graph: every node is an
 * isolated AP-UE link with SNR n, and each edge leaks interference
 * eps * n (relative to noise) between its endpoints. n >= 1 and
 * eps in (0, 1].
 */
struct Gadget {
  Graph graph;
  double n = 1.0;
  double eps = 0.5;

  void validate() const;
};

/**
 * Sum rate (B = 1, unit weights) when exactly the nodes in `subset`
 * transmit: sum over v in subset of log2(1 + n / (1 + d_v * eps * n)),
 * where d_v counts v's neighbors inside the subset.
 */
double subset_sum_rate(const Gadget& g, const std::vector<int>& subset);
double subset_sum_rate(const Gadget& g, std::uint32_t subset_mask);

/**
 * Factor by which the rate argument of a transmitting node improves when
 * one of its m in-subset edges is removed (m in {1,2,3}):
 *
 *   (m*eps*n + 1) * (((m-1)*eps + 1)*n + 1)
 *   ---------------------------------------
 *   ((m*eps + 1)*n + 1) * ((m-1)*eps*n + 1)
 *
 * Tends to infinity (m=1), 4/3 (m=2), 9/8 (m=3) as n -> inf, eps -> 1.
 */
double drop_edge_factor(int m, double n, double eps);

/**
 * Factor by which a node with m in-subset edges discounts its own rate:
 * (m*eps*n + 1) / ((m*eps + 1)*n + 1). Tends to 1/2, 2/3, 3/4 for
 * m = 1, 2, 3 as n -> inf, eps -> 1; removing such a node costs at most
 * log2(1/g) rate.
 */
double drop_node_factor(int m, double n, double eps);

/**
 * For a dependent subset, returns a max-within-subset-degree node whose
 * removal strictly increases subset_sum_rate at the gadget's (n, eps)
 * (lowest id among valid choices). Returns nullopt when the subset is
 * independent. Throws std::logic_error if no max-degree node qualifies,
 * which cannot happen once n is large enough for the given eps.
 */
std::optional<int> drop_increment_check(const Gadget& g,
                                        const std::vector<int>& subset);

struct MisResult {
  int size = 0;
  std::vector<std::vector<int>> sets;  // all maximum independent sets
};

// Exhaustive maximum-independent-set search; |V| <= 24.
MisResult brute_force_mis(const Graph& graph);

/**
 * Checks the equivalence that makes sum-rate maximization hard: over all
 * 2^|V| subsets, the rate-maximizing family (within 1e-9) must coincide
 * exactly with the maximum independent sets. |V| <= 20.
 */
bool verify_reduction(const Gadget& g);

/**
 * Materializes the gadget as an Instance with one AP, UE and beam per
 * node: serving RSS n * N0 on the diagonal, eps * n * N0 across each
 * edge, zero elsewhere, B = 1 and unit weights. Transmitting subsets of
 * the instance reproduce subset_sum_rate exactly.
 */
Instance materialize_instance(const Gadget& g, double noise_watts = 1e-3);

// Parses a whitespace "u v" edge list (node count = max index + 1;
// '#' starts a comment line).
Graph load_graph_edge_list(std::istream& in);
Graph load_graph_file(const std::string& path);

}  // namespace mmsel
