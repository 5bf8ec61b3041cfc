#pragma once

// Assumption/guarantee pairs, local assumptions by projection, and guarantee
// distributions as maximal bicliques of the guarantee's admissibility graph.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bnsynth/boolfunc.hpp"
#include "bnsynth/network.hpp"

namespace bnsynth {

struct ContractPair {
  BoolFunc assumption;
  BoolFunc guarantee;
};

/// Conjoins several assumption/guarantee pairs into one: [AND A_k, AND G_k].
ContractPair conjoin_pairs(std::span<const ContractPair> pairs);

/// A|_{E_i^ext}. Variables of E_i^ext missing from A's scope are unconstrained.
BoolFunc project_assumption(const BoolFunc& assumption, const BooleanNetwork& net,
                            std::string_view subsystem);

/// G split into a part local to one subsystem (`down`, over its outputs)
/// and a part for everyone else (`up`).
struct Distribution {
  BoolFunc down;
  BoolFunc up;
};

/// Bipartite graph with left = valuations of Y_i, right = valuations of the
/// remaining outputs in G's scope, and an edge wherever G holds.
struct DistributionGraph {
  VariableSet left_scope;
  VariableSet right_scope;
  /// adjacency[l] has bit r set iff (l, r) is an edge.
  std::vector<boost::dynamic_bitset<std::uint64_t>> adjacency;

  std::size_t left_size() const { return adjacency.size(); }
  std::size_t right_size() const { return std::size_t{1} << right_scope.size(); }
  bool has_edge(std::uint64_t l, std::uint64_t r) const { return adjacency[l].test(r); }
  std::size_t edge_count() const;
};

DistributionGraph build_distribution_graph(const BoolFunc& guarantee, const BooleanNetwork& net,
                                           std::string_view subsystem);
DistributionGraph build_distribution_graph(const BoolFunc& guarantee, const VariableSet& local_outputs);

/// A complete bipartite subgraph given by its two node sets (sorted).
struct Biclique {
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;

  friend auto operator<=>(const Biclique&, const Biclique&) = default;
};

/// Every maximal biclique with both sides nonempty, via a Bron-Kerbosch
/// style search (MBEA) over right-hand vertices. Unordered.
std::vector<Biclique> maximal_bicliques(const DistributionGraph& g);

/// Maximal distributions, most permissive first (descending
/// |down|*|up|, then lexicographically by the satisfying set of `down`).
std::vector<Distribution> maximal_distributions(const BoolFunc& guarantee, const BooleanNetwork& net,
                                                std::string_view subsystem);
std::vector<Distribution> maximal_distributions(const BoolFunc& guarantee,
                                                const VariableSet& local_outputs);

/// Per-block projections of `f` if their conjunction equals `f`.
std::optional<std::vector<BoolFunc>> conjunctive_decomposition(const BoolFunc& f,
                                                               std::span<const VariableSet> partition);

}  // namespace bnsynth
