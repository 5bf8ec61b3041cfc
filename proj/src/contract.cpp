#include "bnsynth/contract.hpp"

#include <algorithm>

#include "bnsynth/errors.hpp"

namespace bnsynth {

ContractPair conjoin_pairs(std::span<const ContractPair> pairs) {
  ContractPair out{BoolFunc::constant({}, true), BoolFunc::constant({}, true)};
  for (const auto& p : pairs) {
    out.assumption = out.assumption & p.assumption;
    out.guarantee = out.guarantee & p.guarantee;
  }
  return out;
}

BoolFunc project_assumption(const BoolFunc& assumption, const BooleanNetwork& net,
                            std::string_view subsystem) {
  const auto external = classify_inputs(net, subsystem).external;
  return assumption.extend(assumption.scope().united(external)).project(external);
}

std::size_t DistributionGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : adjacency) n += row.count();
  return n;
}

DistributionGraph build_distribution_graph(const BoolFunc& guarantee, const VariableSet& local_outputs) {
  DistributionGraph g;
  g.left_scope = local_outputs;
  g.right_scope = guarantee.scope().without(local_outputs);
  const auto joint = g.left_scope.united(g.right_scope);
  const auto full = guarantee.extend(joint);
  const auto n_right = g.right_scope.size();
  const std::uint64_t lefts = std::uint64_t{1} << g.left_scope.size();
  const std::uint64_t rights = std::uint64_t{1} << n_right;
  g.adjacency.assign(lefts, boost::dynamic_bitset<std::uint64_t>(rights));
  for (std::uint64_t l = 0; l < lefts; ++l)
    for (std::uint64_t r = 0; r < rights; ++r)
      if (full.eval((l << n_right) | r)) g.adjacency[l].set(r);
  return g;
}

DistributionGraph build_distribution_graph(const BoolFunc& guarantee, const BooleanNetwork& net,
                                           std::string_view subsystem) {
  return build_distribution_graph(guarantee, net.subsystem(subsystem).outputs);
}

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// MBEA over the right-hand side. `left` holds the common neighbourhood of
// `right`; `candidates` may still join, `excluded` were already expanded.
class BicliqueSearch {
 public:
  explicit BicliqueSearch(const DistributionGraph& g) {
    const auto lefts = g.left_size();
    const auto rights = g.right_size();
    neighbours_.assign(rights, Bits(lefts));
    for (std::size_t l = 0; l < lefts; ++l)
      for (auto r = g.adjacency[l].find_first(); r != Bits::npos; r = g.adjacency[l].find_next(r))
        neighbours_[r].set(l);
    Bits all(lefts);
    all.set();
    std::vector<std::size_t> candidates;
    for (std::size_t r = 0; r < rights; ++r)
      if (neighbours_[r].any()) candidates.push_back(r);
    if (lefts > 0) expand(all, {}, std::move(candidates), {});
  }

  std::vector<Biclique> take() { return std::move(found_); }

 private:
  void expand(const Bits& left, const std::vector<std::size_t>& right, std::vector<std::size_t> candidates,
              std::vector<std::size_t> excluded) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto x = candidates[i];
      Bits next_left = left & neighbours_[x];
      const auto width = next_left.count();
      std::vector<std::size_t> next_right = right;
      next_right.push_back(x);

      bool maximal = true;
      std::vector<std::size_t> next_excluded;
      for (auto v : excluded) {
        const auto overlap = (next_left & neighbours_[v]).count();
        if (overlap == width) {
          maximal = false;
          break;
        }
        if (overlap > 0) next_excluded.push_back(v);
      }
      if (maximal) {
        std::vector<std::size_t> next_candidates;
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
          const auto v = candidates[j];
          const auto overlap = (next_left & neighbours_[v]).count();
          if (overlap == width)
            next_right.push_back(v);
          else if (overlap > 0)
            next_candidates.push_back(v);
        }
        record(next_left, next_right);
        if (!next_candidates.empty())
          expand(next_left, next_right, std::move(next_candidates), std::move(next_excluded));
      }
      excluded.push_back(x);
    }
  }

  void record(const Bits& left, std::vector<std::size_t> right) {
    Biclique b;
    for (auto l = left.find_first(); l != Bits::npos; l = left.find_next(l)) b.left.push_back(l);
    std::sort(right.begin(), right.end());
    b.right.assign(right.begin(), right.end());
    found_.push_back(std::move(b));
  }

  std::vector<Bits> neighbours_;
  std::vector<Biclique> found_;
};

}  // namespace

std::vector<Biclique> maximal_bicliques(const DistributionGraph& g) {
  return BicliqueSearch(g).take();
}

std::vector<Distribution> maximal_distributions(const BoolFunc& guarantee,
                                                const VariableSet& local_outputs) {
  const auto g = build_distribution_graph(guarantee, local_outputs);
  auto bicliques = maximal_bicliques(g);
  std::sort(bicliques.begin(), bicliques.end(), [](const Biclique& a, const Biclique& b) {
    const auto wa = a.left.size() * a.right.size();
    const auto wb = b.left.size() * b.right.size();
    if (wa != wb) return wa > wb;
    return a.left < b.left;
  });
  std::vector<Distribution> out;
  out.reserve(bicliques.size());
  for (const auto& b : bicliques)
    out.push_back({BoolFunc::from_indices(g.left_scope, b.left),
                   BoolFunc::from_indices(g.right_scope, b.right)});
  return out;
}

std::vector<Distribution> maximal_distributions(const BoolFunc& guarantee, const BooleanNetwork& net,
                                                std::string_view subsystem) {
  return maximal_distributions(guarantee, net.subsystem(subsystem).outputs);
}

std::optional<std::vector<BoolFunc>> conjunctive_decomposition(const BoolFunc& f,
                                                               std::span<const VariableSet> partition) {
  VariableSet covered;
  for (const auto& block : partition) {
    if (!block.disjoint(covered)) throw Error("partition blocks overlap");
    covered = covered.united(block);
  }
  if (!f.scope().subset_of(covered)) throw Error("partition does not cover the scope");
  const auto full = f.extend(f.scope().united(covered));
  std::vector<BoolFunc> parts;
  BoolFunc product = BoolFunc::constant(full.scope(), true);
  for (const auto& block : partition) {
    parts.push_back(full.project(block));
    product = product & parts.back();
  }
  if (!equivalent(product, full)) return std::nullopt;
  return parts;
}

}  // namespace bnsynth
