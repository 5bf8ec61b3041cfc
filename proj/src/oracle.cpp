#include "bnsynth/oracle.hpp"

#include <algorithm>
#include <limits>

#include "bnsynth/errors.hpp"

namespace bnsynth::oracle {

std::size_t controller_bits(const BooleanNetwork& net) {
  constexpr auto cap = std::numeric_limits<std::size_t>::max() / 2;
  std::size_t total = 0;
  for (const auto& s : net.subsystems) {
    if (s.env_inputs.size() >= 48) return cap;
    total += s.controls.size() << s.env_inputs.size();
    if (total > cap) return cap;
  }
  return total;
}

namespace {

// Contract evaluated on the network's external inputs and outputs.
struct ContractTables {
  BoolFunc assumption;
  BoolFunc guarantee;
};

ContractTables align_contract(const NetworkEvaluator& ev, const ContractPair& c) {
  const auto& ext = ev.external_inputs();
  const auto& outs = ev.outputs();
  if (!c.assumption.scope().subset_of(ext))
    throw Error("assumption mentions variables that are not external inputs");
  if (!c.guarantee.scope().subset_of(outs)) throw Error("guarantee mentions variables that are not outputs");
  return {c.assumption.extend(c.assumption.scope().united(ext)).project(ext),
          c.guarantee.extend(c.guarantee.scope().united(outs)).project(outs)};
}

}  // namespace

VerificationResult verify_closed_loop(const BooleanNetwork& net, const ControllerSet& controllers,
                                      const ContractPair& contract) {
  NetworkEvaluator ev(net);
  const auto aligned = align_controllers(net, controllers);
  const auto c = align_contract(ev, contract);
  const auto rows = std::uint64_t{1} << ev.external_inputs().size();
  for (std::uint64_t x = 0; x < rows; ++x) {
    if (!c.assumption.eval(x)) continue;
    if (!c.guarantee.eval(ev.evaluate_closed(x, aligned)))
      return {false, Valuation::from_index(ev.external_inputs(), x)};
  }
  return {};
}

std::optional<ControllerSet> brute_force_distributed(const BooleanNetwork& net, const ContractPair& contract,
                                                     const Budget& budget) {
  const auto bits = controller_bits(net);
  if (bits > budget.max_total_controller_bits)
    throw BudgetExceeded("controller search space of 2^" + std::to_string(bits) +
                         " tables exceeds the budget of 2^" +
                         std::to_string(budget.max_total_controller_bits));
  NetworkEvaluator ev(net);
  const auto c = align_contract(ev, contract);
  const auto rows = std::uint64_t{1} << ev.external_inputs().size();

  // One odometer digit per controller row: subsystem-major, row-minor. The
  // last digit moves fastest, which gives lexicographic order.
  struct Digit {
    std::size_t sys;
    std::uint64_t row;
    std::uint64_t radix;
  };
  std::vector<Digit> digits;
  std::vector<std::vector<std::uint64_t>> tables(net.subsystems.size());
  for (std::size_t i = 0; i < net.subsystems.size(); ++i) {
    const auto& s = net.subsystems[i];
    const auto n_rows = std::uint64_t{1} << s.env_inputs.size();
    tables[i].assign(n_rows, 0);
    if (s.controls.empty()) continue;
    for (std::uint64_t r = 0; r < n_rows; ++r) digits.push_back({i, r, std::uint64_t{1} << s.controls.size()});
  }

  const NetworkEvaluator::Policy policy = [&](std::size_t i, std::uint64_t env) { return tables[i][env]; };
  auto satisfied = [&] {
    for (std::uint64_t x = 0; x < rows; ++x)
      if (c.assumption.eval(x) && !c.guarantee.eval(ev.evaluate(x, policy))) return false;
    return true;
  };

  while (true) {
    if (satisfied()) {
      ControllerSet out;
      for (std::size_t i = 0; i < net.subsystems.size(); ++i) {
        const auto& s = net.subsystems[i];
        out.emplace(s.name, Controller{s.name, s.env_inputs, s.controls, tables[i]});
      }
      return out;
    }
    std::size_t k = digits.size();
    while (k > 0) {
      auto& d = digits[k - 1];
      auto& cell = tables[d.sys][d.row];
      if (++cell < d.radix) break;
      cell = 0;
      --k;
    }
    if (k == 0) return std::nullopt;
  }
}

std::vector<Biclique> enumerate_bicliques_subset(const DistributionGraph& g) {
  const std::size_t n_left = g.left_size();
  const std::size_t n_right = g.right_size();
  if (n_left * n_right > 1024) throw BudgetExceeded("graph too large for subset enumeration");
  const bool by_left = n_left <= n_right;
  const std::size_t small = by_left ? n_left : n_right;
  const std::size_t large = by_left ? n_right : n_left;
  if (small > 20) throw BudgetExceeded("graph too large for subset enumeration");

  auto edge = [&](std::size_t s, std::size_t l) { return by_left ? g.has_edge(s, l) : g.has_edge(l, s); };
  auto common_large = [&](std::uint64_t subset) {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < large; ++l) {
      bool all = true;
      for (std::size_t s = 0; s < small && all; ++s)
        if ((subset >> s) & 1U) all = edge(s, l);
      if (all) out.push_back(l);
    }
    return out;
  };
  auto common_small = [&](const std::vector<std::size_t>& ls) {
    std::uint64_t out = 0;
    for (std::size_t s = 0; s < small; ++s)
      if (std::all_of(ls.begin(), ls.end(), [&](std::size_t l) { return edge(s, l); }))
        out |= std::uint64_t{1} << s;
    return out;
  };

  std::vector<Biclique> out;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << small); ++subset) {
    const auto other = common_large(subset);
    if (other.empty() || common_small(other) != subset) continue;
    std::vector<std::uint64_t> a;
    for (std::size_t s = 0; s < small; ++s)
      if ((subset >> s) & 1U) a.push_back(s);
    std::vector<std::uint64_t> b(other.begin(), other.end());
    out.push_back(by_left ? Biclique{a, b} : Biclique{b, a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bnsynth::oracle
