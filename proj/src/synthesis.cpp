#include "bnsynth/synthesis.hpp"

#include "bnsynth/errors.hpp"

namespace bnsynth {
namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// For every env valuation of one subsystem, the set of control valuations
// whose outputs satisfy the guarantee.
class LocalProblem {
 public:
  LocalProblem(const BooleanSystem& sys, const BoolFunc& guarantee) : sys_(sys) {
    if (!guarantee.scope().subset_of(sys.outputs))
      throw Error("local guarantee of '" + sys.name + "' mentions variables that are not its outputs");
    const auto g = guarantee.extend(guarantee.scope().united(sys.outputs)).project(sys.outputs);
    const auto scope = sys.input_scope();
    std::vector<BoolFunc> funcs;
    for (const auto& f : sys.output_funcs) funcs.push_back(f.extend(scope));
    const auto n_env = sys.env_inputs.size();
    const std::uint64_t envs = std::uint64_t{1} << n_env;
    const std::uint64_t ctls = std::uint64_t{1} << sys.controls.size();
    good_.assign(envs, Bits(ctls));
    for (std::uint64_t u = 0; u < ctls; ++u) {
      for (std::uint64_t e = 0; e < envs; ++e) {
        const auto row = (u << n_env) | e;
        std::uint64_t y = 0;
        for (const auto& f : funcs) y = (y << 1) | (f.eval(row) ? 1U : 0U);
        if (g.eval(y)) good_[e].set(u);
      }
    }
  }

  std::uint64_t env_count() const { return good_.size(); }
  const Bits& good(std::uint64_t e) const { return good_[e]; }

  BoolFunc admissible(const BoolFunc& assumption) const {
    if (!assumption.scope().subset_of(sys_.env_inputs))
      throw Error("local assumption of '" + sys_.name + "' mentions variables that are not its inputs");
    return assumption.extend(assumption.scope().united(sys_.env_inputs)).project(sys_.env_inputs);
  }

 private:
  const BooleanSystem& sys_;
  std::vector<Bits> good_;
};

}  // namespace

bool check_realizable(const BooleanSystem& sys, const BoolFunc& assumption, const BoolFunc& guarantee,
                      const std::optional<Valuation>& fixed) {
  const LocalProblem p(sys, guarantee);
  const auto a = p.admissible(assumption);
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  if (fixed) {
    const auto n = sys.env_inputs.size();
    for (std::size_t k = 0; k < fixed->scope.size(); ++k) {
      auto i = sys.env_inputs.index_of(fixed->scope[k]);
      if (!i) throw UnknownIdentifier(fixed->scope[k]);
      const auto bit = std::uint64_t{1} << (n - 1 - *i);
      mask |= bit;
      if (fixed->bits[k]) value |= bit;
    }
  }
  for (std::uint64_t e = 0; e < p.env_count(); ++e) {
    if ((e & mask) != value || !a.eval(e)) continue;
    if (p.good(e).none()) return false;
  }
  return true;
}

Controller extract_controller(const BooleanSystem& sys, const BoolFunc& assumption,
                              const BoolFunc& guarantee) {
  const LocalProblem p(sys, guarantee);
  const auto a = p.admissible(assumption);
  auto c = Controller::zero(sys.name, sys.env_inputs, sys.controls);
  for (std::uint64_t e = 0; e < p.env_count(); ++e) {
    const auto& good = p.good(e);
    if (good.any()) {
      c.table[e] = good.find_first();
    } else if (a.eval(e)) {
      throw UnrealizableError("no control of '" + sys.name + "' meets the guarantee for " +
                              Valuation::from_index(sys.env_inputs, e).to_string());
    }
  }
  return c;
}

BoolFunc least_restrictive_assumption(const BooleanSystem& sys, const BoolFunc& local_assumption,
                                      const BoolFunc& local_guarantee, const VariableSet& internal) {
  if (!internal.subset_of(sys.env_inputs))
    throw NetworkError("internal inputs are not env inputs of '" + sys.name + "'");
  const LocalProblem p(sys, local_guarantee);
  const auto a = p.admissible(local_assumption);
  const IndexMap to_internal(sys.env_inputs, internal);
  Bits bad(std::size_t{1} << internal.size());
  for (std::uint64_t e = 0; e < p.env_count(); ++e)
    if (a.eval(e) && p.good(e).none()) bad.set(to_internal(e));
  return BoolFunc::from_table(internal, ~bad);
}

LocalSynthesisResult find_lra(const BooleanSystem& sys, const BoolFunc& local_assumption,
                              const BoolFunc& local_guarantee, const VariableSet& internal) {
  LocalSynthesisResult r{least_restrictive_assumption(sys, local_assumption, local_guarantee, internal),
                         std::nullopt};
  if (!r.lra.is_false()) r.controller = extract_controller(sys, local_assumption & r.lra, local_guarantee);
  return r;
}

BoolFunc rewire_to_parent_outputs(const BoolFunc& lra, const BooleanNetwork& net,
                                  std::string_view subsystem) {
  std::map<std::string, std::string> mapping;
  for (const auto& v : lra.scope()) {
    const auto* link = net.driver_of(subsystem, v);
    if (!link)
      throw NetworkError("input '" + v + "' of '" + std::string(subsystem) + "' has no driving output");
    mapping.emplace(v, link->from_output);
  }
  return lra.substitute(mapping);
}

ContractPair update_contract(const ContractPair& contract, const BoolFunc& up, const BoolFunc& lra_rewired) {
  return {contract.assumption, up & lra_rewired};
}

std::string to_string(TraceEntry::Event e) {
  switch (e) {
    case TraceEntry::Event::Accepted: return "accepted";
    case TraceEntry::Event::LraFalse: return "lra-false";
    case TraceEntry::Event::Backtracked: return "backtracked";
    case TraceEntry::Event::Exhausted: return "exhausted";
  }
  return "unknown";
}

namespace {

class Engine {
 public:
  explicit Engine(SynthesisOutcome& out) : out_(out) {}

  bool solve(const BooleanNetwork& net, const ContractPair& contract, std::size_t depth) {
    if (net.subsystems.empty()) return true;
    using Event = TraceEntry::Event;

    const auto leaf = leaves(system_graph(net)).front();
    const auto& sys = net.subsystem(leaf);
    const auto internal = classify_inputs(net, leaf).internal;
    const auto local_assumption = project_assumption(contract.assumption, net, leaf);
    const auto candidates = maximal_distributions(contract.guarantee, sys.outputs);

    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& gamma = candidates[k];
      auto local = find_lra(sys, local_assumption, gamma.down, internal);
      if (local.lra.is_false()) {
        out_.trace.push_back({depth, leaf, k, candidates.size(), Event::LraFalse, local.lra});
        continue;
      }
      out_.trace.push_back({depth, leaf, k, candidates.size(), Event::Accepted, local.lra});
      const auto next = update_contract(contract, gamma.up, rewire_to_parent_outputs(local.lra, net, leaf));
      if (solve(remove_subsystem(net, leaf), next, depth + 1)) {
        out_.controllers.insert_or_assign(leaf, std::move(*local.controller));
        out_.local_contracts.insert_or_assign(leaf, ContractPair{local_assumption & local.lra, gamma.down});
        return true;
      }
      out_.trace.push_back({depth, leaf, k, candidates.size(), Event::Backtracked, std::nullopt});
    }
    out_.trace.push_back({depth, leaf, std::nullopt, candidates.size(), Event::Exhausted, std::nullopt});
    if (!out_.failed_subsystem || depth >= deepest_) {
      deepest_ = depth;
      out_.failed_subsystem = leaf;
      out_.failed_candidates = candidates.size();
    }
    return false;
  }

 private:
  SynthesisOutcome& out_;
  std::size_t deepest_ = 0;
};

}  // namespace

SynthesisOutcome distributed_synthesis(const BooleanNetwork& net, const ContractPair& contract) {
  require_well_posed(net);
  SynthesisOutcome out;
  out.success = Engine(out).solve(net, contract, 0);
  if (out.success) {
    out.failed_subsystem.reset();
    out.failed_candidates = 0;
  } else {
    out.controllers.clear();
    out.local_contracts.clear();
  }
  return out;
}

CentralOutcome centralized_synthesis(const BooleanNetwork& net, const ContractPair& contract) {
  const auto flat = flatten(net);
  CentralOutcome out;
  out.realizable = check_realizable(flat, contract.assumption, contract.guarantee);
  if (out.realizable) out.controller = extract_controller(flat, contract.assumption, contract.guarantee);
  return out;
}

CompletenessReport completeness_report(const BooleanNetwork& net, const ContractPair& contract) {
  require_well_posed(net);
  std::vector<VariableSet> env_blocks;
  std::vector<VariableSet> out_blocks;
  for (const auto& s : net.subsystems) {
    env_blocks.push_back(classify_inputs(net, s.name).external);
    out_blocks.push_back(s.outputs);
  }
  CompletenessReport r;
  r.assumption_conjunctive = conjunctive_decomposition(contract.assumption, env_blocks).has_value();
  r.guarantee_conjunctive = conjunctive_decomposition(contract.guarantee, out_blocks).has_value();
  r.forest = is_forest(system_graph(net));
  return r;
}

bool completeness_certificate(const BooleanNetwork& net, const ContractPair& contract) {
  return completeness_report(net, contract).holds();
}

}  // namespace bnsynth
