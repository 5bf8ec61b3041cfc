#pragma once

// Local realizability (forall-exists over one subsystem), least restrictive
// assumptions on internal inputs, and recursive distributed synthesis that
// peels leaves off the system graph.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnsynth/boolfunc.hpp"
#include "bnsynth/contract.hpp"
#include "bnsynth/network.hpp"

namespace bnsynth {

/// forall e exists u : A(e) -> G(f(u, e)). `assumption` may mention any env
/// input of `sys`; `guarantee` only its outputs. When `fixed` is given, the
/// env inputs it assigns are pinned to those values.
bool check_realizable(const BooleanSystem& sys, const BoolFunc& assumption, const BoolFunc& guarantee,
                      const std::optional<Valuation>& fixed = std::nullopt);

/// Total controller over all env inputs of `sys`. On admissible rows picks
/// the lexicographically least control meeting the guarantee; other rows get
/// the least such control if one exists, else all-False. Throws
/// UnrealizableError if some admissible row has no good control.
Controller extract_controller(const BooleanSystem& sys, const BoolFunc& assumption,
                              const BoolFunc& guarantee);

/// The set of internal-input valuations under which the local contract is
/// realizable, as a function over `internal`.
BoolFunc least_restrictive_assumption(const BooleanSystem& sys, const BoolFunc& local_assumption,
                                      const BoolFunc& local_guarantee, const VariableSet& internal);

struct LocalSynthesisResult {
  BoolFunc lra;
  std::optional<Controller> controller;  // present iff lra is satisfiable
};

LocalSynthesisResult find_lra(const BooleanSystem& sys, const BoolFunc& local_assumption,
                              const BoolFunc& local_guarantee, const VariableSet& internal);

/// Replaces each internal input of `subsystem` in `lra` by the parent output
/// driving it. Inputs sharing a driver are identified.
BoolFunc rewire_to_parent_outputs(const BoolFunc& lra, const BooleanNetwork& net,
                                  std::string_view subsystem);

/// [A, up AND lra].
ContractPair update_contract(const ContractPair& contract, const BoolFunc& up, const BoolFunc& lra_rewired);

struct TraceEntry {
  enum class Event {
    Accepted,     // lra satisfiable, recursion continues
    LraFalse,     // candidate rejected, local contract unrealizable
    Backtracked,  // recursion below an accepted candidate failed
    Exhausted,    // no candidate left for this subsystem
  };
  std::size_t depth;
  std::string subsystem;
  std::optional<std::size_t> candidate;  // index into the distribution list
  std::size_t candidates;                // size of the distribution list
  Event event;
  std::optional<BoolFunc> lra;
};

std::string to_string(TraceEntry::Event e);

struct SynthesisOutcome {
  bool success = false;
  ControllerSet controllers;
  /// [A^(j) AND lra_j, G^(j)] per subsystem; the assumption ranges over E_j.
  std::map<std::string, ContractPair> local_contracts;
  std::vector<TraceEntry> trace;
  /// On failure: the deepest subsystem whose candidates ran out.
  std::optional<std::string> failed_subsystem;
  std::size_t failed_candidates = 0;
};

SynthesisOutcome distributed_synthesis(const BooleanNetwork& net, const ContractPair& contract);

/// One forall-exists problem over the flattened network. The controller
/// reads all external inputs and writes all controls.
struct CentralOutcome {
  bool realizable = false;
  std::optional<Controller> controller;
};

CentralOutcome centralized_synthesis(const BooleanNetwork& net, const ContractPair& contract);

/// Structural conditions under which a failed distributed_synthesis proves
/// that no distributed controller exists.
struct CompletenessReport {
  bool assumption_conjunctive = false;
  bool guarantee_conjunctive = false;
  bool forest = false;
  bool holds() const { return assumption_conjunctive && guarantee_conjunctive && forest; }
};

CompletenessReport completeness_report(const BooleanNetwork& net, const ContractPair& contract);
bool completeness_certificate(const BooleanNetwork& net, const ContractPair& contract);

}  // namespace bnsynth
