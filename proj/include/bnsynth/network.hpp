#pragma once

// Memoryless Boolean subsystems wired into a directed acyclic network.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnsynth/boolfunc.hpp"

namespace bnsynth {

/// S = <U, E, Y, f>. `output_funcs[k]` defines `outputs[k]` over U ∪ E.
struct BooleanSystem {
  std::string name;
  VariableSet controls;
  VariableSet env_inputs;
  VariableSet outputs;
  std::vector<BoolFunc> output_funcs;

  /// U followed by E; the scope of the system table.
  VariableSet input_scope() const { return controls.united(env_inputs); }
  const BoolFunc& output_function(std::string_view output) const;
};

/// One shared variable of a serial interconnection: from_sys.from_output
/// drives to_sys.to_input.
struct Link {
  std::string from_sys;
  std::string from_output;
  std::string to_sys;
  std::string to_input;

  friend bool operator==(const Link&, const Link&) = default;
};

struct BooleanNetwork {
  std::vector<BooleanSystem> subsystems;
  std::vector<Link> wiring;

  const BooleanSystem& subsystem(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// The link driving `sys.input`, if any.
  const Link* driver_of(std::string_view sys, std::string_view input) const;

  VariableSet all_controls() const;
  VariableSet all_outputs() const;
  /// External inputs of every subsystem, in declaration order.
  VariableSet external_inputs() const;
};

struct Violation {
  enum class Kind {
    DuplicateSubsystem,
    DuplicateVariable,
    OutputScope,
    MissingOutputFunction,
    DanglingLink,
    MultipleDrivers,
    Cycle,
  };
  Kind kind;
  std::string message;
};

std::string to_string(Violation::Kind kind);

/// Empty result means the network is well-posed.
std::vector<Violation> validate(const BooleanNetwork& net);
/// Throws NetworkError listing every violation.
void require_well_posed(const BooleanNetwork& net);

class SystemGraph {
 public:
  SystemGraph() = default;
  SystemGraph(std::vector<std::string> nodes, std::vector<std::pair<std::size_t, std::size_t>> edges);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  /// Deduplicated (from, to) node-index pairs, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  bool has_edge(std::string_view from, std::string_view to) const;

  std::vector<std::size_t> parents(std::size_t node) const;
  std::vector<std::size_t> children(std::size_t node) const;
  /// Kahn order preferring lower declaration index; nullopt on a cycle.
  std::optional<std::vector<std::size_t>> topological_order() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

SystemGraph system_graph(const BooleanNetwork& net);
/// Nodes with no outgoing edge, in declaration order.
std::vector<std::string> leaves(const SystemGraph& g);
/// Every node has at most one parent. Assumes `g` is acyclic.
bool is_forest(const SystemGraph& g);

struct InputClasses {
  VariableSet internal;
  VariableSet external;
};

InputClasses classify_inputs(const BooleanNetwork& net, std::string_view subsystem);

/// Deletes a leaf and every link into it.
BooleanNetwork remove_subsystem(const BooleanNetwork& net, std::string_view subsystem);

/// Total lookup table pi: V_E -> V_U. `table[e]` is the control index for the
/// environment valuation with index `e` over `inputs`.
struct Controller {
  std::string subsystem;
  VariableSet inputs;
  VariableSet controls;
  std::vector<std::uint64_t> table;

  /// All-False controller.
  static Controller zero(std::string subsystem, VariableSet inputs, VariableSet controls);
  std::uint64_t operator()(std::uint64_t input_index) const { return table.at(input_index); }
  Valuation lookup(const Valuation& input) const;

  friend bool operator==(const Controller&, const Controller&) = default;
};

using ControllerSet = std::map<std::string, Controller>;

/// Fast evaluation of a well-posed network. Subsystems are visited in
/// topological order; internal inputs are read from their drivers.
class NetworkEvaluator {
 public:
  explicit NetworkEvaluator(const BooleanNetwork& net);

  const BooleanNetwork& network() const noexcept { return *net_; }
  const VariableSet& external_inputs() const noexcept { return external_; }
  const VariableSet& outputs() const noexcept { return outputs_; }
  const VariableSet& controls() const noexcept { return controls_; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  /// Chooses the control index of subsystem `sys` from its env-input index.
  using Policy = std::function<std::uint64_t(std::size_t sys, std::uint64_t env_index)>;

  /// Output valuation index (over `outputs()`) for an external valuation.
  std::uint64_t evaluate(std::uint64_t external_index, const Policy& policy) const;
  /// Open loop: every control fixed by an index over `controls()`.
  std::uint64_t evaluate_open(std::uint64_t external_index, std::uint64_t control_index) const;
  /// Closed loop; `controllers` must hold one controller per subsystem with
  /// variables in declaration order (see align_controllers).
  std::uint64_t evaluate_closed(std::uint64_t external_index, const ControllerSet& controllers) const;

 private:
  struct Source {
    bool internal;
    std::size_t slot;  // bit in the external valuation or in the output valuation
  };
  struct Node {
    std::vector<Source> env_sources;   // one per env input, E order
    std::vector<std::size_t> out_slots; // output bit positions in outputs_
    std::vector<std::size_t> ctl_slots; // control bit positions in controls_
    std::vector<std::uint32_t> system_table;  // (U,E) index -> Y index
    unsigned n_env = 0;
    unsigned n_ctl = 0;
    unsigned n_out = 0;
  };

  const BooleanNetwork* net_;
  VariableSet external_;
  VariableSet outputs_;
  VariableSet controls_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

/// Checks that every subsystem has a controller matching its interface and
/// reorders table variables to declaration order.
ControllerSet align_controllers(const BooleanNetwork& net, const ControllerSet& controllers);

/// y = f(pi(e), e) for the whole network: each output as a function of all
/// external inputs.
std::vector<std::pair<std::string, BoolFunc>> compose(const BooleanNetwork& net,
                                                      const ControllerSet& controllers);

/// The network viewed as one Boolean system over all controls and all
/// external inputs.
BooleanSystem flatten(const BooleanNetwork& net, std::string name = "network");

}  // namespace bnsynth
