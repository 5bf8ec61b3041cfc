#pragma once

// Electric power system topologies: live-path semantics and compilation of a
// single-line diagram into a Boolean network plus a global contract.
//
// Topology document:
//   {"nodes": [{"name": "G1", "kind": "generator", "current": "ac"}, ...],
//    "edges": [{"a": "G1", "b": "B1", "contactor": "C1"},
//              {"a": "B1", "b": "F1", "solid": "L1"}, ...],
//    "feeders": ["L1"]}
// Partition document:
//   {"groups": [{"name": "S0", "nodes": ["G1", "B1"]}, ...]}

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnsynth/contract.hpp"
#include "bnsynth/io.hpp"
#include "bnsynth/network.hpp"

namespace bnsynth::eps {

enum class Kind { Generator, Rectifier, Transformer, Bus, Dummy };
enum class Current { AC, DC };

std::string to_string(Kind k);

struct Component {
  std::string name;
  Kind kind;
  Current current;

  /// Generators, rectifiers and transformers may fail; buses and dummy
  /// junctions are always online.
  bool has_health() const { return kind == Kind::Generator || kind == Kind::Rectifier || kind == Kind::Transformer; }
};

struct PowerEdge {
  std::string name;  // contactor name, or link name (generated if unnamed)
  std::string a;
  std::string b;
  bool contactor;
};

struct PowerTopology {
  std::vector<Component> nodes;
  std::vector<PowerEdge> edges;
  std::vector<std::string> feeders;

  std::optional<std::size_t> node_index(std::string_view name) const;
  std::optional<std::size_t> edge_index(std::string_view name) const;
  const Component& node(std::string_view name) const;
  /// Names of health-bearing components, in declaration order.
  std::vector<std::string> health_components() const;
  std::vector<std::string> contactors() const;
};

PowerTopology topology_from_json(const io::Json& doc);
PowerTopology load_topology(const std::filesystem::path& path);

/// component -> online
using HealthState = std::map<std::string, bool>;
/// contactor -> closed
using ContactorState = std::map<std::string, bool>;

/// Dense form of (HealthState, ContactorState): per node online, per edge
/// conducting (solid links always conduct).
struct PowerState {
  std::vector<bool> online;
  std::vector<bool> conducting;
};

PowerState make_state(const PowerTopology& t, const HealthState& h, const ContactorState& c);
/// Bits follow health_components() / contactors() order, first name = MSB.
PowerState make_state(const PowerTopology& t, std::uint64_t health_index, std::uint64_t contactor_index);

/// A simple path from a to b through online components only (end nodes
/// included) whose contactors are all closed.
bool live_path(const PowerTopology& t, const PowerState& s, std::string_view a, std::string_view b);
bool live_path(const PowerTopology& t, const HealthState& h, const ContactorState& c, std::string_view a,
               std::string_view b);

/// Powered iff a live path reaches some generator.
bool bus_status(const PowerTopology& t, const PowerState& s, std::string_view bus);
bool bus_status(const PowerTopology& t, const HealthState& h, const ContactorState& c, std::string_view bus);

struct Group {
  std::string name;
  std::vector<std::string> nodes;
};

using Partition = std::vector<Group>;

Partition partition_from_json(const io::Json& doc);
Partition load_partition(const std::filesystem::path& path);
/// Connected components after removing the feeder edges, named S0, S1, ...
/// in order of their first declared node.
Partition default_partition(const PowerTopology& t);

/// A power connection between two subsystems, oriented away from the
/// generating subsystem.
struct Feed {
  std::string link;        // edge name; also the upstream output variable
  std::string input;       // downstream internal input variable
  std::string from_group;
  std::string from_node;
  std::string to_group;
  std::string to_node;
};

struct CompiledSystem {
  BooleanNetwork network;
  ContractPair contract;
  Partition groups;
  std::vector<Feed> feeds;
  /// Auxiliary outputs: AC source pair per coupling variable.
  std::map<std::string, std::pair<std::string, std::string>> coupling;
};

/// One subsystem per group: contactors are controls, health bits and
/// incoming feeds are env inputs, bus status, AC coupling and outgoing feed
/// bits are outputs. The contract assumes, for every area of the default
/// partition, at least one healthy generator, rectifier and transformer
/// among those it has, and guarantees powered buses with no two AC
/// generators on a common live path. It does not depend on `partition`.
CompiledSystem compile_to_network(const PowerTopology& t, const std::optional<Partition>& partition = std::nullopt);

struct FaithfulnessReport {
  bool checked = false;  // false when the state space exceeds the budget
  bool holds = true;
  std::uint64_t states = 0;
  std::optional<std::string> mismatch;  // first disagreement, human-readable
};

/// Compares the open-loop compiled network against live-path semantics on
/// every (health, contactor) state: each bus output must equal bus_status
/// and each coupling output must equal live_path between its two sources.
/// Skipped when health and contactor bits together exceed `max_bits`.
FaithfulnessReport check_faithfulness(const PowerTopology& t, const CompiledSystem& compiled,
                                      std::size_t max_bits = 22);

}  // namespace bnsynth::eps
