#pragma once

// JSON documents for networks, contracts and controller tables.
//
// Network:
//   {"subsystems": [{"name": "S1", "controls": ["u1"], "env_inputs": ["e1"],
//                    "outputs": [{"name": "y1", "expr": "u1 & e1"}]}],
//    "wiring": [{"from_sys": "S1", "from_output": "y1",
//                "to_sys": "S2", "to_input": "e2_y1"}]}
// Contract:
//   {"assumptions": ["e1"], "guarantees": ["y2"]}   (each list conjoined)
// Controllers:
//   {"controllers": [{"subsystem": "S1", "inputs": ["e1"], "controls": ["u1"],
//                     "rows": [{"in": "0", "out": "0"}, {"in": "1", "out": "1"}]}],
//    "local_contracts": [{"subsystem": "S1", "assumption": "e1", "guarantee": "y1"}]}

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "bnsynth/contract.hpp"
#include "bnsynth/network.hpp"
#include "bnsynth/synthesis.hpp"

namespace bnsynth::io {

using Json = nlohmann::ordered_json;

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

BooleanNetwork network_from_json(const Json& doc);
Json network_to_json(const BooleanNetwork& net);
BooleanNetwork load_network(const std::filesystem::path& path);

/// Assumptions are parsed over the network's external inputs, guarantees
/// over its outputs.
ContractPair contract_from_json(const Json& doc, const BooleanNetwork& net);
Json contract_to_json(const ContractPair& contract);
ContractPair load_contract(const std::filesystem::path& path, const BooleanNetwork& net);

struct ControllerFile {
  ControllerSet controllers;
  std::map<std::string, ContractPair> local_contracts;
};

Json controller_to_json(const Controller& c);
Controller controller_from_json(const Json& doc);
Json controllers_to_json(const ControllerFile& file);
ControllerFile controllers_from_json(const Json& doc, const BooleanNetwork& net);
ControllerFile load_controllers(const std::filesystem::path& path, const BooleanNetwork& net);

Json trace_to_json(const std::vector<TraceEntry>& trace);
std::string trace_to_text(const std::vector<TraceEntry>& trace);

}  // namespace bnsynth::io
