#pragma once

// The four worked example networks plus small helpers for building systems
// inline in tests.

#include <string>
#include <utility>
#include <vector>

#include "bnsynth/contract.hpp"
#include "bnsynth/network.hpp"

namespace fixtures {

using bnsynth::BooleanNetwork;
using bnsynth::BooleanSystem;
using bnsynth::ContractPair;
using bnsynth::ControllerSet;

struct Instance {
  BooleanNetwork net;
  ContractPair contract;
};

BooleanSystem make_system(const std::string& name, std::vector<std::string> controls, std::vector<std::string> env,
                          const std::vector<std::pair<std::string, std::string>>& outputs);

/// Assumption over the external inputs, guarantee over all outputs.
ContractPair make_contract(const BooleanNetwork& net, const std::string& assumption, const std::string& guarantee);

/// S1 -> S2, f1 = u1, f2 = (e2 | y1) & u2, [e1, y2].
Instance example1();
/// f1 = e1 & u1, same S2, [e1 ^ e2, y2].
Instance example2();
/// f1 = e1 & u1, f2 = (e2 | u2) & !y1, [True, y1 | y2].
Instance example3();
/// Example 3 plus S3 reading y1 and y2, f3 = y1 | y2, [True, y3].
Instance example4();

/// Controllers realizing the hand-written local contracts of example 2:
/// [e2 | y1, y2] for S2 and [e1, y1] for S1.
ControllerSet example2_manual_controllers();

std::string data_path(const std::string& file);

}  // namespace fixtures
