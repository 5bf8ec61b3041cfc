#include "fixtures.hpp"

#include "bnsynth/synthesis.hpp"

namespace fixtures {

using namespace bnsynth;

BooleanSystem make_system(const std::string& name, std::vector<std::string> controls, std::vector<std::string> env,
                          const std::vector<std::pair<std::string, std::string>>& outputs) {
  BooleanSystem s;
  s.name = name;
  s.controls = VariableSet(std::move(controls));
  s.env_inputs = VariableSet(std::move(env));
  const auto scope = s.input_scope();
  for (const auto& [out, expr] : outputs) {
    s.outputs.add(out);
    s.output_funcs.push_back(parse_expr(expr, scope));
  }
  return s;
}

ContractPair make_contract(const BooleanNetwork& net, const std::string& assumption, const std::string& guarantee) {
  return {parse_expr(assumption, net.external_inputs()), parse_expr(guarantee, net.all_outputs())};
}

namespace {

BooleanNetwork two_stage(const std::string& f1, const std::string& f2) {
  BooleanNetwork net;
  net.subsystems.push_back(make_system("S1", {"u1"}, {"e1"}, {{"y1", f1}}));
  net.subsystems.push_back(make_system("S2", {"u2"}, {"e2", "e2_from_y1"}, {{"y2", f2}}));
  net.wiring.push_back({"S1", "y1", "S2", "e2_from_y1"});
  return net;
}

}  // namespace

Instance example1() {
  auto net = two_stage("u1", "(e2 | e2_from_y1) & u2");
  auto c = make_contract(net, "e1", "y2");
  return {std::move(net), std::move(c)};
}

Instance example2() {
  auto net = two_stage("e1 & u1", "(e2 | e2_from_y1) & u2");
  auto c = make_contract(net, "e1 ^ e2", "y2");
  return {std::move(net), std::move(c)};
}

Instance example3() {
  auto net = two_stage("e1 & u1", "(e2 | u2) & !e2_from_y1");
  auto c = make_contract(net, "true", "y1 | y2");
  return {std::move(net), std::move(c)};
}

Instance example4() {
  auto net = two_stage("e1 & u1", "(e2 | u2) & !e2_from_y1");
  net.subsystems.push_back(make_system("S3", {"u3"}, {"e3_from_y1", "e3_from_y2"}, {{"y3", "e3_from_y1 | e3_from_y2"}}));
  net.wiring.push_back({"S1", "y1", "S3", "e3_from_y1"});
  net.wiring.push_back({"S2", "y2", "S3", "e3_from_y2"});
  auto c = make_contract(net, "true", "y3");
  return {std::move(net), std::move(c)};
}

ControllerSet example2_manual_controllers() {
  const auto ex = example2();
  const auto& s1 = ex.net.subsystem("S1");
  const auto& s2 = ex.net.subsystem("S2");
  ControllerSet out;
  out.emplace("S1", extract_controller(s1, parse_expr("e1", s1.env_inputs), parse_expr("y1", s1.outputs)));
  out.emplace("S2", extract_controller(s2, parse_expr("e2 | e2_from_y1", s2.env_inputs), parse_expr("y2", s2.outputs)));
  return out;
}

std::string data_path(const std::string& file) { return std::string(BNSYNTH_DATA_DIR) + "/" + file; }

}  // namespace fixtures
