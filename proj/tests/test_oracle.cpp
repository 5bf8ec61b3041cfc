#include "doctest.h"

#include "bnsynth/errors.hpp"
#include "bnsynth/oracle.hpp"
#include "bnsynth/synthesis.hpp"
#include "fixtures.hpp"
#include "random.hpp"

using namespace bnsynth;

namespace {

Controller constant(const BooleanSystem& s, std::uint64_t value) {
  auto c = Controller::zero(s.name, s.env_inputs, s.controls);
  for (auto& row : c.table) row = value;
  return c;
}

}  // namespace

TEST_CASE("closed-loop verification") {
  const auto ex = fixtures::example1();
  ControllerSet on{{"S1", constant(ex.net.subsystem("S1"), 1)}, {"S2", constant(ex.net.subsystem("S2"), 1)}};
  CHECK(oracle::verify_closed_loop(ex.net, on, ex.contract).holds);

  auto off = on;
  off.at("S1") = constant(ex.net.subsystem("S1"), 0);
  const auto r = oracle::verify_closed_loop(ex.net, off, ex.contract);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->to_string() == "e1=1 e2=0");

  const ContractPair trivial{BoolFunc::constant({}, true), BoolFunc::constant({}, true)};
  CHECK(oracle::verify_closed_loop(ex.net, off, trivial).holds);
  CHECK_THROWS(oracle::verify_closed_loop(ex.net, {{"S1", on.at("S1")}}, ex.contract));
}

TEST_CASE("brute-force distributed search") {
  const auto ex1 = fixtures::example1();
  const auto found1 = oracle::brute_force_distributed(ex1.net, ex1.contract);
  REQUIRE(found1);
  CHECK(oracle::verify_closed_loop(ex1.net, *found1, ex1.contract).holds);

  const auto ex2 = fixtures::example2();
  const auto found2 = oracle::brute_force_distributed(ex2.net, ex2.contract);
  REQUIRE(found2);
  CHECK(oracle::verify_closed_loop(ex2.net, *found2, ex2.contract).holds);
  CHECK(oracle::verify_closed_loop(ex2.net, fixtures::example2_manual_controllers(), ex2.contract).holds);

  const ContractPair impossible{BoolFunc::constant({}, true), BoolFunc::constant(ex1.net.all_outputs(), false)};
  CHECK_FALSE(oracle::brute_force_distributed(ex1.net, impossible));

  CHECK(oracle::controller_bits(ex1.net) == 1 * 2 + 1 * 4);
  CHECK_THROWS_AS(oracle::brute_force_distributed(ex1.net, ex1.contract, oracle::Budget{5}), BudgetExceeded);
}

TEST_CASE("the first hit is lexicographically least") {
  // One subsystem, one env bit, one control: y = u ^ e must hold; the only
  // controller is u = !e, table {1, 0}.
  BooleanNetwork net;
  net.subsystems.push_back(fixtures::make_system("S", {"u"}, {"e"}, {{"y", "u ^ e"}}));
  const auto c = fixtures::make_contract(net, "true", "y");
  const auto found = oracle::brute_force_distributed(net, c);
  REQUIRE(found);
  CHECK(found->at("S").table == std::vector<std::uint64_t>{1, 0});

  // Any table works: the all-False one comes first.
  const auto free = oracle::brute_force_distributed(net, fixtures::make_contract(net, "true", "true"));
  REQUIRE(free);
  CHECK(free->at("S").table == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("engine and oracle agree one-sidedly on random instances") {
  fixtures::Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    const auto inst = fixtures::random_instance(rng);
    const auto engine = distributed_synthesis(inst.net, inst.contract);
    const auto brute = oracle::brute_force_distributed(inst.net, inst.contract);
    if (brute) CHECK(oracle::verify_closed_loop(inst.net, *brute, inst.contract).holds);
    if (engine.success) CHECK(brute.has_value());
    if (brute && completeness_certificate(inst.net, inst.contract)) CHECK(engine.success);
  }
}

TEST_CASE("subset enumeration refuses large graphs") {
  DistributionGraph g;
  for (int i = 0; i < 6; ++i) g.left_scope.add("a" + std::to_string(i));
  for (int i = 0; i < 5; ++i) g.right_scope.add("b" + std::to_string(i));
  g.adjacency.assign(64, boost::dynamic_bitset<std::uint64_t>(32));
  CHECK_THROWS_AS(oracle::enumerate_bicliques_subset(g), BudgetExceeded);
}
