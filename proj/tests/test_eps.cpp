#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "bnsynth/eps.hpp"
#include "bnsynth/errors.hpp"
#include "bnsynth/synthesis.hpp"
#include "fixtures.hpp"

using namespace bnsynth;
using namespace bnsynth::eps;
using io::Json;

namespace {

PowerTopology small(const char* text) { return topology_from_json(Json::parse(text)); }

// G -C- B, one generator and one bus.
const char* kPair = R"({"nodes": [{"name": "G", "kind": "generator", "current": "ac"},
                                  {"name": "B", "kind": "bus", "current": "ac"}],
                       "edges": [{"a": "G", "b": "B", "contactor": "C"}]})";

PowerTopology scaled() { return load_topology(fixtures::data_path("eps_scaled.topo.json")); }

}  // namespace

TEST_CASE("loading topologies") {
  const auto t = scaled();
  CHECK(t.nodes.size() == 16);
  CHECK(t.contactors().size() == 12);
  CHECK(t.health_components() == std::vector<std::string>{"G1", "G2", "G3", "R1", "R2", "R3", "R4"});
  CHECK(t.feeders == std::vector<std::string>{"L1", "L2"});
  CHECK(t.edges[10].name == "link_R1_DB1");

  const auto path = std::filesystem::temp_directory_path() / "bnsynth_empty.topo.json";
  std::ofstream(path).close();
  CHECK_THROWS_AS(load_topology(path), InputError);

  CHECK_THROWS_AS(small(R"({"nodes": [{"name": "G", "kind": "generator"}, {"name": "B", "kind": "bus"},
                                      {"name": "B2", "kind": "bus"}],
                            "edges": [{"a": "G", "b": "B", "contactor": "C1"},
                                      {"a": "G", "b": "B2", "contactor": "C1"}]})"),
                  InputError);
  CHECK_THROWS_AS(small(R"({"nodes": [{"name": "G", "kind": "pump"}]})"), InputError);
  CHECK_THROWS_AS(small(R"({"nodes": [{"name": "G", "kind": "bus"}],
                            "edges": [{"a": "G", "b": "X", "contactor": "C"}]})"),
                  InputError);
  CHECK_THROWS_AS(small(R"({"nodes": [{"name": "G", "kind": "generator"}, {"name": "B", "kind": "bus"}],
                            "edges": [{"a": "G", "b": "B", "contactor": "C"}], "feeders": ["C"]})"),
                  InputError);
}

TEST_CASE("live paths") {
  const auto t = small(kPair);
  CHECK(live_path(t, {{"G", true}}, {{"C", true}}, "G", "B"));
  CHECK_FALSE(live_path(t, {{"G", true}}, {{"C", false}}, "G", "B"));
  CHECK_FALSE(live_path(t, {{"G", false}}, {{"C", true}}, "G", "B"));
  CHECK_THROWS_AS(live_path(t, {{"G", true}}, {{"C", true}}, "G", "Q"), InputError);
  CHECK_THROWS_AS(live_path(t, {}, {{"C", true}}, "G", "B"), InputError);

  CHECK(bus_status(t, {{"G", true}}, {{"C", true}}, "B"));
  CHECK_FALSE(bus_status(t, {{"G", true}}, {{"C", false}}, "B"));

  // Power reaching a bus only through a failed rectifier.
  const auto r = small(R"({"nodes": [{"name": "G", "kind": "generator"}, {"name": "R", "kind": "rectifier"},
                                     {"name": "B", "kind": "bus", "current": "dc"}],
                           "edges": [{"a": "G", "b": "R", "contactor": "C"}, {"a": "R", "b": "B", "solid": true}]})");
  CHECK(bus_status(r, {{"G", true}, {"R", true}}, {{"C", true}}, "B"));
  CHECK_FALSE(bus_status(r, {{"G", true}, {"R", false}}, {{"C", true}}, "B"));
}

TEST_CASE("default partition splits at feeders") {
  const auto p = default_partition(scaled());
  REQUIRE(p.size() == 3);
  CHECK(p[0].name == "S0");
  CHECK(p[0].nodes == std::vector<std::string>{"G1", "G2", "G3", "D1", "B1", "B2"});
  CHECK(p[1].nodes == std::vector<std::string>{"F1", "R1", "R2", "DB1", "DBE1"});
  CHECK(p[2].name == "S2");
}

TEST_CASE("compiling the scaled fixture") {
  const auto t = scaled();
  const auto c = compile_to_network(t);
  REQUIRE(c.network.subsystems.size() == 3);
  const auto& s0 = c.network.subsystem("S0");
  CHECK(s0.controls == VariableSet{"C1", "C2", "C3", "C4", "C5", "C6"});
  CHECK(s0.env_inputs == VariableSet{"G1", "G2", "G3"});
  CHECK(s0.outputs == VariableSet{"B1", "B2", "ac_G1_G2", "ac_G1_G3", "ac_G2_G3", "L1", "L2"});
  const auto& s1 = c.network.subsystem("S1");
  CHECK(s1.env_inputs == VariableSet{"R1", "R2", "L1_in"});
  CHECK(s1.outputs == VariableSet{"DB1", "DBE1"});
  CHECK(c.network.wiring == std::vector<Link>{{"S0", "L1", "S1", "L1_in"}, {"S0", "L2", "S2", "L2_in"}});
  CHECK(is_forest(system_graph(c.network)));
  CHECK(completeness_certificate(c.network, c.contract));
  CHECK(c.coupling.size() == 3);

  const auto expected_a = parse_expr("(G1 | G2 | G3) & (R1 | R2) & (R3 | R4)", c.network.external_inputs());
  CHECK(c.contract.assumption == expected_a);
  const auto outs = c.network.all_outputs();
  const auto expected_g =
      parse_expr("B1 & B2 & DB1 & DBE1 & DB2 & DBE2 & !ac_G1_G2 & !ac_G1_G3 & !ac_G2_G3", outs);
  CHECK(c.contract.guarantee == expected_g);

  const auto f = check_faithfulness(t, c);
  CHECK(f.checked);
  CHECK(f.holds);
  CHECK(f.states == (std::uint64_t{1} << 19));
  CHECK_FALSE(check_faithfulness(t, c, 10).checked);
}

TEST_CASE("explicit partitions") {
  const auto t = scaled();
  const auto single = compile_to_network(t, load_partition(fixtures::data_path("eps_single.partition.json")));
  REQUIRE(single.network.subsystems.size() == 1);
  CHECK(single.network.wiring.empty());
  CHECK(check_faithfulness(t, single).holds);
  CHECK(single.contract.assumption == compile_to_network(t).contract.assumption.extend(single.network.external_inputs()));

  // A solid link between two groups becomes an output -> input pair.
  const auto chain = small(R"({"nodes": [{"name": "G", "kind": "generator"}, {"name": "B1", "kind": "bus"},
                                         {"name": "B2", "kind": "bus"}],
                               "edges": [{"a": "G", "b": "B1", "contactor": "C"},
                                         {"a": "B2", "b": "B1", "solid": "Lx"}]})");
  const Partition split{{"P", {"G", "B1"}}, {"Q", {"B2"}}};
  const auto c = compile_to_network(chain, split);
  REQUIRE(c.feeds.size() == 1);
  CHECK(c.feeds[0].from_group == "P");
  CHECK(c.feeds[0].from_node == "B1");
  CHECK(c.feeds[0].to_node == "B2");
  CHECK(c.network.wiring == std::vector<Link>{{"P", "Lx", "Q", "Lx_in"}});
  CHECK(check_faithfulness(chain, c).holds);

  CHECK_THROWS_AS(compile_to_network(chain, Partition{{"P", {"G"}}, {"Q", {"B1", "B2"}}}), InputError);
  CHECK_THROWS_AS(compile_to_network(chain, Partition{{"P", {"G", "B1"}}}), InputError);
  CHECK_THROWS_AS(compile_to_network(chain, Partition{{"P", {"G", "B1"}}, {"Q", {"B2", "B1"}}}), InputError);
  CHECK_THROWS_AS(compile_to_network(chain, Partition{{"P", {"G", "B1"}}, {"P", {"B2"}}}), InputError);
  CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"groups": 3})")), InputError);

  // Two generating groups joined by a link.
  const auto twin = small(R"({"nodes": [{"name": "G1", "kind": "generator"}, {"name": "B1", "kind": "bus"},
                                        {"name": "G2", "kind": "generator"}, {"name": "B2", "kind": "bus"}],
                              "edges": [{"a": "G1", "b": "B1", "contactor": "C1"},
                                        {"a": "G2", "b": "B2", "contactor": "C2"},
                                        {"a": "B1", "b": "B2", "solid": "T"}],
                              "feeders": ["T"]})");
  CHECK_THROWS_AS(compile_to_network(twin), InputError);
}

TEST_CASE("synthesis on the scaled fixture") {
  const auto t = scaled();
  const auto c = compile_to_network(t);
  const auto out = distributed_synthesis(c.network, c.contract);
  CHECK(out.success);
  CHECK(centralized_synthesis(c.network, c.contract).realizable);
}
