// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bnsynth/contract.hpp"
#include "bnsynth/eps.hpp"
#include "bnsynth/io.hpp"
#include "bnsynth/oracle.hpp"
#include "bnsynth/synthesis.hpp"
#include "fixtures.hpp"
#include "random.hpp"

using namespace bnsynth;

namespace {

// Wall-clock limits in seconds, per criterion.
constexpr double kLimitExample = 1.0;
constexpr double kLimitProjection = 10.0;
constexpr double kLimitDistribution = 30.0;
constexpr double kLimitSoundness = 60.0;
constexpr double kLimitCompleteness = 120.0;
constexpr double kLimitEps = 60.0;

constexpr int kProjectionCases = 500;
constexpr int kDistributionCases = 200;
constexpr int kSoundnessCases = 200;
constexpr int kCompletenessCases = 200;

// Serialized controller files and traces, compared across runs.
using Artifacts = std::vector<std::string>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail = what;
    pass = false;
  }
};

BoolFunc var(const std::string& n) { return BoolFunc::variable(n); }

void record(Artifacts& a, const SynthesisOutcome& out) {
  a.push_back(io::controllers_to_json({out.controllers, out.local_contracts}).dump());
  a.push_back(io::trace_to_json(out.trace).dump());
}

void record(Artifacts& a, const std::optional<ControllerSet>& found) {
  a.push_back(found ? io::controllers_to_json({*found, {}}).dump() : "none");
}

// A -> G on the composed closed loop, by enumeration of external inputs.
bool composed_satisfies(const BooleanNetwork& net, const ControllerSet& ctrls, const ContractPair& c) {
  const auto outs = compose(net, ctrls);
  const auto ext = net.external_inputs();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << ext.size()); ++x) {
    const auto e = Valuation::from_index(ext, x);
    if (!c.assumption.eval(e)) continue;
    Valuation y;
    for (const auto& [name, f] : outs) {
      y.scope.add(name);
      y.bits.push_back(f.eval(e));
    }
    if (!c.guarantee.eval(y)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- criteria

Outcome example1(Artifacts& a) {
  Outcome o;
  const auto ex = fixtures::example1();
  const auto out = distributed_synthesis(ex.net, ex.contract);
  record(a, out);
  o.require(out.success, "synthesis failed");
  if (!out.success) return o;
  const auto& c2 = out.local_contracts.at("S2");
  const auto& c1 = out.local_contracts.at("S1");
  o.require(equivalent(rewire_to_parent_outputs(c2.assumption.project({"e2_from_y1"}), ex.net, "S2"), var("y1")),
            "C2 assumption is not True & y1 after rewiring");
  o.require(c2.assumption.project({"e2"}).is_true(), "C2 constrains e2");
  o.require(equivalent(c2.guarantee, var("y2")), "C2 guarantee is not y2");
  o.require(equivalent(c1.assumption, var("e1")), "C1 assumption is not e1");
  o.require(equivalent(c1.guarantee, var("y1")), "C1 guarantee is not y1");
  o.require(ex.net.external_inputs().size() == 2, "expected 4 external valuations");
  o.require(composed_satisfies(ex.net, out.controllers, ex.contract), "closed loop violates e1 -> y2");
  return o;
}

Outcome example2(Artifacts& a) {
  Outcome o;
  const auto ex = fixtures::example2();
  const auto out = distributed_synthesis(ex.net, ex.contract);
  record(a, out);
  o.require(!out.success, "synthesis unexpectedly succeeded");
  o.require(out.failed_subsystem == "S1", "failure not attributed to S1");
  const auto found = oracle::brute_force_distributed(ex.net, ex.contract);
  record(a, found);
  o.require(found.has_value(), "brute force found no controller");
  o.require(oracle::verify_closed_loop(ex.net, fixtures::example2_manual_controllers(), ex.contract).holds,
            "hand-written local contracts do not verify");
  return o;
}

Outcome example3(Artifacts& a) {
  Outcome o;
  const auto ex = fixtures::example3();
  const auto d = maximal_distributions(ex.contract.guarantee, ex.net, "S2");
  o.require(d.size() == 2, "expected exactly two distributions");
  if (d.size() == 2) {
    bool has_down = false;
    bool has_up = false;
    for (const auto& x : d) {
      has_down = has_down || (equivalent(x.down, var("y2")) && x.up.is_true());
      has_up = has_up || (x.down.is_true() && equivalent(x.up, var("y1")));
    }
    o.require(has_down && has_up, "distributions differ from {y2, True}, {True, y1}");
  }
  const auto out = distributed_synthesis(ex.net, ex.contract);
  record(a, out);
  const auto found = oracle::brute_force_distributed(ex.net, ex.contract);
  record(a, found);
  o.require(out.success == found.has_value(), "engine verdict differs from the oracle");
  o.detail = o.pass ? std::string("verdict: ") + (out.success ? "success" : "failure") : o.detail;
  return o;
}

Outcome example4(Artifacts& a) {
  Outcome o;
  const auto ex = fixtures::example4();
  // First step of the recursion by hand.
  const auto internal = classify_inputs(ex.net, "S3").internal;
  const auto local = project_assumption(ex.contract.assumption, ex.net, "S3");
  const auto gammas = maximal_distributions(ex.contract.guarantee, ex.net, "S3");
  o.require(gammas.size() == 1, "expected a unique distribution for y3");
  if (gammas.empty()) return o;
  const auto step = find_lra(ex.net.subsystem("S3"), local, gammas[0].down, internal);
  const auto next = update_contract(ex.contract, gammas[0].up, rewire_to_parent_outputs(step.lra, ex.net, "S3"));
  o.require(next.assumption.is_true(), "updated assumption is not True");
  o.require(equivalent(next.guarantee, var("y1") | var("y2")), "updated guarantee is not y1 | y2");

  const auto residual = remove_subsystem(ex.net, "S3");
  const auto ex3 = fixtures::example3();
  bool same = residual.wiring == ex3.net.wiring && residual.subsystems.size() == ex3.net.subsystems.size();
  for (std::size_t i = 0; same && i < residual.subsystems.size(); ++i) {
    const auto& r = residual.subsystems[i];
    const auto& e = ex3.net.subsystems[i];
    same = r.name == e.name && r.controls == e.controls && r.env_inputs == e.env_inputs && r.outputs == e.outputs &&
           r.output_funcs == e.output_funcs;
  }
  o.require(same, "residual network differs from example 3");
  o.require(equivalent(next.guarantee, ex3.contract.guarantee), "residual contract differs from example 3");

  const auto out = distributed_synthesis(ex.net, ex.contract);
  record(a, out);
  o.require(!out.trace.empty() && out.trace[0].subsystem == "S3" && out.trace[0].lra &&
                equivalent(rewire_to_parent_outputs(*out.trace[0].lra, ex.net, "S3"), var("y1") | var("y2")),
            "engine trace does not start with S3 and lra y1 | y2");
  return o;
}

Outcome projection_suite(Artifacts&) {
  Outcome o;
  fixtures::Rng rng(1001);
  std::size_t violations = 0;
  for (int c = 0; c < kProjectionCases; ++c) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(3, n));
    // Random split of n variables into k nonempty blocks, one subsystem each.
    std::vector<std::vector<std::string>> blocks(k);
    for (std::size_t v = 0; v < n; ++v) blocks[v < k ? v : rng() % k].push_back("e" + std::to_string(v));
    BooleanNetwork net;
    for (std::size_t i = 0; i < k; ++i) {
      const auto id = std::to_string(i);
      net.subsystems.push_back(fixtures::make_system("S" + id, {"u" + id}, blocks[i], {{"y" + id, "u" + id}}));
    }
    const auto ext = net.external_inputs();
    const auto assumption = fixtures::random_function(rng, ext, (c % 4 + 1) / 5.0);

    std::vector<BoolFunc> local;
    for (const auto& s : net.subsystems) local.push_back(project_assumption(assumption, net, s.name));

    for (std::uint64_t x = 0; x < assumption.domain_size(); ++x) {
      const auto full = Valuation::from_index(ext, x);
      for (std::size_t i = 0; i < k; ++i) {
        // Containment: the restriction of every admissible valuation is
        // locally admissible.
        if (assumption.eval(x) && !local[i].eval(full)) ++violations;
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      // Maximality: every locally admissible valuation has a completion, so
      // removing any of them breaks containment.
      const auto& scope = local[i].scope();
      for (std::uint64_t l = 0; l < local[i].domain_size(); ++l) {
        const auto part = Valuation::from_index(scope, l);
        bool witness = false;
        for (std::uint64_t x = 0; x < assumption.domain_size() && !witness; ++x) {
          if (!assumption.eval(x)) continue;
          const auto full = Valuation::from_index(ext, x);
          bool agrees = true;
          for (std::size_t b = 0; b < scope.size() && agrees; ++b) agrees = *full.get(scope[b]) == part.bits[b];
          witness = agrees;
        }
        if (witness != local[i].eval(l)) ++violations;
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = std::to_string(kProjectionCases) + " assumptions, 0 violations";
  return o;
}

Outcome distribution_suite(Artifacts& a) {
  Outcome o;
  fixtures::Rng rng(2002);
  std::size_t mismatches = 0;
  for (int c = 0; c < kDistributionCases; ++c) {
    const std::size_t n_local = 1 + rng() % 3;
    const std::size_t n_rest = rng() % 4;
    VariableSet local;
    for (std::size_t k = 0; k < n_local; ++k) local.add("y" + std::to_string(k));
    VariableSet scope = local;
    for (std::size_t k = 0; k < n_rest; ++k) scope.add("z" + std::to_string(k));
    const auto g = fixtures::random_function(rng, scope, (c % 5 + 3) / 10.0);

    const auto dists = maximal_distributions(g, local);
    const auto graph = build_distribution_graph(g, local);
    const auto reference = oracle::enumerate_bicliques_subset(graph);
    std::ostringstream os;
    for (const auto& d : dists) os << to_expr(d.down) << " / " << to_expr(d.up) << ";";
    a.push_back(os.str());

    if (dists.size() != reference.size()) {
      ++mismatches;
      continue;
    }
    for (const auto& b : reference) {
      const auto down = BoolFunc::from_indices(graph.left_scope, b.left);
      const auto up = BoolFunc::from_indices(graph.right_scope, b.right);
      bool found = false;
      for (const auto& d : dists) found = found || (equivalent(d.down, down) && equivalent(d.up, up));
      if (!found) {
        ++mismatches;
        break;
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (o.pass) o.detail = std::to_string(kDistributionCases) + " guarantees, 0 mismatches";
  return o;
}

Outcome soundness_suite(Artifacts& a) {
  Outcome o;
  fixtures::Rng rng(3003);
  std::size_t violations = 0;
  std::size_t successes = 0;
  for (int c = 0; c < kSoundnessCases; ++c) {
    const auto inst = fixtures::random_instance(rng);
    const auto out = distributed_synthesis(inst.net, inst.contract);
    record(a, out);
    if (!out.success) continue;
    ++successes;
    if (!oracle::verify_closed_loop(inst.net, out.controllers, inst.contract).holds) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass)
    o.detail = std::to_string(kSoundnessCases) + " networks, " + std::to_string(successes) + " successes, 0 violations";
  return o;
}

Outcome completeness_suite(Artifacts& a) {
  Outcome o;
  fixtures::Rng rng(4004);
  std::size_t mismatches = 0;
  std::size_t uncertified = 0;
  std::size_t realizable = 0;
  for (int c = 0; c < kCompletenessCases; ++c) {
    const auto inst = fixtures::random_certified_instance(rng);
    if (!completeness_certificate(inst.net, inst.contract)) {
      ++uncertified;
      continue;
    }
    const auto out = distributed_synthesis(inst.net, inst.contract);
    const auto found = oracle::brute_force_distributed(inst.net, inst.contract);
    record(a, out);
    record(a, found);
    if (found) ++realizable;
    if (out.success != found.has_value()) ++mismatches;
  }
  o.require(uncertified == 0, std::to_string(uncertified) + " generated instances lack the certificate");
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (o.pass)
    o.detail = std::to_string(kCompletenessCases) + " instances, " + std::to_string(realizable) +
               " realizable, 0 mismatches";
  return o;
}

Outcome eps_fixture(Artifacts& a) {
  Outcome o;
  const auto topo = eps::load_topology(fixtures::data_path("eps_scaled.topo.json"));
  const auto compiled = eps::compile_to_network(topo);
  const auto& net = compiled.network;
  o.require(net.subsystems.size() == 3, "expected three subsystems");
  o.require(is_forest(system_graph(net)), "system graph is not a tree");

  const auto faithful = eps::check_faithfulness(topo, compiled, 22);
  o.require(faithful.checked, "state space exceeds the oracle budget");
  o.require(faithful.holds, faithful.mismatch.value_or("compilation mismatch"));

  // The guarantee is False exactly where a bus is dark or two AC sources
  // share a live path.
  const NetworkEvaluator ev(net);
  const auto health = topo.health_components();
  const auto contactors = topo.contactors();
  const IndexMap to_ext(VariableSet(health), ev.external_inputs());
  const IndexMap to_ctl(VariableSet(contactors), ev.controls());
  std::vector<std::string> buses;
  std::vector<std::string> ac_sources;
  for (const auto& n : topo.nodes) {
    if (n.kind == eps::Kind::Bus) buses.push_back(n.name);
    if (n.kind == eps::Kind::Generator && n.current == eps::Current::AC) ac_sources.push_back(n.name);
  }
  const auto g = compiled.contract.guarantee.extend(ev.outputs());
  std::size_t wrong = 0;
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << health.size()); ++h) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << contactors.size()); ++c) {
      const auto state = eps::make_state(topo, h, c);
      bool ok = true;
      for (const auto& b : buses) ok = ok && eps::bus_status(topo, state, b);
      for (std::size_t i = 0; i < ac_sources.size(); ++i)
        for (std::size_t j = i + 1; j < ac_sources.size(); ++j)
          ok = ok && !eps::live_path(topo, state, ac_sources[i], ac_sources[j]);
      if (g.eval(ev.evaluate_open(to_ext(h), to_ctl(c))) != ok) ++wrong;
    }
  }
  o.require(wrong == 0, std::to_string(wrong) + " states where the guarantee disagrees with live paths");

  o.require(completeness_certificate(net, compiled.contract), "completeness certificate does not hold");
  const auto out = distributed_synthesis(net, compiled.contract);
  record(a, out);
  o.require(out.success, "distributed synthesis failed");
  if (out.success)
    o.require(oracle::verify_closed_loop(net, out.controllers, compiled.contract).holds, "closed loop fails");
  const auto central = centralized_synthesis(net, compiled.contract);
  o.require(central.realizable == out.success, "centralized realizability differs");
  if (o.pass) o.detail = std::to_string(faithful.states) + " states faithful; distributed and central agree";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome(Artifacts&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "example 1 end-to-end", kLimitExample, example1},
      {2, "example 2 soundness without completeness", kLimitExample, example2},
      {3, "example 3 distributions and oracle verdict", kLimitExample, example3},
      {4, "example 4 reduces to example 3", kLimitExample, example4},
      {5, "assumption projection containment and maximality", kLimitProjection, projection_suite},
      {6, "distributions equal subset-pair bicliques", kLimitDistribution, distribution_suite},
      {7, "soundness on random networks", kLimitSoundness, soundness_suite},
      {8, "completeness on certified random instances", kLimitCompleteness, completeness_suite},
      {9, "EPS fixture faithfulness and synthesis", kLimitEps, eps_fixture},
  };
  return all;
}

void report(int id, const char* name, bool pass, double seconds, double limit, const std::string& detail) {
  char timing[64];
  if (limit > 0)
    std::snprintf(timing, sizeof timing, "%.3fs, limit %.0fs", seconds, limit);
  else
    std::snprintf(timing, sizeof timing, "%.3fs", seconds);
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << " (" << timing << ")";
  if (!detail.empty()) std::cout << " - " << detail;
  std::cout << std::endl;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  bool all = true;
  Artifacts first;
  for (const auto& c : criteria()) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run(first);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool pass = o.pass && s <= c.limit;
    if (o.pass && !pass) o.detail = "over time limit";
    report(c.id, c.name, pass, s, c.limit, o.detail);
    all = all && pass;
  }

  const auto t0 = Clock::now();
  Artifacts second;
  bool rerun_ok = true;
  for (const auto& c : criteria()) {
    try {
      c.run(second);
    } catch (const std::exception&) {
      rerun_ok = false;
    }
  }
  std::size_t differing = 0;
  for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i) differing += first[i] != second[i];
  const bool same = rerun_ok && first.size() == second.size() && differing == 0;
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  report(10, "determinism of controller files and traces", same, s, 0,
         same ? std::to_string(first.size()) + " artifacts byte-identical"
              : std::to_string(differing) + " artifacts differ");
  all = all && same;
  return all ? 0 : 1;
}
