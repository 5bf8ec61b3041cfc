#include "bnsynth/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bnsynth/eps.hpp"
#include "bnsynth/errors.hpp"
#include "bnsynth/io.hpp"
#include "bnsynth/oracle.hpp"
#include "bnsynth/synthesis.hpp"

namespace bnsynth::cli {
namespace {

using io::Json;

struct Options {
  bool json = false;
  bool oracle = false;
  bool central = false;
  std::string net;
  std::string contract;
  std::string controllers;
  std::string subsystem;
  std::string topology;
  std::string partition;
  std::string out;
  std::string emit_network;
  std::string emit_contract;
};

// Text and JSON views of one report, built side by side.
struct Report {
  Json doc = Json::object();
  std::ostringstream text;

  int finish(const Options& o, std::ostream& out, int code) {
    doc["exit_code"] = code;
    if (o.json)
      out << doc.dump(2) << '\n';
    else
      out << text.str();
    return code;
  }
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Json names(const VariableSet& s) { return Json(s.names()); }

std::string list(const VariableSet& s) {
  if (s.empty()) return "(none)";
  std::string out;
  for (const auto& n : s) out += (out.empty() ? "" : ", ") + n;
  return out;
}

Json completeness_json(const CompletenessReport& r) {
  return {{"assumption_conjunctive", r.assumption_conjunctive},
          {"guarantee_conjunctive", r.guarantee_conjunctive},
          {"forest", r.forest},
          {"certificate", r.holds()}};
}

void completeness_text(std::ostream& os, const CompletenessReport& r) {
  os << "completeness conditions: assumption conjunctive " << yes_no(r.assumption_conjunctive)
     << ", guarantee conjunctive " << yes_no(r.guarantee_conjunctive) << ", forest " << yes_no(r.forest) << '\n';
}

// Output valuation of the closed loop at one external valuation.
Valuation closed_loop_outputs(const BooleanNetwork& net, const ControllerSet& controllers, const Valuation& ext) {
  NetworkEvaluator ev(net);
  const auto aligned = align_controllers(net, controllers);
  return Valuation::from_index(ev.outputs(), ev.evaluate_closed(ext.index(), aligned));
}

Json verification_json(const oracle::VerificationResult& v) {
  Json j = {{"holds", v.holds}};
  j["counterexample"] = v.counterexample ? Json(v.counterexample->to_string()) : Json(nullptr);
  return j;
}

// Brute-force cross-check of a distributed verdict. Returns false on a
// contradiction between engine and oracle.
bool oracle_distributed(Report& r, const BooleanNetwork& net, const ContractPair& contract, bool engine_success,
                        bool certificate) {
  Json j;
  bool consistent = true;
  try {
    const auto found = oracle::brute_force_distributed(net, contract);
    j["status"] = "checked";
    j["controller_exists"] = found.has_value();
    r.text << "oracle: " << (found ? "a distributed controller exists" : "no distributed controller exists");
    if (engine_success && !found) {
      consistent = false;
      r.text << "; CONTRADICTS the engine's success\n";
    } else if (!engine_success && found && certificate) {
      consistent = false;
      r.text << "; CONTRADICTS the engine's failure under the completeness conditions\n";
    } else if (!engine_success && found) {
      r.text << "; the engine is incomplete here because the completeness conditions fail\n";
    } else {
      r.text << "; agrees with the engine\n";
    }
  } catch (const BudgetExceeded& e) {
    j["status"] = "skipped";
    j["reason"] = e.what();
    r.text << "oracle: skipped (" << e.what() << ")\n";
  }
  j["consistent"] = consistent;
  r.doc["oracle"] = j;
  return consistent;
}

void write_or_embed(Report& r, const Options& o, const Json& file) {
  if (!o.out.empty()) {
    io::write_text(o.out, file.dump(2) + "\n");
    r.doc["controllers_file"] = o.out;
    r.text << "controllers written to " << o.out << '\n';
  } else {
    r.doc["controllers"] = file;
    r.text << "controllers:\n" << file.dump(2) << '\n';
  }
}

// ------------------------------------------------------------------ commands

int run_validate(const Options& o, std::ostream& out) {
  Report r;
  const auto net = io::load_network(o.net);
  const auto violations = validate(net);
  r.doc["command"] = "validate";
  r.doc["well_posed"] = violations.empty();
  Json vs = Json::array();
  for (const auto& v : violations) vs.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
  r.doc["violations"] = vs;
  r.text << "network: " << net.subsystems.size() << " subsystem(s), " << net.wiring.size() << " link(s)\n";
  if (!violations.empty()) {
    for (const auto& v : violations) r.text << "violation (" << to_string(v.kind) << "): " << v.message << '\n';
    return r.finish(o, out, kInputError);
  }
  const auto g = system_graph(net);
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) {
    edges.push_back({g.nodes()[a], g.nodes()[b]});
    r.text << "edge: " << g.nodes()[a] << " -> " << g.nodes()[b] << '\n';
  }
  const auto leaf_list = leaves(g);
  r.doc["edges"] = edges;
  r.doc["forest"] = is_forest(g);
  r.doc["leaves"] = leaf_list;
  Json subs = Json::array();
  for (const auto& s : net.subsystems) {
    const auto cls = classify_inputs(net, s.name);
    subs.push_back({{"name", s.name},
                    {"controls", names(s.controls)},
                    {"internal_inputs", names(cls.internal)},
                    {"external_inputs", names(cls.external)},
                    {"outputs", names(s.outputs)}});
    r.text << s.name << ": controls " << list(s.controls) << "; internal inputs " << list(cls.internal)
           << "; external inputs " << list(cls.external) << "; outputs " << list(s.outputs) << '\n';
  }
  r.doc["subsystems"] = subs;
  r.text << "well-posed; forest " << yes_no(is_forest(g)) << "; leaves";
  for (const auto& l : leaf_list) r.text << ' ' << l;
  r.text << '\n';
  return r.finish(o, out, kSuccess);
}

int run_synthesize(const Options& o, std::ostream& out) {
  Report r;
  const auto net = io::load_network(o.net);
  require_well_posed(net);
  const auto contract = io::load_contract(o.contract, net);
  r.doc["command"] = "synthesize";
  r.doc["mode"] = o.central ? "central" : "distributed";

  if (o.central) {
    const auto result = centralized_synthesis(net, contract);
    r.doc["realizable"] = result.realizable;
    r.text << "centralized synthesis: " << (result.realizable ? "realizable" : "unrealizable") << '\n';
    bool consistent = true;
    if (o.oracle) {
      // The flattened network is a single subsystem, so the distributed
      // brute force decides central realizability.
      BooleanNetwork flat;
      flat.subsystems.push_back(flatten(net));
      Json j;
      try {
        const auto found = oracle::brute_force_distributed(flat, contract);
        consistent = found.has_value() == result.realizable;
        j = {{"status", "checked"}, {"controller_exists", found.has_value()}, {"consistent", consistent}};
        r.text << "oracle: " << (found ? "realizable" : "unrealizable") << (consistent ? ", agrees\n" : ", CONTRADICTS\n");
      } catch (const BudgetExceeded& e) {
        j = {{"status", "skipped"}, {"reason", e.what()}, {"consistent", true}};
        r.text << "oracle: skipped (" << e.what() << ")\n";
      }
      r.doc["oracle"] = j;
    }
    if (result.realizable) {
      io::ControllerFile file;
      file.controllers.emplace(result.controller->subsystem, *result.controller);
      write_or_embed(r, o, io::controllers_to_json(file));
    }
    return r.finish(o, out, result.realizable && consistent ? kSuccess : kUnrealizable);
  }

  const auto outcome = distributed_synthesis(net, contract);
  const auto report = completeness_report(net, contract);
  r.doc["success"] = outcome.success;
  r.doc["trace"] = io::trace_to_json(outcome.trace);
  r.doc["completeness"] = completeness_json(report);
  r.text << "distributed synthesis: " << (outcome.success ? "success" : "failure") << '\n'
         << "trace:\n"
         << io::trace_to_text(outcome.trace);
  completeness_text(r.text, report);
  if (!outcome.success) {
    r.doc["failed_subsystem"] = *outcome.failed_subsystem;
    r.text << "failed at " << *outcome.failed_subsystem << " after " << outcome.failed_candidates
           << " distribution(s)" << (report.holds() ? "; no distributed controller exists\n" : "\n");
  }
  bool consistent = true;
  if (o.oracle) {
    if (outcome.success) {
      const auto v = oracle::verify_closed_loop(net, outcome.controllers, contract);
      r.doc["verification"] = verification_json(v);
      r.text << "closed loop: " << (v.holds ? "satisfies the contract" : "VIOLATES the contract") << '\n';
      consistent = v.holds;
    }
    consistent = oracle_distributed(r, net, contract, outcome.success, report.holds()) && consistent;
  }
  if (outcome.success) write_or_embed(r, o, io::controllers_to_json({outcome.controllers, outcome.local_contracts}));
  return r.finish(o, out, outcome.success && consistent ? kSuccess : kUnrealizable);
}

int run_verify(const Options& o, std::ostream& out) {
  Report r;
  const auto net = io::load_network(o.net);
  require_well_posed(net);
  const auto contract = io::load_contract(o.contract, net);
  const auto file = io::load_controllers(o.controllers, net);
  const auto v = oracle::verify_closed_loop(net, file.controllers, contract);
  r.doc["command"] = "verify";
  r.doc["verification"] = verification_json(v);
  if (v.holds) {
    r.text << "closed loop satisfies the contract on every admissible input\n";
  } else {
    const auto y = closed_loop_outputs(net, file.controllers, *v.counterexample);
    r.doc["counterexample_outputs"] = y.to_string();
    r.text << "closed loop violates the contract\ncounterexample: " << v.counterexample->to_string()
           << "\noutputs: " << y.to_string() << '\n';
  }
  bool consistent = true;
  if (o.oracle) {
    // Recheck through the symbolic composition instead of the evaluator.
    const auto composed = compose(net, align_controllers(net, file.controllers));
    const auto ext = net.external_inputs();
    bool holds = true;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << ext.size()) && holds; ++x) {
      const auto e = Valuation::from_index(ext, x);
      if (!contract.assumption.eval(e)) continue;
      Valuation y;
      for (const auto& [name, f] : composed) {
        y.scope.add(name);
        y.bits.push_back(f.eval(e));
      }
      holds = contract.guarantee.eval(y);
    }
    consistent = holds == v.holds;
    r.doc["oracle"] = {{"status", "checked"}, {"holds", holds}, {"consistent", consistent}};
    r.text << "oracle: composed closed loop " << (holds ? "satisfies" : "violates") << " the contract"
           << (consistent ? ", agrees\n" : ", CONTRADICTS\n");
  }
  return r.finish(o, out, v.holds && consistent ? kSuccess : kUnrealizable);
}

int run_distribute(const Options& o, std::ostream& out) {
  Report r;
  const auto net = io::load_network(o.net);
  require_well_posed(net);
  const auto contract = io::load_contract(o.contract, net);
  const auto& sys = net.subsystem(o.subsystem);
  const auto cls = classify_inputs(net, sys.name);
  const auto local = project_assumption(contract.assumption, net, sys.name);
  const auto dists = maximal_distributions(contract.guarantee, sys.outputs);

  r.doc["command"] = "distribute";
  r.doc["subsystem"] = sys.name;
  r.doc["internal_inputs"] = names(cls.internal);
  r.doc["external_inputs"] = names(cls.external);
  r.doc["local_assumption"] = to_expr(local);
  Json ds = Json::array();
  for (const auto& d : dists) ds.push_back({{"down", to_expr(d.down)}, {"up", to_expr(d.up)}});
  r.doc["distributions"] = ds;
  r.text << "subsystem " << sys.name << '\n'
         << "external inputs: " << list(cls.external) << '\n'
         << "internal inputs: " << list(cls.internal) << '\n'
         << "local assumption: " << to_expr(local) << '\n'
         << "maximal distributions: " << dists.size() << '\n';
  for (std::size_t k = 0; k < dists.size(); ++k)
    r.text << "  " << (k + 1) << ": down = " << to_expr(dists[k].down) << ", up = " << to_expr(dists[k].up) << '\n';

  bool consistent = true;
  if (o.oracle) {
    const auto g = build_distribution_graph(contract.guarantee, sys.outputs);
    try {
      auto engine = maximal_bicliques(g);
      std::sort(engine.begin(), engine.end());
      consistent = engine == oracle::enumerate_bicliques_subset(g);
      r.doc["oracle"] = {{"status", "checked"}, {"consistent", consistent}};
      r.text << "oracle: subset enumeration " << (consistent ? "agrees\n" : "CONTRADICTS the biclique search\n");
    } catch (const BudgetExceeded& e) {
      r.doc["oracle"] = {{"status", "skipped"}, {"reason", e.what()}, {"consistent", true}};
      r.text << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  return r.finish(o, out, !dists.empty() && consistent ? kSuccess : kUnrealizable);
}

int run_eps(const Options& o, std::ostream& out) {
  Report r;
  const auto topo = eps::load_topology(o.topology);
  std::optional<eps::Partition> partition;
  if (!o.partition.empty()) partition = eps::load_partition(o.partition);
  const auto compiled = eps::compile_to_network(topo, partition);
  const auto& net = compiled.network;

  r.doc["command"] = "eps";
  r.text << "topology: " << topo.nodes.size() << " components, " << topo.contactors().size() << " contactors, "
         << topo.health_components().size() << " health bits\n";
  Json subs = Json::array();
  for (const auto& s : net.subsystems) {
    subs.push_back({{"name", s.name},
                    {"controls", names(s.controls)},
                    {"env_inputs", names(s.env_inputs)},
                    {"outputs", names(s.outputs)}});
    r.text << "subsystem " << s.name << ": controls " << list(s.controls) << "; inputs " << list(s.env_inputs)
           << "; outputs " << list(s.outputs) << '\n';
  }
  Json feeds = Json::array();
  for (const auto& f : compiled.feeds) {
    feeds.push_back({{"link", f.link},
                     {"from", f.from_group + "." + f.from_node},
                     {"to", f.to_group + "." + f.to_node},
                     {"input", f.input}});
    r.text << "feed " << f.link << ": " << f.from_group << '.' << f.from_node << " -> " << f.to_group << '.'
           << f.to_node << " (input " << f.input << ")\n";
  }
  r.doc["subsystems"] = subs;
  r.doc["feeds"] = feeds;
  r.doc["contract"] = io::contract_to_json(compiled.contract);
  r.text << "assumption: " << to_expr(compiled.contract.assumption) << '\n'
         << "guarantee: " << to_expr(compiled.contract.guarantee) << '\n';
  if (!o.emit_network.empty()) io::write_text(o.emit_network, io::network_to_json(net).dump(2) + "\n");
  if (!o.emit_contract.empty())
    io::write_text(o.emit_contract, io::contract_to_json(compiled.contract).dump(2) + "\n");

  const auto report = completeness_report(net, compiled.contract);
  r.doc["completeness"] = completeness_json(report);
  completeness_text(r.text, report);

  const auto outcome = distributed_synthesis(net, compiled.contract);
  r.doc["success"] = outcome.success;
  r.doc["trace"] = io::trace_to_json(outcome.trace);
  r.text << "distributed synthesis: " << (outcome.success ? "success" : "failure") << '\n'
         << "trace:\n"
         << io::trace_to_text(outcome.trace);
  bool ok = outcome.success;
  if (outcome.success) {
    const auto v = oracle::verify_closed_loop(net, outcome.controllers, compiled.contract);
    r.doc["verification"] = verification_json(v);
    r.text << "closed loop: " << (v.holds ? "satisfies the contract" : "VIOLATES the contract") << '\n';
    ok = v.holds;
  }
  if (o.central) {
    const auto central = centralized_synthesis(net, compiled.contract);
    // Distributed success implies central realizability; the converse needs
    // the completeness conditions.
    const bool agree =
        central.realizable == outcome.success || (central.realizable && !outcome.success && !report.holds());
    r.doc["central"] = {{"realizable", central.realizable}, {"consistent", agree}};
    r.text << "centralized synthesis: " << (central.realizable ? "realizable" : "unrealizable")
           << (central.realizable == outcome.success ? ", agrees\n" : ", differs\n");
    ok = ok && agree;
  }
  if (o.oracle) {
    const auto f = eps::check_faithfulness(topo, compiled);
    r.doc["oracle"] = {{"status", f.checked ? "checked" : "skipped"}, {"states", f.states}, {"consistent", f.holds}};
    if (!f.checked)
      r.text << "oracle: skipped, state space too large\n";
    else if (f.holds)
      r.text << "oracle: compiled outputs match live-path semantics on " << f.states << " states\n";
    else
      r.text << "oracle: compilation MISMATCH, " << *f.mismatch << '\n';
    ok = ok && f.holds;
  }
  if (outcome.success) write_or_embed(r, o, io::controllers_to_json({outcome.controllers, outcome.local_contracts}));
  return r.finish(o, out, ok ? kSuccess : kUnrealizable);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distributed controller synthesis for networks of Boolean systems", "bnsynth"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print a machine-readable JSON report");
  app.add_flag("--oracle", o.oracle, "Cross-check the result against brute-force references");

  auto* validate_cmd = app.add_subcommand("validate", "Check that a network is well-posed");
  validate_cmd->add_option("network", o.net, "Network file")->required();

  auto* synth_cmd = app.add_subcommand("synthesize", "Synthesize local controllers for a contract");
  synth_cmd->add_option("network", o.net, "Network file")->required();
  synth_cmd->add_option("contract", o.contract, "Contract file")->required();
  synth_cmd->add_flag("--central", o.central, "Solve one centralized problem instead");
  synth_cmd->add_option("--out", o.out, "Write the controller file here");

  auto* verify_cmd = app.add_subcommand("verify", "Check a closed loop against a contract");
  verify_cmd->add_option("network", o.net, "Network file")->required();
  verify_cmd->add_option("contract", o.contract, "Contract file")->required();
  verify_cmd->add_option("controllers", o.controllers, "Controller file")->required();

  auto* dist_cmd = app.add_subcommand("distribute", "List the maximal guarantee distributions of one subsystem");
  dist_cmd->add_option("network", o.net, "Network file")->required();
  dist_cmd->add_option("contract", o.contract, "Contract file")->required();
  dist_cmd->add_option("--subsystem", o.subsystem, "Subsystem name")->required();

  auto* eps_cmd = app.add_subcommand("eps", "Compile a power topology, synthesize and verify");
  eps_cmd->add_option("topology", o.topology, "Topology file")->required();
  eps_cmd->add_option("--partition", o.partition, "Explicit grouping of components into subsystems");
  eps_cmd->add_flag("--central", o.central, "Also run centralized synthesis and compare");
  eps_cmd->add_option("--out", o.out, "Write the controller file here");
  eps_cmd->add_option("--emit-network", o.emit_network, "Write the compiled network here");
  eps_cmd->add_option("--emit-contract", o.emit_contract, "Write the compiled contract here");

  std::vector<const char*> argv{"bnsynth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*validate_cmd) return run_validate(o, out);
    if (*synth_cmd) return run_synthesize(o, out);
    if (*verify_cmd) return run_verify(o, out);
    if (*dist_cmd) return run_distribute(o, out);
    return run_eps(o, out);
  } catch (const UnrealizableError& e) {
    err << "unrealizable: " << e.what() << '\n';
    return kUnrealizable;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace bnsynth::cli
