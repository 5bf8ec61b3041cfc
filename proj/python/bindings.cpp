// Python extension. Documents cross the boundary as JSON text; the package
// __init__ turns them into dicts.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bnsynth/boolfunc.hpp"
#include "bnsynth/contract.hpp"
#include "bnsynth/eps.hpp"
#include "bnsynth/errors.hpp"
#include "bnsynth/io.hpp"
#include "bnsynth/oracle.hpp"
#include "bnsynth/synthesis.hpp"

namespace py = pybind11;
using namespace bnsynth;

namespace {

io::Json parse(const std::string& text) {
  try {
    return io::Json::parse(text);
  } catch (const io::Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

py::dict synthesize(const BooleanNetwork& net, const ContractPair& contract) {
  const auto out = distributed_synthesis(net, contract);
  py::dict d;
  d["success"] = out.success;
  d["controllers"] = io::controllers_to_json({out.controllers, out.local_contracts}).dump();
  d["trace"] = io::trace_to_json(out.trace).dump();
  d["failed_subsystem"] = out.failed_subsystem;
  return d;
}

py::dict verify(const BooleanNetwork& net, const ContractPair& contract, const std::string& controllers) {
  const auto file = io::controllers_from_json(parse(controllers), net);
  const auto r = oracle::verify_closed_loop(net, file.controllers, contract);
  py::dict d;
  d["holds"] = r.holds;
  d["counterexample"] = r.counterexample ? std::optional<std::string>(r.counterexample->to_string()) : std::nullopt;
  return d;
}

std::vector<std::pair<std::string, std::string>> distribute(const BooleanNetwork& net, const ContractPair& contract,
                                                            const std::string& subsystem) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : maximal_distributions(contract.guarantee, net, subsystem))
    out.emplace_back(to_expr(d.down), to_expr(d.up));
  return out;
}

std::optional<std::string> brute_force(const BooleanNetwork& net, const ContractPair& contract) {
  const auto found = oracle::brute_force_distributed(net, contract);
  if (!found) return std::nullopt;
  return io::controllers_to_json({*found, {}}).dump();
}

py::tuple eps_compile(const std::string& topology, const std::optional<std::string>& partition) {
  const auto topo = eps::topology_from_json(parse(topology));
  std::optional<eps::Partition> groups;
  if (partition) groups = eps::partition_from_json(parse(*partition));
  auto compiled = eps::compile_to_network(topo, groups);
  return py::make_tuple(std::move(compiled.network), std::move(compiled.contract));
}

}  // namespace

PYBIND11_MODULE(_bnsynth, m) {
  m.doc() = "Distributed controller synthesis for Boolean networks";

  // Translators run most recent first, so the subclass goes last.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", input_error.ptr());

  py::class_<BoolFunc>(m, "BoolFunc")
      .def_property_readonly("variables", [](const BoolFunc& f) { return f.scope().names(); })
      .def("count", &BoolFunc::count)
      .def("is_true", &BoolFunc::is_true)
      .def("is_false", &BoolFunc::is_false)
      .def("eval",
           [](const BoolFunc& f, const std::map<std::string, bool>& values) {
             Valuation v{f.scope(), {}};
             for (const auto& name : f.scope()) {
               const auto it = values.find(name);
               if (it == values.end()) throw InputError("no value for variable '" + name + "'");
               v.bits.push_back(it->second);
             }
             return f.eval(v);
           })
      .def("equivalent", [](const BoolFunc& a, const BoolFunc& b) { return equivalent(a, b); })
      .def("__str__", [](const BoolFunc& f) { return to_expr(f); })
      .def("__repr__", [](const BoolFunc& f) { return "BoolFunc(" + to_expr(f) + ")"; });

  m.def(
      "parse_expr",
      [](const std::string& text, const std::vector<std::string>& variables) {
        return parse_expr(text, VariableSet(variables));
      },
      py::arg("text"), py::arg("variables"));

  py::class_<BooleanNetwork>(m, "Network")
      .def_property_readonly("subsystems",
                             [](const BooleanNetwork& n) {
                               std::vector<std::string> names;
                               for (const auto& s : n.subsystems) names.push_back(s.name);
                               return names;
                             })
      .def_property_readonly("external_inputs", [](const BooleanNetwork& n) { return n.external_inputs().names(); })
      .def_property_readonly("outputs", [](const BooleanNetwork& n) { return n.all_outputs().names(); })
      .def("validate",
           [](const BooleanNetwork& n) {
             std::vector<std::string> messages;
             for (const auto& v : validate(n)) messages.push_back(v.message);
             return messages;
           })
      .def("to_json", [](const BooleanNetwork& n) { return io::network_to_json(n).dump(); });

  py::class_<ContractPair>(m, "Contract")
      .def_readonly("assumption", &ContractPair::assumption)
      .def_readonly("guarantee", &ContractPair::guarantee)
      .def("to_json", [](const ContractPair& c) { return io::contract_to_json(c).dump(); });

  m.def("network_from_json", [](const std::string& text) { return io::network_from_json(parse(text)); });
  m.def("load_network", [](const std::string& path) { return io::load_network(path); });
  m.def("contract_from_json",
        [](const std::string& text, const BooleanNetwork& net) { return io::contract_from_json(parse(text), net); });
  m.def("load_contract", [](const std::string& path, const BooleanNetwork& net) { return io::load_contract(path, net); });

  m.def("synthesize", &synthesize, py::arg("network"), py::arg("contract"));
  m.def("verify", &verify, py::arg("network"), py::arg("contract"), py::arg("controllers"));
  m.def("distribute", &distribute, py::arg("network"), py::arg("contract"), py::arg("subsystem"));
  m.def("brute_force", &brute_force, py::arg("network"), py::arg("contract"));
  m.def("centralized_realizable",
        [](const BooleanNetwork& n, const ContractPair& c) { return centralized_synthesis(n, c).realizable; });
  m.def("completeness_certificate",
        [](const BooleanNetwork& n, const ContractPair& c) { return completeness_certificate(n, c); });
  m.def("eps_compile", &eps_compile, py::arg("topology"), py::arg("partition") = std::nullopt);
}
