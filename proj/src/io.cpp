#include "bnsynth/io.hpp"

#include <fstream>
#include <sstream>

#include "bnsynth/errors.hpp"

namespace bnsynth::io {
namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string identifier_field(const Json& obj, const char* key, const std::string& where) {
  auto s = string_field(obj, key, where);
  if (!is_identifier(s)) throw InputError(where + ": '" + s + "' is not a valid identifier");
  return s;
}

VariableSet name_list(const Json& obj, const char* key, const std::string& where, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw InputError(where + ": missing field '" + key + "'");
    return {};
  }
  if (!it->is_array()) throw InputError(where + ": field '" + key + "' must be a list");
  VariableSet out;
  for (const auto& v : *it) {
    if (!v.is_string() || !is_identifier(v.get<std::string>()))
      throw InputError(where + ": '" + key + "' must list identifiers");
    if (!out.add(v.get<std::string>()))
      throw InputError(where + ": duplicate name '" + v.get<std::string>() + "' in '" + key + "'");
  }
  return out;
}

BoolFunc parse_in(std::string_view text, const VariableSet& scope, const std::string& where) {
  try {
    return parse_expr(text, scope);
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

Json names_to_json(const VariableSet& s) {
  Json a = Json::array();
  for (const auto& n : s) a.push_back(n);
  return a;
}

std::uint64_t bits_to_index(const std::string& bits, std::size_t width, const std::string& where) {
  if (bits.size() != width) throw InputError(where + ": expected " + std::to_string(width) + " bits");
  std::uint64_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError(where + ": bit strings may only contain 0 and 1");
    idx = (idx << 1) | (c == '1' ? 1U : 0U);
  }
  return idx;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

// ------------------------------------------------------------------ network

BooleanNetwork network_from_json(const Json& doc) {
  BooleanNetwork net;
  const auto& subs = field(doc, "subsystems", "network");
  if (!subs.is_array()) throw InputError("network: 'subsystems' must be a list");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto where = "subsystem #" + std::to_string(i);
    BooleanSystem s;
    s.name = identifier_field(subs[i], "name", where);
    const auto here = "subsystem '" + s.name + "'";
    s.controls = name_list(subs[i], "controls", here, false);
    s.env_inputs = name_list(subs[i], "env_inputs", here, false);
    if (!s.controls.disjoint(s.env_inputs))
      throw InputError(here + ": controls and env_inputs must be disjoint");
    const auto scope = s.input_scope();
    const auto& outs = field(subs[i], "outputs", here);
    if (!outs.is_array()) throw InputError(here + ": 'outputs' must be a list");
    for (const auto& o : outs) {
      auto name = identifier_field(o, "name", here);
      if (!s.outputs.add(name)) throw InputError(here + ": duplicate output '" + name + "'");
      s.output_funcs.push_back(parse_in(string_field(o, "expr", here), scope, here + " output '" + name + "'"));
    }
    net.subsystems.push_back(std::move(s));
  }
  if (auto it = doc.find("wiring"); it != doc.end()) {
    if (!it->is_array()) throw InputError("network: 'wiring' must be a list");
    for (const auto& l : *it) {
      net.wiring.push_back({identifier_field(l, "from_sys", "wiring"), identifier_field(l, "from_output", "wiring"),
                            identifier_field(l, "to_sys", "wiring"), identifier_field(l, "to_input", "wiring")});
    }
  }
  return net;
}

Json network_to_json(const BooleanNetwork& net) {
  Json subs = Json::array();
  for (const auto& s : net.subsystems) {
    Json outs = Json::array();
    for (std::size_t k = 0; k < s.outputs.size(); ++k)
      outs.push_back({{"name", s.outputs[k]}, {"expr", to_expr(s.output_funcs[k])}});
    subs.push_back({{"name", s.name},
                    {"controls", names_to_json(s.controls)},
                    {"env_inputs", names_to_json(s.env_inputs)},
                    {"outputs", outs}});
  }
  Json wiring = Json::array();
  for (const auto& l : net.wiring)
    wiring.push_back(
        {{"from_sys", l.from_sys}, {"from_output", l.from_output}, {"to_sys", l.to_sys}, {"to_input", l.to_input}});
  return {{"subsystems", subs}, {"wiring", wiring}};
}

BooleanNetwork load_network(const std::filesystem::path& path) {
  try {
    return network_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ----------------------------------------------------------------- contract

ContractPair contract_from_json(const Json& doc, const BooleanNetwork& net) {
  const auto ext = net.external_inputs();
  const auto outs = net.all_outputs();
  ContractPair c{BoolFunc::constant(ext, true), BoolFunc::constant(outs, true)};
  auto conjoin_list = [&](const char* key, const VariableSet& scope, BoolFunc& acc) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_array()) throw InputError(std::string("contract: '") + key + "' must be a list");
    for (const auto& e : *it) {
      if (!e.is_string()) throw InputError(std::string("contract: '") + key + "' must list expressions");
      acc = acc & parse_in(e.get<std::string>(), scope, std::string("contract ") + key);
    }
  };
  if (!doc.is_object()) throw InputError("contract: expected an object");
  conjoin_list("assumptions", ext, c.assumption);
  conjoin_list("guarantees", outs, c.guarantee);
  return c;
}

Json contract_to_json(const ContractPair& contract) {
  return {{"assumptions", Json::array({to_expr(contract.assumption)})},
          {"guarantees", Json::array({to_expr(contract.guarantee)})}};
}

ContractPair load_contract(const std::filesystem::path& path, const BooleanNetwork& net) {
  return contract_from_json(read_json(path), net);
}

// -------------------------------------------------------------- controllers

Json controller_to_json(const Controller& c) {
  Json rows = Json::array();
  for (std::uint64_t e = 0; e < c.table.size(); ++e) {
    rows.push_back({{"in", Valuation::from_index(c.inputs, e).bit_string()},
                    {"out", Valuation::from_index(c.controls, c.table[e]).bit_string()}});
  }
  return {{"subsystem", c.subsystem},
          {"inputs", names_to_json(c.inputs)},
          {"controls", names_to_json(c.controls)},
          {"rows", rows}};
}

Controller controller_from_json(const Json& doc) {
  Controller c;
  c.subsystem = identifier_field(doc, "subsystem", "controller");
  const auto where = "controller '" + c.subsystem + "'";
  c.inputs = name_list(doc, "inputs", where);
  c.controls = name_list(doc, "controls", where);
  const auto& rows = field(doc, "rows", where);
  if (!rows.is_array()) throw InputError(where + ": 'rows' must be a list");
  const auto n = std::uint64_t{1} << c.inputs.size();
  std::vector<bool> seen(n, false);
  c.table.assign(n, 0);
  for (const auto& r : rows) {
    const auto in = bits_to_index(string_field(r, "in", where), c.inputs.size(), where);
    const auto out = bits_to_index(string_field(r, "out", where), c.controls.size(), where);
    if (seen[in]) throw InputError(where + ": duplicate row '" + r["in"].get<std::string>() + "'");
    seen[in] = true;
    c.table[in] = out;
  }
  for (std::uint64_t e = 0; e < n; ++e)
    if (!seen[e])
      throw InputError(where + ": table is not total, row '" + Valuation::from_index(c.inputs, e).bit_string() +
                       "' is missing");
  return c;
}

Json controllers_to_json(const ControllerFile& file) {
  Json ctrls = Json::array();
  for (const auto& [name, c] : file.controllers) ctrls.push_back(controller_to_json(c));
  Json contracts = Json::array();
  for (const auto& [name, c] : file.local_contracts)
    contracts.push_back(
        {{"subsystem", name}, {"assumption", to_expr(c.assumption)}, {"guarantee", to_expr(c.guarantee)}});
  return {{"controllers", ctrls}, {"local_contracts", contracts}};
}

ControllerFile controllers_from_json(const Json& doc, const BooleanNetwork& net) {
  ControllerFile f;
  const auto& ctrls = field(doc, "controllers", "controller file");
  if (!ctrls.is_array()) throw InputError("controller file: 'controllers' must be a list");
  for (const auto& c : ctrls) {
    auto ctl = controller_from_json(c);
    auto name = ctl.subsystem;
    if (!f.controllers.emplace(name, std::move(ctl)).second)
      throw InputError("controller file: two controllers for '" + name + "'");
  }
  if (auto it = doc.find("local_contracts"); it != doc.end()) {
    for (const auto& lc : *it) {
      const auto name = identifier_field(lc, "subsystem", "local contract");
      const auto& sys = net.subsystem(name);
      const auto where = "local contract of '" + name + "'";
      f.local_contracts.emplace(name, ContractPair{parse_in(string_field(lc, "assumption", where), sys.env_inputs, where),
                                                   parse_in(string_field(lc, "guarantee", where), sys.outputs, where)});
    }
  }
  return f;
}

ControllerFile load_controllers(const std::filesystem::path& path, const BooleanNetwork& net) {
  return controllers_from_json(read_json(path), net);
}

// -------------------------------------------------------------------- trace

Json trace_to_json(const std::vector<TraceEntry>& trace) {
  Json out = Json::array();
  for (const auto& t : trace) {
    Json e = {{"depth", t.depth}, {"subsystem", t.subsystem}, {"event", to_string(t.event)}};
    e["candidate"] = t.candidate ? Json(*t.candidate) : Json(nullptr);
    e["candidates"] = t.candidates;
    e["lra"] = t.lra ? Json(to_expr(*t.lra)) : Json(nullptr);
    out.push_back(std::move(e));
  }
  return out;
}

std::string trace_to_text(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  for (const auto& t : trace) {
    os << std::string(2 * t.depth, ' ') << t.subsystem << ": ";
    if (t.candidate)
      os << "distribution " << (*t.candidate + 1) << "/" << t.candidates;
    else
      os << t.candidates << " distribution(s)";
    os << ' ' << to_string(t.event);
    if (t.lra) os << ", lra = " << to_expr(*t.lra);
    os << '\n';
  }
  return os.str();
}

}  // namespace bnsynth::io
