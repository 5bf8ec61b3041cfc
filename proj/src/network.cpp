#include "bnsynth/network.hpp"

#include <algorithm>
#include <set>

#include "bnsynth/errors.hpp"

namespace bnsynth {

const BoolFunc& BooleanSystem::output_function(std::string_view output) const {
  auto k = outputs.index_of(output);
  if (!k || *k >= output_funcs.size())
    throw NetworkError("subsystem '" + name + "' has no output '" + std::string(output) + "'");
  return output_funcs[*k];
}

const BooleanSystem& BooleanNetwork::subsystem(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw NetworkError("unknown subsystem '" + std::string(name) + "'");
  return subsystems[*i];
}

std::optional<std::size_t> BooleanNetwork::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < subsystems.size(); ++i)
    if (subsystems[i].name == name) return i;
  return std::nullopt;
}

const Link* BooleanNetwork::driver_of(std::string_view sys, std::string_view input) const {
  for (const auto& l : wiring)
    if (l.to_sys == sys && l.to_input == input) return &l;
  return nullptr;
}

VariableSet BooleanNetwork::all_controls() const {
  VariableSet out;
  for (const auto& s : subsystems) out = out.united(s.controls);
  return out;
}

VariableSet BooleanNetwork::all_outputs() const {
  VariableSet out;
  for (const auto& s : subsystems) out = out.united(s.outputs);
  return out;
}

VariableSet BooleanNetwork::external_inputs() const {
  VariableSet out;
  for (const auto& s : subsystems)
    for (const auto& e : s.env_inputs)
      if (!driver_of(s.name, e)) out.add(e);
  return out;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DuplicateSubsystem: return "duplicate-subsystem";
    case Violation::Kind::DuplicateVariable: return "duplicate-variable";
    case Violation::Kind::OutputScope: return "output-scope";
    case Violation::Kind::MissingOutputFunction: return "missing-output-function";
    case Violation::Kind::DanglingLink: return "dangling-link";
    case Violation::Kind::MultipleDrivers: return "multiple-drivers";
    case Violation::Kind::Cycle: return "cycle";
  }
  return "unknown";
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> raw_edges(const BooleanNetwork& net) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& l : net.wiring) {
    auto a = net.index_of(l.from_sys);
    auto b = net.index_of(l.to_sys);
    if (a && b) edges.emplace_back(*a, *b);
  }
  return edges;
}

}  // namespace

std::vector<Violation> validate(const BooleanNetwork& net) {
  using K = Violation::Kind;
  std::vector<Violation> out;

  std::set<std::string> sys_names;
  for (const auto& s : net.subsystems)
    if (!sys_names.insert(s.name).second)
      out.push_back({K::DuplicateSubsystem, "subsystem '" + s.name + "' declared twice"});

  std::map<std::string, std::string> owner;
  for (const auto& s : net.subsystems) {
    for (const auto* set : {&s.controls, &s.env_inputs, &s.outputs}) {
      for (const auto& v : *set) {
        auto [it, fresh] = owner.emplace(v, s.name);
        if (!fresh)
          out.push_back({K::DuplicateVariable, "variable '" + v + "' declared in '" + it->second +
                                                   "' and again in '" + s.name + "'"});
      }
    }
    if (s.output_funcs.size() != s.outputs.size()) {
      out.push_back({K::MissingOutputFunction,
                     "subsystem '" + s.name + "' has " + std::to_string(s.outputs.size()) +
                         " outputs but " + std::to_string(s.output_funcs.size()) + " functions"});
    }
    const auto inputs = s.input_scope();
    for (std::size_t k = 0; k < std::min(s.outputs.size(), s.output_funcs.size()); ++k) {
      if (!s.output_funcs[k].scope().subset_of(inputs))
        out.push_back({K::OutputScope, "function of '" + s.outputs[k] + "' in '" + s.name +
                                           "' reads variables outside U and E"});
    }
  }

  std::map<std::pair<std::string, std::string>, int> drivers;
  for (const auto& l : net.wiring) {
    auto from = net.index_of(l.from_sys);
    auto to = net.index_of(l.to_sys);
    const auto desc = l.from_sys + "." + l.from_output + " -> " + l.to_sys + "." + l.to_input;
    if (!from || !to || !net.subsystems[*from].outputs.contains(l.from_output) ||
        !net.subsystems[*to].env_inputs.contains(l.to_input)) {
      out.push_back({K::DanglingLink, "link " + desc + " refers to an undeclared endpoint"});
      continue;
    }
    if (++drivers[{l.to_sys, l.to_input}] == 2)
      out.push_back({K::MultipleDrivers, "input " + l.to_sys + "." + l.to_input +
                                             " is driven by more than one output"});
    if (*from == *to) out.push_back({K::Cycle, "link " + desc + " is a self-loop"});
  }

  SystemGraph g(
      [&] {
        std::vector<std::string> n;
        for (const auto& s : net.subsystems) n.push_back(s.name);
        return n;
      }(),
      raw_edges(net));
  bool self_loop = std::any_of(g.edges().begin(), g.edges().end(),
                               [](const auto& e) { return e.first == e.second; });
  if (!self_loop && !g.topological_order())
    out.push_back({K::Cycle, "the system graph contains a cycle"});
  return out;
}

void require_well_posed(const BooleanNetwork& net) {
  auto v = validate(net);
  if (v.empty()) return;
  std::string msg = "ill-posed network:";
  for (const auto& x : v) msg += "\n  " + x.message;
  throw NetworkError(msg);
}

// --------------------------------------------------------------- SystemGraph

SystemGraph::SystemGraph(std::vector<std::string> nodes,
                         std::vector<std::pair<std::size_t, std::size_t>> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool SystemGraph::has_edge(std::string_view from, std::string_view to) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const auto& e) {
    return nodes_[e.first] == from && nodes_[e.second] == to;
  });
}

std::vector<std::size_t> SystemGraph::parents(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges_)
    if (b == node) out.push_back(a);
  return out;
}

std::vector<std::size_t> SystemGraph::children(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges_)
    if (a == node) out.push_back(b);
  return out;
}

std::optional<std::vector<std::size_t>> SystemGraph::topological_order() const {
  std::vector<std::size_t> indeg(nodes_.size(), 0);
  for (const auto& e : edges_) ++indeg[e.second];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (indeg[i] == 0) ready.insert(i);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (auto c : children(n))
      if (--indeg[c] == 0) ready.insert(c);
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

SystemGraph system_graph(const BooleanNetwork& net) {
  std::vector<std::string> nodes;
  for (const auto& s : net.subsystems) nodes.push_back(s.name);
  return SystemGraph(std::move(nodes), raw_edges(net));
}

std::vector<std::string> leaves(const SystemGraph& g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    if (g.children(i).empty()) out.push_back(g.nodes()[i]);
  return out;
}

bool is_forest(const SystemGraph& g) {
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    if (g.parents(i).size() > 1) return false;
  return true;
}

InputClasses classify_inputs(const BooleanNetwork& net, std::string_view subsystem) {
  const auto& s = net.subsystem(subsystem);
  InputClasses c;
  for (const auto& e : s.env_inputs) {
    if (net.driver_of(s.name, e))
      c.internal.add(e);
    else
      c.external.add(e);
  }
  return c;
}

BooleanNetwork remove_subsystem(const BooleanNetwork& net, std::string_view subsystem) {
  const auto idx = net.index_of(subsystem);
  if (!idx) throw NetworkError("unknown subsystem '" + std::string(subsystem) + "'");
  for (const auto& l : net.wiring)
    if (l.from_sys == subsystem && l.to_sys != subsystem)
      throw NetworkError("cannot delete '" + std::string(subsystem) +
                         "': it is not a leaf of the system graph");
  BooleanNetwork out;
  for (std::size_t i = 0; i < net.subsystems.size(); ++i)
    if (i != *idx) out.subsystems.push_back(net.subsystems[i]);
  for (const auto& l : net.wiring)
    if (l.to_sys != subsystem) out.wiring.push_back(l);
  return out;
}

// ---------------------------------------------------------------- Controller

Controller Controller::zero(std::string subsystem, VariableSet inputs, VariableSet controls) {
  Controller c{std::move(subsystem), std::move(inputs), std::move(controls), {}};
  c.table.assign(std::size_t{1} << c.inputs.size(), 0);
  return c;
}

Valuation Controller::lookup(const Valuation& input) const {
  std::uint64_t idx = 0;
  for (const auto& name : inputs) {
    auto b = input.get(name);
    if (!b) throw UnknownIdentifier(name);
    idx = (idx << 1) | (*b ? 1U : 0U);
  }
  return Valuation::from_index(controls, (*this)(idx));
}

// ---------------------------------------------------------- NetworkEvaluator

NetworkEvaluator::NetworkEvaluator(const BooleanNetwork& net)
    : net_(&net),
      external_(net.external_inputs()),
      outputs_(net.all_outputs()),
      controls_(net.all_controls()) {
  require_well_posed(net);
  order_ = *system_graph(net).topological_order();
  nodes_.resize(net.subsystems.size());
  for (std::size_t i = 0; i < net.subsystems.size(); ++i) {
    const auto& s = net.subsystems[i];
    auto& node = nodes_[i];
    node.n_env = static_cast<unsigned>(s.env_inputs.size());
    node.n_ctl = static_cast<unsigned>(s.controls.size());
    node.n_out = static_cast<unsigned>(s.outputs.size());
    for (const auto& e : s.env_inputs) {
      if (const auto* l = net.driver_of(s.name, e))
        node.env_sources.push_back({true, outputs_.size() - 1 - *outputs_.index_of(l->from_output)});
      else
        node.env_sources.push_back({false, external_.size() - 1 - *external_.index_of(e)});
    }
    for (const auto& y : s.outputs) node.out_slots.push_back(outputs_.size() - 1 - *outputs_.index_of(y));
    for (const auto& u : s.controls) node.ctl_slots.push_back(controls_.size() - 1 - *controls_.index_of(u));

    const auto scope = s.input_scope();
    std::vector<BoolFunc> funcs;
    for (const auto& f : s.output_funcs) funcs.push_back(f.extend(scope));
    const auto rows = std::uint64_t{1} << scope.size();
    node.system_table.resize(rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
      std::uint32_t y = 0;
      for (const auto& f : funcs) y = (y << 1) | (f.eval(r) ? 1U : 0U);
      node.system_table[r] = y;
    }
  }
}

std::uint64_t NetworkEvaluator::evaluate(std::uint64_t external_index, const Policy& policy) const {
  std::uint64_t out = 0;
  for (auto i : order_) {
    const auto& node = nodes_[i];
    std::uint64_t env = 0;
    for (const auto& src : node.env_sources)
      env = (env << 1) | (((src.internal ? out : external_index) >> src.slot) & 1U);
    const auto u = policy(i, env);
    const auto y = node.system_table[(u << node.n_env) | env];
    for (unsigned k = 0; k < node.n_out; ++k)
      out |= static_cast<std::uint64_t>((y >> (node.n_out - 1 - k)) & 1U) << node.out_slots[k];
  }
  return out;
}

std::uint64_t NetworkEvaluator::evaluate_open(std::uint64_t external_index,
                                              std::uint64_t control_index) const {
  return evaluate(external_index, [&](std::size_t i, std::uint64_t) {
    const auto& node = nodes_[i];
    std::uint64_t u = 0;
    for (auto slot : node.ctl_slots) u = (u << 1) | ((control_index >> slot) & 1U);
    return u;
  });
}

std::uint64_t NetworkEvaluator::evaluate_closed(std::uint64_t external_index,
                                                const ControllerSet& controllers) const {
  std::vector<const Controller*> by_index(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto it = controllers.find(net_->subsystems[i].name);
    if (it == controllers.end())
      throw NetworkError("missing controller for subsystem '" + net_->subsystems[i].name + "'");
    by_index[i] = &it->second;
  }
  return evaluate(external_index, [&](std::size_t i, std::uint64_t env) { return (*by_index[i])(env); });
}

ControllerSet align_controllers(const BooleanNetwork& net, const ControllerSet& controllers) {
  ControllerSet aligned;
  for (const auto& s : net.subsystems) {
    auto it = controllers.find(s.name);
    if (it == controllers.end())
      throw NetworkError("missing controller for subsystem '" + s.name + "'");
    const auto& c = it->second;
    if (!c.inputs.same_members(s.env_inputs) || !c.controls.same_members(s.controls) ||
        c.table.size() != (std::size_t{1} << c.inputs.size()))
      throw NetworkError("controller for '" + s.name + "' does not match its interface");
    Controller a = Controller::zero(s.name, s.env_inputs, s.controls);
    const IndexMap in_map(s.env_inputs, c.inputs);
    const IndexMap out_map(c.controls, s.controls);
    for (std::uint64_t e = 0; e < a.table.size(); ++e) a.table[e] = out_map(c(in_map(e)));
    aligned.emplace(s.name, std::move(a));
  }
  return aligned;
}

std::vector<std::pair<std::string, BoolFunc>> compose(const BooleanNetwork& net,
                                                      const ControllerSet& controllers) {
  NetworkEvaluator ev(net);
  const auto aligned = align_controllers(net, controllers);

  const auto& ext = ev.external_inputs();
  const auto& outs = ev.outputs();
  const auto rows = std::uint64_t{1} << ext.size();
  std::vector<std::uint64_t> values(rows);
  for (std::uint64_t x = 0; x < rows; ++x) values[x] = ev.evaluate_closed(x, aligned);

  std::vector<std::pair<std::string, BoolFunc>> result;
  for (std::size_t k = 0; k < outs.size(); ++k) {
    const auto bit = outs.size() - 1 - k;
    result.emplace_back(outs[k], BoolFunc::from_predicate(ext, [&](std::uint64_t x) {
                          return ((values[x] >> bit) & 1U) != 0;
                        }));
  }
  return result;
}

BooleanSystem flatten(const BooleanNetwork& net, std::string name) {
  NetworkEvaluator ev(net);
  BooleanSystem flat;
  flat.name = std::move(name);
  flat.controls = ev.controls();
  flat.env_inputs = ev.external_inputs();
  flat.outputs = ev.outputs();
  const auto scope = flat.input_scope();
  const auto n_ext = flat.env_inputs.size();
  const auto rows = std::uint64_t{1} << scope.size();
  std::vector<std::uint64_t> values(rows);
  const auto ext_mask = (std::uint64_t{1} << n_ext) - 1;
  for (std::uint64_t r = 0; r < rows; ++r) values[r] = ev.evaluate_open(r & ext_mask, r >> n_ext);
  const auto n_out = flat.outputs.size();
  for (std::size_t k = 0; k < n_out; ++k) {
    const auto bit = n_out - 1 - k;
    flat.output_funcs.push_back(BoolFunc::from_predicate(
        scope, [&](std::uint64_t r) { return ((values[r] >> bit) & 1U) != 0; }));
  }
  return flat;
}

}  // namespace bnsynth
