#include "bnsynth/eps.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bnsynth/errors.hpp"

namespace bnsynth::eps {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Generator: return "generator";
    case Kind::Rectifier: return "rectifier";
    case Kind::Transformer: return "transformer";
    case Kind::Bus: return "bus";
    case Kind::Dummy: return "dummy";
  }
  return "unknown";
}

std::optional<std::size_t> PowerTopology::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> PowerTopology::edge_index(std::string_view name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return i;
  return std::nullopt;
}

const Component& PowerTopology::node(std::string_view name) const {
  auto i = node_index(name);
  if (!i) throw InputError("unknown component '" + std::string(name) + "'");
  return nodes[*i];
}

std::vector<std::string> PowerTopology::health_components() const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (n.has_health()) out.push_back(n.name);
  return out;
}

std::vector<std::string> PowerTopology::contactors() const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.contactor) out.push_back(e.name);
  return out;
}

// ------------------------------------------------------------------- loading

namespace {

std::string ident(const io::Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) throw InputError(where + ": missing string field '" + key + "'");
  auto s = it->get<std::string>();
  if (!is_identifier(s)) throw InputError(where + ": '" + s + "' is not a valid identifier");
  return s;
}

Kind parse_kind(const std::string& s, const std::string& where) {
  if (s == "generator") return Kind::Generator;
  if (s == "rectifier") return Kind::Rectifier;
  if (s == "transformer") return Kind::Transformer;
  if (s == "bus") return Kind::Bus;
  if (s == "dummy") return Kind::Dummy;
  throw InputError(where + ": unknown component kind '" + s + "'");
}

}  // namespace

PowerTopology topology_from_json(const io::Json& doc) {
  if (!doc.is_object()) throw InputError("topology: expected an object");
  PowerTopology t;
  std::set<std::string> names;
  auto claim = [&](const std::string& name, const std::string& what) {
    if (!names.insert(name).second) throw InputError("topology: duplicate name '" + name + "' (" + what + ")");
  };

  auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array() || nodes->empty())
    throw InputError("topology: 'nodes' must be a nonempty list");
  for (const auto& n : *nodes) {
    const auto name = ident(n, "name", "topology node");
    const auto where = "component '" + name + "'";
    auto kind_it = n.find("kind");
    if (kind_it == n.end() || !kind_it->is_string()) throw InputError(where + ": missing 'kind'");
    Current cur = Current::AC;
    if (auto c = n.find("current"); c != n.end()) {
      if (*c == "ac")
        cur = Current::AC;
      else if (*c == "dc")
        cur = Current::DC;
      else
        throw InputError(where + ": 'current' must be \"ac\" or \"dc\"");
    }
    claim(name, "component");
    t.nodes.push_back({name, parse_kind(kind_it->get<std::string>(), where), cur});
  }

  auto edges = doc.find("edges");
  if (edges != doc.end()) {
    if (!edges->is_array()) throw InputError("topology: 'edges' must be a list");
    for (const auto& e : *edges) {
      PowerEdge pe;
      pe.a = ident(e, "a", "topology edge");
      pe.b = ident(e, "b", "topology edge");
      const auto where = "edge " + pe.a + " - " + pe.b;
      if (!t.node_index(pe.a) || !t.node_index(pe.b))
        throw InputError(where + ": endpoint is not a declared component");
      if (pe.a == pe.b) throw InputError(where + ": self-loop");
      if (e.contains("contactor")) {
        pe.contactor = true;
        pe.name = ident(e, "contactor", where);
      } else if (auto s = e.find("solid"); s != e.end()) {
        pe.contactor = false;
        if (s->is_string())
          pe.name = ident(e, "solid", where);
        else if (e.contains("name"))
          pe.name = ident(e, "name", where);
        else
          pe.name = "link_" + pe.a + "_" + pe.b;
      } else {
        throw InputError(where + ": needs either 'contactor' or 'solid'");
      }
      claim(pe.name, pe.contactor ? "contactor" : "link");
      t.edges.push_back(std::move(pe));
    }
  }

  if (auto f = doc.find("feeders"); f != doc.end()) {
    if (!f->is_array()) throw InputError("topology: 'feeders' must be a list");
    for (const auto& name : *f) {
      if (!name.is_string()) throw InputError("topology: feeders must be edge names");
      auto s = name.get<std::string>();
      auto i = t.edge_index(s);
      if (!i) throw InputError("topology: feeder '" + s + "' is not a declared edge");
      if (t.edges[*i].contactor) throw InputError("topology: feeder '" + s + "' must be a solid link");
      t.feeders.push_back(s);
    }
  }
  return t;
}

PowerTopology load_topology(const std::filesystem::path& path) {
  try {
    return topology_from_json(io::read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------- semantics

PowerState make_state(const PowerTopology& t, const HealthState& h, const ContactorState& c) {
  PowerState s;
  s.online.assign(t.nodes.size(), true);
  s.conducting.assign(t.edges.size(), true);
  std::size_t used = 0;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (!t.nodes[i].has_health()) continue;
    auto it = h.find(t.nodes[i].name);
    if (it == h.end()) throw InputError("health state misses '" + t.nodes[i].name + "'");
    s.online[i] = it->second;
    ++used;
  }
  if (used != h.size()) throw InputError("health state names components without health status");
  used = 0;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (!t.edges[i].contactor) continue;
    auto it = c.find(t.edges[i].name);
    if (it == c.end()) throw InputError("contactor state misses '" + t.edges[i].name + "'");
    s.conducting[i] = it->second;
    ++used;
  }
  if (used != c.size()) throw InputError("contactor state names unknown contactors");
  return s;
}

PowerState make_state(const PowerTopology& t, std::uint64_t health_index, std::uint64_t contactor_index) {
  PowerState s;
  s.online.assign(t.nodes.size(), true);
  s.conducting.assign(t.edges.size(), true);
  const auto n_health = t.health_components().size();
  const auto n_ctl = t.contactors().size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].has_health()) s.online[i] = ((health_index >> (n_health - 1 - k++)) & 1U) != 0;
  k = 0;
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i].contactor) s.conducting[i] = ((contactor_index >> (n_ctl - 1 - k++)) & 1U) != 0;
  return s;
}

namespace {

// (neighbour, edge) pairs per node.
using Adjacency = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

Adjacency adjacency(const PowerTopology& t) {
  Adjacency adj(t.nodes.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto a = *t.node_index(t.edges[e].a);
    const auto b = *t.node_index(t.edges[e].b);
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  return adj;
}

// Nodes reachable from `start` through online nodes and conducting edges.
// A reachable node is joined to `start` by a simple live path.
std::vector<bool> live_reach(const Adjacency& adj, const PowerState& s, std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  if (!s.online[start]) return seen;
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    for (const auto& [next, e] : adj[n]) {
      if (s.conducting[e] && !seen[next] && s.online[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  return seen;
}

bool reaches_generator(const PowerTopology& t, const std::vector<bool>& reach) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (reach[i] && t.nodes[i].kind == Kind::Generator) return true;
  return false;
}

std::size_t require_node(const PowerTopology& t, std::string_view name) {
  auto i = t.node_index(name);
  if (!i) throw InputError("unknown component '" + std::string(name) + "'");
  return *i;
}

}  // namespace

bool live_path(const PowerTopology& t, const PowerState& s, std::string_view a, std::string_view b) {
  const auto ia = require_node(t, a);
  const auto ib = require_node(t, b);
  return live_reach(adjacency(t), s, ia)[ib];
}

bool live_path(const PowerTopology& t, const HealthState& h, const ContactorState& c, std::string_view a,
               std::string_view b) {
  return live_path(t, make_state(t, h, c), a, b);
}

bool bus_status(const PowerTopology& t, const PowerState& s, std::string_view bus) {
  return reaches_generator(t, live_reach(adjacency(t), s, require_node(t, bus)));
}

bool bus_status(const PowerTopology& t, const HealthState& h, const ContactorState& c, std::string_view bus) {
  return bus_status(t, make_state(t, h, c), bus);
}

// ---------------------------------------------------------------- partition

Partition partition_from_json(const io::Json& doc) {
  if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_array())
    throw InputError("partition: expected {\"groups\": [...]}");
  Partition p;
  for (const auto& g : doc["groups"]) {
    Group group{ident(g, "name", "partition group"), {}};
    if (!g.contains("nodes") || !g["nodes"].is_array())
      throw InputError("partition group '" + group.name + "': missing 'nodes'");
    for (const auto& n : g["nodes"]) {
      if (!n.is_string()) throw InputError("partition group '" + group.name + "': nodes must be names");
      group.nodes.push_back(n.get<std::string>());
    }
    p.push_back(std::move(group));
  }
  return p;
}

Partition load_partition(const std::filesystem::path& path) {
  try {
    return partition_from_json(io::read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Partition default_partition(const PowerTopology& t) {
  UnionFind uf(t.nodes.size());
  for (const auto& e : t.edges) {
    if (std::find(t.feeders.begin(), t.feeders.end(), e.name) != t.feeders.end()) continue;
    uf.unite(*t.node_index(e.a), *t.node_index(e.b));
  }
  Partition p;
  std::map<std::size_t, std::size_t> root_to_group;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto r = uf.find(i);
    auto [it, fresh] = root_to_group.emplace(r, p.size());
    if (fresh) p.push_back({"S" + std::to_string(p.size()), {}});
    p[it->second].nodes.push_back(t.nodes[i].name);
  }
  return p;
}

// -------------------------------------------------------------- compilation

namespace {

struct GroupPlan {
  std::string name;
  std::vector<std::size_t> nodes;            // topology node indices, declaration order
  std::vector<std::size_t> internal_edges;   // topology edge indices
  std::vector<std::size_t> feeds_in;         // indices into CompiledSystem::feeds
  std::vector<std::size_t> feeds_out;
  bool has_generator = false;
};

BooleanSystem build_group_system(const PowerTopology& t, const GroupPlan& plan, const std::vector<Feed>& feeds,
                                 std::map<std::string, std::pair<std::string, std::string>>& coupling) {
  BooleanSystem sys;
  sys.name = plan.name;
  std::map<std::size_t, std::size_t> local;  // topology node -> local index
  for (auto n : plan.nodes) local.emplace(n, local.size());

  std::vector<int> edge_control;  // per internal edge: control position or -1
  for (auto e : plan.internal_edges) {
    if (t.edges[e].contactor) {
      edge_control.push_back(static_cast<int>(sys.controls.size()));
      sys.controls.add(t.edges[e].name);
    } else {
      edge_control.push_back(-1);
    }
  }
  std::vector<int> node_health(plan.nodes.size(), -1);  // env position or -1
  for (std::size_t k = 0; k < plan.nodes.size(); ++k) {
    if (t.nodes[plan.nodes[k]].has_health()) {
      node_health[k] = static_cast<int>(sys.env_inputs.size());
      sys.env_inputs.add(t.nodes[plan.nodes[k]].name);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> entries;  // (local node, env position)
  for (auto f : plan.feeds_in) {
    entries.emplace_back(local.at(*t.node_index(feeds[f].to_node)), sys.env_inputs.size());
    sys.env_inputs.add(feeds[f].input);
  }

  std::vector<std::size_t> buses;
  std::vector<std::size_t> generators;
  std::vector<std::size_t> ac_generators;
  for (std::size_t k = 0; k < plan.nodes.size(); ++k) {
    const auto& c = t.nodes[plan.nodes[k]];
    if (c.kind == Kind::Bus) buses.push_back(k);
    if (c.kind == Kind::Generator) {
      generators.push_back(k);
      if (c.current == Current::AC) ac_generators.push_back(k);
    }
  }
  for (auto b : buses) sys.outputs.add(t.nodes[plan.nodes[b]].name);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ac_generators.size(); ++i) {
    for (std::size_t j = i + 1; j < ac_generators.size(); ++j) {
      const auto& g1 = t.nodes[plan.nodes[ac_generators[i]]].name;
      const auto& g2 = t.nodes[plan.nodes[ac_generators[j]]].name;
      const auto name = "ac_" + g1 + "_" + g2;
      if (!sys.outputs.add(name)) throw InputError("coupling output '" + name + "' collides with another name");
      coupling.emplace(name, std::make_pair(g1, g2));
      pairs.emplace_back(ac_generators[i], ac_generators[j]);
    }
  }
  std::vector<std::size_t> exits;
  for (auto f : plan.feeds_out) {
    exits.push_back(local.at(*t.node_index(feeds[f].from_node)));
    sys.outputs.add(feeds[f].link);
  }

  const auto scope = sys.input_scope();
  if (scope.size() > kMaxScope)
    throw InputError("subsystem '" + plan.name + "' has too many inputs (" + std::to_string(scope.size()) + ")");
  const auto n_env = sys.env_inputs.size();
  const auto n_ctl = sys.controls.size();
  const auto rows = std::uint64_t{1} << scope.size();
  std::vector<BoolFunc::Table> tables(sys.outputs.size(), BoolFunc::Table(rows));

  const auto n_nodes = plan.nodes.size();
  std::vector<bool> online(n_nodes);
  std::vector<bool> powered_root(n_nodes);
  for (std::uint64_t row = 0; row < rows; ++row) {
    const auto env = row & ((std::uint64_t{1} << n_env) - 1);
    const auto ctl = row >> n_env;
    auto env_bit = [&](std::size_t pos) { return ((env >> (n_env - 1 - pos)) & 1U) != 0; };
    for (std::size_t k = 0; k < n_nodes; ++k) online[k] = node_health[k] < 0 || env_bit(node_health[k]);

    UnionFind uf(n_nodes);
    for (std::size_t i = 0; i < plan.internal_edges.size(); ++i) {
      const auto& e = t.edges[plan.internal_edges[i]];
      const int c = edge_control[i];
      if (c >= 0 && !((ctl >> (n_ctl - 1 - static_cast<std::size_t>(c))) & 1U)) continue;
      const auto a = local.at(*t.node_index(e.a));
      const auto b = local.at(*t.node_index(e.b));
      if (online[a] && online[b]) uf.unite(a, b);
    }
    std::fill(powered_root.begin(), powered_root.end(), false);
    for (auto g : generators)
      if (online[g]) powered_root[uf.find(g)] = true;
    for (const auto& [node, pos] : entries)
      if (online[node] && env_bit(pos)) powered_root[uf.find(node)] = true;

    std::size_t out = 0;
    for (auto b : buses) {
      if (online[b] && powered_root[uf.find(b)]) tables[out].set(row);
      ++out;
    }
    for (const auto& [g1, g2] : pairs) {
      if (online[g1] && online[g2] && uf.find(g1) == uf.find(g2)) tables[out].set(row);
      ++out;
    }
    for (auto x : exits) {
      if (online[x] && powered_root[uf.find(x)]) tables[out].set(row);
      ++out;
    }
  }
  for (auto& tab : tables) sys.output_funcs.push_back(BoolFunc::from_table(scope, std::move(tab)));
  return sys;
}

}  // namespace

CompiledSystem compile_to_network(const PowerTopology& t, const std::optional<Partition>& partition) {
  CompiledSystem out;
  out.groups = partition ? *partition : default_partition(t);
  const auto& groups = out.groups;

  // Every node in exactly one group.
  std::vector<std::optional<std::size_t>> group_of(t.nodes.size());
  std::set<std::string> group_names;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!is_identifier(groups[g].name) || !group_names.insert(groups[g].name).second)
      throw InputError("partition: invalid or duplicate group name '" + groups[g].name + "'");
    if (groups[g].nodes.empty()) throw InputError("partition: group '" + groups[g].name + "' is empty");
    for (const auto& n : groups[g].nodes) {
      auto i = t.node_index(n);
      if (!i) throw InputError("partition: unknown component '" + n + "'");
      if (group_of[*i]) throw InputError("partition: component '" + n + "' appears in two groups");
      group_of[*i] = g;
    }
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (!group_of[i]) throw InputError("partition: component '" + t.nodes[i].name + "' is not in any group");

  std::vector<GroupPlan> plans(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) plans[g].name = groups[g].name;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    plans[*group_of[i]].nodes.push_back(i);
    if (t.nodes[i].kind == Kind::Generator) plans[*group_of[i]].has_generator = true;
  }

  // Crossing links must be solid and form a forest over the groups.
  std::vector<std::size_t> crossing;
  UnionFind group_uf(groups.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto ga = *group_of[*t.node_index(t.edges[e].a)];
    const auto gb = *group_of[*t.node_index(t.edges[e].b)];
    if (ga == gb) {
      plans[ga].internal_edges.push_back(e);
      continue;
    }
    if (t.edges[e].contactor)
      throw InputError("partition: contactor '" + t.edges[e].name + "' connects two groups");
    if (!group_uf.unite(ga, gb))
      throw InputError("partition: link '" + t.edges[e].name + "' closes a cycle between groups");
    crossing.push_back(e);
  }

  // Orient links away from the (single) generating group of each component.
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t g = 0; g < groups.size(); ++g) components[group_uf.find(g)].push_back(g);
  std::vector<std::size_t> depth(groups.size(), 0);
  for (const auto& [root, members] : components) {
    std::optional<std::size_t> source;
    for (auto g : members) {
      if (!plans[g].has_generator) continue;
      if (source)
        throw InputError("partition: groups '" + groups[*source].name + "' and '" + groups[g].name +
                         "' both hold generators but are linked");
      source = g;
    }
    const auto start = source.value_or(members.front());
    std::vector<bool> seen(groups.size(), false);
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto g = queue[qi];
      for (auto e : crossing) {
        const auto ga = *group_of[*t.node_index(t.edges[e].a)];
        const auto gb = *group_of[*t.node_index(t.edges[e].b)];
        const auto other = ga == g ? gb : gb == g ? ga : g;
        if (other == g || seen[other]) continue;
        seen[other] = true;
        depth[other] = depth[g] + 1;
        queue.push_back(other);
      }
    }
  }

  std::set<std::string> taken;
  for (const auto& n : t.nodes) taken.insert(n.name);
  for (const auto& e : t.edges) taken.insert(e.name);
  for (auto e : crossing) {
    const auto& edge = t.edges[e];
    const auto ga = *group_of[*t.node_index(edge.a)];
    const auto gb = *group_of[*t.node_index(edge.b)];
    const bool forward = depth[ga] < depth[gb];
    Feed f;
    f.link = edge.name;
    f.input = edge.name + "_in";
    if (taken.count(f.input)) throw InputError("feed input name '" + f.input + "' collides with another name");
    f.from_group = groups[forward ? ga : gb].name;
    f.from_node = forward ? edge.a : edge.b;
    f.to_group = groups[forward ? gb : ga].name;
    f.to_node = forward ? edge.b : edge.a;
    plans[forward ? ga : gb].feeds_out.push_back(out.feeds.size());
    plans[forward ? gb : ga].feeds_in.push_back(out.feeds.size());
    out.feeds.push_back(std::move(f));
  }

  for (const auto& plan : plans)
    out.network.subsystems.push_back(build_group_system(t, plan, out.feeds, out.coupling));
  for (const auto& f : out.feeds) out.network.wiring.push_back({f.from_group, f.link, f.to_group, f.input});
  require_well_posed(out.network);

  // Contract.
  const auto ext = out.network.external_inputs();
  const auto outs = out.network.all_outputs();
  // Source clauses follow the physical areas between feeders, so every
  // partition of the same topology gets the same contract.
  BoolFunc assumption = BoolFunc::constant(ext, true);
  for (const auto& area : default_partition(t)) {
    for (auto kind : {Kind::Generator, Kind::Rectifier, Kind::Transformer}) {
      BoolFunc clause = BoolFunc::constant({}, false);
      bool present = false;
      for (const auto& n : area.nodes) {
        if (t.node(n).kind != kind) continue;
        clause = clause | BoolFunc::variable(n);
        present = true;
      }
      if (present) assumption = assumption & clause;
    }
  }
  BoolFunc guarantee = BoolFunc::constant(outs, true);
  for (const auto& n : t.nodes)
    if (n.kind == Kind::Bus) guarantee = guarantee & BoolFunc::variable(n.name);
  for (const auto& [name, pair] : out.coupling) guarantee = guarantee & !BoolFunc::variable(name);
  out.contract = {assumption.extend(ext), guarantee.extend(outs)};
  return out;
}

}  // namespace bnsynth::eps

namespace bnsynth::eps {

FaithfulnessReport check_faithfulness(const PowerTopology& t, const CompiledSystem& compiled, std::size_t max_bits) {
  FaithfulnessReport r;
  const auto health = t.health_components();
  const auto contactors = t.contactors();
  if (health.size() + contactors.size() > max_bits) return r;
  r.checked = true;

  NetworkEvaluator ev(compiled.network);
  // Topology bit order -> network variable order.
  const IndexMap to_external(VariableSet(health), ev.external_inputs());
  const IndexMap to_controls(VariableSet(contactors), ev.controls());
  if (ev.external_inputs().size() != health.size() || ev.controls().size() != contactors.size())
    throw NetworkError("compiled network does not match the topology's health bits and contactors");

  struct Check {
    std::size_t slot;
    std::size_t a;
    std::optional<std::size_t> b;  // coupling pair; bus check when empty
  };
  std::vector<Check> checks;
  const auto n_out = ev.outputs().size();
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].kind == Kind::Bus) checks.push_back({*ev.outputs().index_of(t.nodes[i].name), i, std::nullopt});
  for (const auto& [name, pair] : compiled.coupling)
    checks.push_back({*ev.outputs().index_of(name), *t.node_index(pair.first), *t.node_index(pair.second)});

  const auto adj = adjacency(t);
  const auto n_health = std::uint64_t{1} << health.size();
  const auto n_ctl = std::uint64_t{1} << contactors.size();
  for (std::uint64_t h = 0; h < n_health; ++h) {
    const auto ext = to_external(h);
    for (std::uint64_t c = 0; c < n_ctl; ++c) {
      const auto state = make_state(t, h, c);
      const auto y = ev.evaluate_open(ext, to_controls(c));
      ++r.states;
      for (const auto& chk : checks) {
        const auto reach = live_reach(adj, state, chk.a);
        const bool expected = chk.b ? bool(reach[*chk.b]) : reaches_generator(t, reach);
        const bool compiled_bit = ((y >> (n_out - 1 - chk.slot)) & 1U) != 0;
        if (expected == compiled_bit) continue;
        r.holds = false;
        r.mismatch = "output '" + ev.outputs()[chk.slot] + "' is " + (compiled_bit ? "1" : "0") +
                     " but live-path semantics give " + (expected ? "1" : "0") + " at health " +
                     Valuation::from_index(VariableSet(health), h).bit_string() + ", contactors " +
                     Valuation::from_index(VariableSet(contactors), c).bit_string();
        return r;
      }
    }
  }
  return r;
}

}  // namespace bnsynth::eps
