#include "bnsynth/boolfunc.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bnsynth/errors.hpp"

namespace bnsynth {

bool is_identifier(std::string_view name) {
  if (name.empty() || name == "true" || name == "false") return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

// ---------------------------------------------------------------- VariableSet

VariableSet::VariableSet(std::initializer_list<std::string> names)
    : VariableSet(std::vector<std::string>(names)) {}

VariableSet::VariableSet(std::vector<std::string> names) {
  names_.reserve(names.size());
  for (auto& n : names) {
    if (!add(std::move(n))) throw InputError("duplicate variable '" + names_.back() + "'");
  }
}

bool VariableSet::contains(std::string_view name) const noexcept {
  return index_of(name).has_value();
}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool VariableSet::add(std::string name) {
  if (contains(name)) return false;
  names_.push_back(std::move(name));
  return true;
}

VariableSet VariableSet::united(const VariableSet& other) const {
  VariableSet out = *this;
  for (const auto& n : other) out.add(n);
  return out;
}

VariableSet VariableSet::intersected(const VariableSet& other) const {
  VariableSet out;
  for (const auto& n : names_)
    if (other.contains(n)) out.names_.push_back(n);
  return out;
}

VariableSet VariableSet::without(const VariableSet& other) const {
  VariableSet out;
  for (const auto& n : names_)
    if (!other.contains(n)) out.names_.push_back(n);
  return out;
}

bool VariableSet::subset_of(const VariableSet& other) const noexcept {
  return std::all_of(names_.begin(), names_.end(), [&](const auto& n) { return other.contains(n); });
}

bool VariableSet::disjoint(const VariableSet& other) const noexcept {
  return std::none_of(names_.begin(), names_.end(), [&](const auto& n) { return other.contains(n); });
}

bool VariableSet::same_members(const VariableSet& other) const noexcept {
  return size() == other.size() && subset_of(other);
}

// ------------------------------------------------------------------ Valuation

Valuation Valuation::from_index(VariableSet scope, std::uint64_t index) {
  Valuation v{std::move(scope), {}};
  const auto n = v.scope.size();
  v.bits.resize(n);
  for (std::size_t k = 0; k < n; ++k) v.bits[k] = ((index >> (n - 1 - k)) & 1U) != 0;
  return v;
}

std::uint64_t Valuation::index() const {
  std::uint64_t idx = 0;
  for (bool b : bits) idx = (idx << 1) | (b ? 1U : 0U);
  return idx;
}

std::optional<bool> Valuation::get(std::string_view name) const {
  auto i = scope.index_of(name);
  if (!i) return std::nullopt;
  return bits[*i];
}

std::string Valuation::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (k) os << ' ';
    os << scope[k] << '=' << (bits[k] ? 1 : 0);
  }
  return os.str();
}

std::string Valuation::bit_string() const {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

// ------------------------------------------------------------------- IndexMap

IndexMap::IndexMap(const VariableSet& from, const VariableSet& to) {
  const auto nf = from.size();
  const auto nt = to.size();
  for (std::size_t j = 0; j < nt; ++j) {
    if (auto i = from.index_of(to[j]))
      moves_.emplace_back(static_cast<unsigned>(nf - 1 - *i), static_cast<unsigned>(nt - 1 - j));
  }
}

// ------------------------------------------------------------------- BoolFunc

namespace {

void check_scope(const VariableSet& scope) {
  if (scope.size() > kMaxScope)
    throw Error("scope of " + std::to_string(scope.size()) + " variables exceeds the limit of " +
                std::to_string(kMaxScope));
}

}  // namespace

BoolFunc::BoolFunc() : table_(1) {}

BoolFunc::BoolFunc(VariableSet scope, Table table) : scope_(std::move(scope)), table_(std::move(table)) {}

BoolFunc BoolFunc::constant(VariableSet scope, bool value) {
  check_scope(scope);
  Table t(std::size_t{1} << scope.size());
  if (value) t.set();
  return BoolFunc(std::move(scope), std::move(t));
}

BoolFunc BoolFunc::variable(const std::string& name) {
  Table t(2);
  t.set(1);
  return BoolFunc(VariableSet{name}, std::move(t));
}

BoolFunc BoolFunc::from_indices(VariableSet scope, std::span<const std::uint64_t> indices) {
  auto f = constant(std::move(scope), false);
  for (auto i : indices) f.table_.set(i);
  return f;
}

BoolFunc BoolFunc::from_predicate(VariableSet scope, const std::function<bool(std::uint64_t)>& pred) {
  auto f = constant(std::move(scope), false);
  const auto n = f.domain_size();
  for (std::uint64_t i = 0; i < n; ++i)
    if (pred(i)) f.table_.set(i);
  return f;
}

BoolFunc BoolFunc::from_table(VariableSet scope, Table table) {
  check_scope(scope);
  if (table.size() != (std::size_t{1} << scope.size()))
    throw Error("truth table size does not match scope");
  return BoolFunc(std::move(scope), std::move(table));
}

bool BoolFunc::eval(const Valuation& v) const {
  std::uint64_t idx = 0;
  for (const auto& name : scope_) {
    auto b = v.get(name);
    if (!b) throw UnknownIdentifier(name);
    idx = (idx << 1) | (*b ? 1U : 0U);
  }
  return eval(idx);
}

std::vector<std::uint64_t> BoolFunc::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(table_.count());
  for (auto i = table_.find_first(); i != Table::npos; i = table_.find_next(i)) out.push_back(i);
  return out;
}

std::vector<Valuation> BoolFunc::satisfying_valuations() const {
  std::vector<Valuation> out;
  for (auto i : indices()) out.push_back(Valuation::from_index(scope_, i));
  return out;
}

BoolFunc BoolFunc::extend(const VariableSet& target) const {
  if (target == scope_) return *this;
  if (!scope_.subset_of(target)) throw Error("extension target does not contain the scope");
  check_scope(target);
  const IndexMap to_source(target, scope_);
  Table t(std::size_t{1} << target.size());
  const auto n = t.size();
  if (table_.all()) {
    t.set();
  } else if (table_.any()) {
    for (std::size_t i = 0; i < n; ++i)
      if (table_.test(to_source(i))) t.set(i);
  }
  return BoolFunc(target, std::move(t));
}

BoolFunc BoolFunc::project(const VariableSet& keep) const {
  if (!keep.subset_of(scope_)) throw Error("projection target is not a subset of the scope");
  if (keep == scope_) return *this;
  const IndexMap to_kept(scope_, keep);
  Table t(std::size_t{1} << keep.size());
  for (auto i = table_.find_first(); i != Table::npos; i = table_.find_next(i)) t.set(to_kept(i));
  return BoolFunc(keep, std::move(t));
}

BoolFunc BoolFunc::rename(const std::map<std::string, std::string>& mapping) const {
  std::vector<std::string> names;
  names.reserve(arity());
  for (const auto& n : scope_) {
    auto it = mapping.find(n);
    names.push_back(it == mapping.end() ? n : it->second);
  }
  VariableSet renamed;
  for (auto& n : names) {
    if (!renamed.add(n))
      throw NetworkError("renaming maps two variables onto '" + n + "'");
  }
  return BoolFunc(std::move(renamed), table_);
}

BoolFunc BoolFunc::substitute(const std::map<std::string, std::string>& mapping) const {
  VariableSet image;
  std::vector<std::size_t> position(arity());
  for (std::size_t k = 0; k < arity(); ++k) {
    auto it = mapping.find(scope_[k]);
    const auto& target = it == mapping.end() ? scope_[k] : it->second;
    image.add(target);
    position[k] = *image.index_of(target);
  }
  const auto m = image.size();
  const auto n = arity();
  return from_predicate(image, [&](std::uint64_t x) {
    std::uint64_t old = 0;
    for (std::size_t k = 0; k < n; ++k) old = (old << 1) | ((x >> (m - 1 - position[k])) & 1U);
    return table_.test(old);
  });
}

bool BoolFunc::depends_on(std::size_t var) const {
  const auto bit = std::uint64_t{1} << (arity() - 1 - var);
  const auto n = domain_size();
  for (std::uint64_t i = 0; i < n; ++i)
    if (!(i & bit) && table_.test(i) != table_.test(i | bit)) return true;
  return false;
}

VariableSet BoolFunc::support() const {
  VariableSet out;
  for (std::size_t k = 0; k < arity(); ++k)
    if (depends_on(k)) out.add(scope_[k]);
  return out;
}

BoolFunc BoolFunc::operator!() const {
  auto t = table_;
  t.flip();
  return BoolFunc(scope_, std::move(t));
}

namespace {

template <typename F>
BoolFunc combine(const BoolFunc& a, const BoolFunc& b, F op) {
  if (a.scope() == b.scope()) return BoolFunc::from_table(a.scope(), op(a.table(), b.table()));
  const auto scope = a.scope().united(b.scope());
  return BoolFunc::from_table(scope, op(a.extend(scope).table(), b.extend(scope).table()));
}

}  // namespace

BoolFunc operator&(const BoolFunc& a, const BoolFunc& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x & y; });
}

BoolFunc operator|(const BoolFunc& a, const BoolFunc& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x | y; });
}

BoolFunc operator^(const BoolFunc& a, const BoolFunc& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x ^ y; });
}

BoolFunc implies(const BoolFunc& a, const BoolFunc& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return ~x | y; });
}

BoolFunc iff(const BoolFunc& a, const BoolFunc& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return ~(x ^ y); });
}

BoolFunc apply(Op op, std::span<const BoolFunc> operands) {
  if (op == Op::Not) {
    if (operands.size() != 1) throw Error("NOT takes exactly one operand");
    return !operands.front();
  }
  if (operands.size() < 2) throw Error("binary operator needs at least two operands");
  BoolFunc acc = operands.front();
  for (const auto& f : operands.subspan(1)) {
    switch (op) {
      case Op::And: acc = acc & f; break;
      case Op::Or: acc = acc | f; break;
      case Op::Xor: acc = acc ^ f; break;
      case Op::Implies: acc = implies(acc, f); break;
      case Op::Not: break;
    }
  }
  return acc;
}

BoolFunc conjoin(std::span<const BoolFunc> operands, const VariableSet& scope) {
  BoolFunc acc = BoolFunc::constant(scope, true);
  for (const auto& f : operands) acc = acc & f;
  return acc;
}

bool equivalent(const BoolFunc& a, const BoolFunc& b) {
  if (a.scope() == b.scope()) return a.table() == b.table();
  const auto scope = a.scope().united(b.scope());
  return a.extend(scope).table() == b.extend(scope).table();
}

bool entails(const BoolFunc& a, const BoolFunc& b) {
  const auto scope = a.scope().united(b.scope());
  return a.extend(scope).table().is_subset_of(b.extend(scope).table());
}

}  // namespace bnsynth
