#pragma once

// Boolean-valued functions over named variables, stored as explicit truth
// tables over a declared, ordered scope.
//
// Valuation indexing: for a scope (v0, v1, ..., v{n-1}) the valuation with
// bits (b0, ..., b{n-1}) has index sum_k b_k << (n-1-k). Increasing index is
// therefore lexicographic order over the scope with False < True.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace bnsynth {

/// Largest scope a truth table may span (2^26 bits = 8 MiB).
inline constexpr std::size_t kMaxScope = 26;

bool is_identifier(std::string_view name);

/// Ordered set of distinct variable names.
class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(std::initializer_list<std::string> names);
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  auto begin() const noexcept { return names_.begin(); }
  auto end() const noexcept { return names_.end(); }

  bool contains(std::string_view name) const noexcept;
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;
  /// Appends `name`; returns false if already present.
  bool add(std::string name);

  /// Ordered union: this set's order, then new names from `other`.
  VariableSet united(const VariableSet& other) const;
  VariableSet intersected(const VariableSet& other) const;
  VariableSet without(const VariableSet& other) const;
  bool subset_of(const VariableSet& other) const noexcept;
  bool disjoint(const VariableSet& other) const noexcept;
  /// Same members regardless of order.
  bool same_members(const VariableSet& other) const noexcept;

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// One assignment of truth values to every variable in a scope.
struct Valuation {
  VariableSet scope;
  std::vector<bool> bits;

  static Valuation from_index(VariableSet scope, std::uint64_t index);
  std::uint64_t index() const;
  std::optional<bool> get(std::string_view name) const;
  /// "e1=1 e2=0"
  std::string to_string() const;
  /// "10"
  std::string bit_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Moves valuation indices from one scope to another. Variables of the
/// destination that are absent from the source read as False.
class IndexMap {
 public:
  IndexMap(const VariableSet& from, const VariableSet& to);
  std::uint64_t operator()(std::uint64_t from_index) const noexcept {
    std::uint64_t out = 0;
    for (const auto& [src, dst] : moves_) out |= ((from_index >> src) & 1U) << dst;
    return out;
  }

 private:
  std::vector<std::pair<unsigned, unsigned>> moves_;
};

enum class Op { Not, And, Or, Xor, Implies };

class BoolFunc {
 public:
  using Table = boost::dynamic_bitset<std::uint64_t>;

  /// The empty-scope contradiction.
  BoolFunc();

  static BoolFunc constant(VariableSet scope, bool value);
  /// The literal `name` over the scope {name}.
  static BoolFunc variable(const std::string& name);
  static BoolFunc from_indices(VariableSet scope, std::span<const std::uint64_t> indices);
  static BoolFunc from_predicate(VariableSet scope,
                                 const std::function<bool(std::uint64_t)>& pred);
  static BoolFunc from_table(VariableSet scope, Table table);

  const VariableSet& scope() const noexcept { return scope_; }
  const Table& table() const noexcept { return table_; }
  std::size_t arity() const noexcept { return scope_.size(); }
  std::uint64_t domain_size() const noexcept { return std::uint64_t{1} << arity(); }

  bool eval(std::uint64_t index) const { return table_.test(index); }
  /// `v` must assign every variable of the scope; extra variables are ignored.
  bool eval(const Valuation& v) const;

  bool is_false() const noexcept { return table_.none(); }
  bool is_true() const noexcept { return table_.all(); }
  std::uint64_t count() const noexcept { return table_.count(); }

  /// Satisfying valuation indices in increasing (lexicographic) order.
  std::vector<std::uint64_t> indices() const;
  std::vector<Valuation> satisfying_valuations() const;

  /// Cylindrical extension to `target`, which must contain the scope.
  BoolFunc extend(const VariableSet& target) const;
  /// Existential quantification of every variable outside `keep`.
  BoolFunc project(const VariableSet& keep) const;
  /// Injective relabeling. Throws NetworkError on colliding targets.
  BoolFunc rename(const std::map<std::string, std::string>& mapping) const;
  /// Variable identification: every variable in `mapping` is replaced by its
  /// image; several variables may share an image (diagonal restriction).
  BoolFunc substitute(const std::map<std::string, std::string>& mapping) const;
  /// Variables the function actually depends on, in scope order.
  VariableSet support() const;
  bool depends_on(std::size_t var) const;

  BoolFunc operator!() const;
  friend BoolFunc operator&(const BoolFunc& a, const BoolFunc& b);
  friend BoolFunc operator|(const BoolFunc& a, const BoolFunc& b);
  friend BoolFunc operator^(const BoolFunc& a, const BoolFunc& b);

  /// Structural equality: same scope order and same satisfying set.
  friend bool operator==(const BoolFunc&, const BoolFunc&) = default;

 private:
  BoolFunc(VariableSet scope, Table table);

  VariableSet scope_;
  Table table_;
};

BoolFunc implies(const BoolFunc& a, const BoolFunc& b);
BoolFunc iff(const BoolFunc& a, const BoolFunc& b);
BoolFunc apply(Op op, std::span<const BoolFunc> operands);
BoolFunc conjoin(std::span<const BoolFunc> operands, const VariableSet& scope = {});

/// Semantic equality after aligning both functions to the union scope.
bool equivalent(const BoolFunc& a, const BoolFunc& b);
/// True iff every valuation satisfying `a` satisfies `b` (after alignment).
bool entails(const BoolFunc& a, const BoolFunc& b);

/// Parse an expression whose identifiers all belong to `scope`. The result
/// is defined over `scope` itself.
BoolFunc parse_expr(std::string_view text, const VariableSet& scope);

/// Render a function as an expression accepted by parse_expr.
std::string to_expr(const BoolFunc& f);

}  // namespace bnsynth
