#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nps/dsl.hpp"
#include "nps/value.hpp"

namespace nps {

struct AutomatonError : std::runtime_error {
  explicit AutomatonError(const std::string& what) : std::runtime_error(what) {}
};

// Public identity of a state: grammar symbol name plus the vector of concrete
// values the state computes, one per example the automaton ranges over.
struct StateId {
  std::string symbol;
  std::vector<Value> values;
  friend bool operator==(const StateId&, const StateId&) = default;
};
std::string to_string(const StateId& q);

struct BuildOptions {
  // Start-symbol string states whose value exceeds the example's output
  // length by more than this many characters are dropped while building.
  int len_slack = 1;
};

// Hash-consed value storage; states refer to values by dense id.
class ValuePool {
 public:
  ValuePool() = default;
  // Copies must re-point the id table at their own map nodes.
  ValuePool(const ValuePool& o) : index_(o.index_) { rebuild(); }
  ValuePool& operator=(const ValuePool& o) {
    if (this != &o) {
      index_ = o.index_;
      rebuild();
    }
    return *this;
  }
  ValuePool(ValuePool&&) = default;
  ValuePool& operator=(ValuePool&&) = default;

  std::uint32_t intern(const Value& v);
  const Value& get(std::uint32_t id) const { return *values_.at(id); }
  std::size_t size() const { return values_.size(); }

 private:
  void rebuild() {
    values_.assign(index_.size(), nullptr);
    for (const auto& kv : index_) values_[kv.second] = &kv.first;
  }

  std::unordered_map<Value, std::uint32_t, ValueHash> index_;
  std::vector<const Value*> values_;  // stable pointers into index_
};

// Bottom-up tree automaton whose alphabet is the grammar's builtins plus its
// terminals as leaves. States are deduplicated on (symbol, value vector);
// construction order is canonical, so equal inputs give identical automata.
struct Cfta {
  struct Transition {
    std::uint32_t op = 0;  // builtin id, or num_builtins + symbol id for leaves
    std::uint32_t target = 0;
    std::vector<std::uint32_t> args;
    friend bool operator==(const Transition&, const Transition&) = default;
  };

  const Grammar* grammar = nullptr;
  int height_bound = 0;
  std::size_t width = 0;  // number of examples the value vectors cover
  ValuePool pool;
  std::vector<SymbolId> state_symbols;
  std::vector<std::uint32_t> state_values;  // width value ids per state, flat
  std::vector<Transition> transitions;
  std::vector<std::uint32_t> accepting;  // ascending state indices

  // Derived lookup tables; rebuilt by reindex().
  std::vector<std::vector<std::uint32_t>> trans_by_op;
  std::vector<std::vector<std::uint32_t>> trans_by_target;

  std::size_t num_states() const { return state_symbols.size(); }
  std::size_t num_transitions() const { return transitions.size(); }

  std::uint32_t num_ops() const;
  std::uint32_t op_of_builtin(std::uint32_t builtin_id) const { return builtin_id; }
  std::uint32_t op_of_terminal(SymbolId s) const;
  bool op_is_terminal(std::uint32_t op) const;
  std::string op_name(std::uint32_t op) const;

  std::span<const std::uint32_t> values_of(std::uint32_t state) const;
  const Value& value_at(std::uint32_t state, std::size_t coord) const;
  StateId state_id(std::uint32_t state) const;
  std::optional<std::uint32_t> find_state(const StateId& q) const;
  bool is_accepting(std::uint32_t state) const;

  // True when some bottom-up run of p ends in an accepting state.
  bool accepts(const Program& p) const;

  // Distinct accepted programs with program_size <= max_size, ordered by
  // (size, formatted text), truncated to max_count entries.
  std::vector<Program> enumerate_accepted(std::size_t max_size, std::size_t max_count) const;

  // One line per transition, "f(q1, q2) -> q" / "t -> q", plus accepting
  // states; stable across runs for equal inputs.
  std::string dump() const;

  void reindex();
};

// Automaton of all programs (within the height bound) that map env to output:
// accepting states are the start-symbol states whose value equals output.
Cfta build_cfta(const Grammar& g, const Env& env, const Value& output, int height_bound,
                const BuildOptions& opts = {});

// Product automaton: states pair componentwise and value vectors
// concatenate. Programs within the height bound are accepted exactly when
// both operands accept them; joint states only derivable above the bound are
// re-filtered, so a product equals the automaton built directly over the
// concatenated examples. Both operands must share one grammar object.
Cfta intersect(const Cfta& a, const Cfta& b);

namespace detail {
// Shared construction: states over a vector of examples, with every
// realizable start-symbol state accepting. Callers refine the accepting set.
Cfta build_states(const Grammar& g, std::span<const Env> envs, std::span<const Value> outputs,
                  int height_bound, const BuildOptions& opts);

// Product construction behind intersect(); when origin is non-null it
// receives, per product state, the (a, b) state indices it pairs.
Cfta product(const Cfta& a, const Cfta& b,
             std::vector<std::pair<std::uint32_t, std::uint32_t>>* origin);
}  // namespace detail

}  // namespace nps
