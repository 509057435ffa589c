#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nps/value.hpp"

namespace nps {

using SymbolId = std::uint32_t;

enum class SymbolKind : std::uint8_t { Terminal, NonTerminal };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Terminal;
};

struct GrammarError : std::runtime_error {
  explicit GrammarError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic evaluator of a terminal on an input binding; absent means the
// terminal is undefined there.
using TerminalFn = std::function<std::optional<Value>(const Env&)>;
// Black-box function over child values; absent means undefined on the inputs.
using BuiltinFn = std::function<std::optional<Value>(std::span<const Value>)>;

struct Builtin {
  std::string name;
  std::size_t arity = 0;
  BuiltinFn fn;
};

// lhs -> func(args...); argument slots may name terminals or nonterminals.
struct Production {
  SymbolId lhs = 0;
  std::uint32_t func = 0;  // index into builtins()
  std::vector<SymbolId> args;
};

// Context-free grammar whose productions apply builtin functions. Besides
// productions, a nonterminal may list unit alternatives "s := t" that derive
// a terminal directly without adding a tree node.
class Grammar {
 public:
  SymbolId add_terminal(std::string name, TerminalFn fn);
  SymbolId add_nonterminal(std::string name);
  std::uint32_t add_builtin(std::string name, std::size_t arity, BuiltinFn fn);
  void add_alternative(SymbolId nonterminal, SymbolId terminal);
  void add_production(SymbolId lhs, std::string_view func, std::vector<SymbolId> args);
  void set_start(SymbolId s);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  bool is_terminal(SymbolId id) const { return symbols_.at(id).kind == SymbolKind::Terminal; }
  std::size_t num_nonterminals() const { return num_nonterminals_; }
  SymbolId start() const;

  std::optional<SymbolId> find_symbol(std::string_view name) const;
  std::optional<std::uint32_t> find_builtin(std::string_view name) const;

  const std::vector<Production>& productions() const { return productions_; }
  const std::vector<std::pair<SymbolId, SymbolId>>& alternatives() const { return alternatives_; }
  const std::vector<Builtin>& builtins() const { return builtins_; }
  const Builtin& builtin(std::uint32_t id) const { return builtins_.at(id); }
  const TerminalFn& terminal_fn(SymbolId id) const;

  // Checks structural invariants; throws GrammarError on violation.
  void validate() const;

 private:
  std::vector<Symbol> symbols_;
  std::vector<TerminalFn> terminal_fns_;  // parallel to symbols_, empty for nonterminals
  std::vector<Production> productions_;
  std::vector<std::pair<SymbolId, SymbolId>> alternatives_;
  std::vector<Builtin> builtins_;
  std::unordered_map<std::string, SymbolId> symbol_index_;
  std::unordered_map<std::string, std::uint32_t> builtin_index_;
  std::optional<SymbolId> start_;
  std::size_t num_nonterminals_ = 0;
};

}  // namespace nps
