#include "nps/grammar.hpp"

namespace nps {

SymbolId Grammar::add_terminal(std::string name, TerminalFn fn) {
  if (symbol_index_.count(name)) throw GrammarError("duplicate symbol: " + name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbol_index_.emplace(name, id);
  symbols_.push_back({std::move(name), SymbolKind::Terminal});
  terminal_fns_.push_back(std::move(fn));
  return id;
}

SymbolId Grammar::add_nonterminal(std::string name) {
  if (symbol_index_.count(name)) throw GrammarError("duplicate symbol: " + name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbol_index_.emplace(name, id);
  symbols_.push_back({std::move(name), SymbolKind::NonTerminal});
  terminal_fns_.emplace_back();
  ++num_nonterminals_;
  return id;
}

std::uint32_t Grammar::add_builtin(std::string name, std::size_t arity, BuiltinFn fn) {
  if (builtin_index_.count(name)) throw GrammarError("duplicate builtin: " + name);
  std::uint32_t id = static_cast<std::uint32_t>(builtins_.size());
  builtin_index_.emplace(name, id);
  builtins_.push_back({std::move(name), arity, std::move(fn)});
  return id;
}

void Grammar::add_alternative(SymbolId nonterminal, SymbolId terminal) {
  if (nonterminal >= symbols_.size() || terminal >= symbols_.size())
    throw GrammarError("alternative references unknown symbol");
  if (is_terminal(nonterminal) || !is_terminal(terminal))
    throw GrammarError("alternative must derive a terminal from a nonterminal");
  alternatives_.emplace_back(nonterminal, terminal);
}

void Grammar::add_production(SymbolId lhs, std::string_view func, std::vector<SymbolId> args) {
  auto f = find_builtin(func);
  if (!f) throw GrammarError("unknown builtin: " + std::string(func));
  if (lhs >= symbols_.size() || is_terminal(lhs))
    throw GrammarError("production lhs must be a nonterminal");
  if (builtins_[*f].arity != args.size())
    throw GrammarError("arity mismatch for builtin: " + std::string(func));
  for (SymbolId a : args)
    if (a >= symbols_.size()) throw GrammarError("production argument references unknown symbol");
  productions_.push_back({lhs, *f, std::move(args)});
}

void Grammar::set_start(SymbolId s) {
  if (s >= symbols_.size() || is_terminal(s)) throw GrammarError("start symbol must be a nonterminal");
  start_ = s;
}

SymbolId Grammar::start() const {
  if (!start_) throw GrammarError("start symbol not set");
  return *start_;
}

std::optional<SymbolId> Grammar::find_symbol(std::string_view name) const {
  auto it = symbol_index_.find(std::string(name));
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Grammar::find_builtin(std::string_view name) const {
  auto it = builtin_index_.find(std::string(name));
  if (it == builtin_index_.end()) return std::nullopt;
  return it->second;
}

const TerminalFn& Grammar::terminal_fn(SymbolId id) const {
  if (!is_terminal(id)) throw GrammarError("terminal_fn on nonterminal: " + symbols_.at(id).name);
  return terminal_fns_.at(id);
}

void Grammar::validate() const {
  start();  // throws when unset
  for (SymbolId id = 0; id < symbols_.size(); ++id)
    if (is_terminal(id) && !terminal_fns_[id])
      throw GrammarError("terminal without evaluator: " + symbols_[id].name);
  for (const auto& b : builtins_)
    if (!b.fn) throw GrammarError("builtin without evaluator: " + b.name);
}

}  // namespace nps
