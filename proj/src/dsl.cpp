#include "nps/dsl.hpp"

#include <algorithm>

namespace nps {

std::optional<Value> eval(const Grammar& g, const Program& p, const Env& env) {
  if (p.is_leaf()) {
    auto sym = g.find_symbol(p.head());
    if (!sym || !g.is_terminal(*sym)) throw EvalError("unknown terminal: " + p.head());
    return g.terminal_fn(*sym)(env);
  }
  auto b = g.find_builtin(p.head());
  if (!b) throw EvalError("unknown function: " + p.head());
  const Builtin& fn = g.builtin(*b);
  if (fn.arity != p.children().size()) throw EvalError("arity mismatch for: " + p.head());
  std::vector<Value> args;
  args.reserve(p.children().size());
  for (const Program& c : p.children()) {
    std::optional<Value> v = eval(g, c, env);
    if (!v) return std::nullopt;
    args.push_back(std::move(*v));
  }
  return fn.fn(args);
}

namespace {

// Symbols that can label a subtree: the terminal itself for leaves, plus any
// nonterminal reaching it through a unit alternative or production.
std::vector<SymbolId> possible_symbols(const Grammar& g, const Program& p) {
  std::vector<SymbolId> out;
  auto add = [&out](SymbolId s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  if (p.is_leaf()) {
    auto sym = g.find_symbol(p.head());
    if (!sym || !g.is_terminal(*sym)) return out;
    add(*sym);
    for (const auto& [lhs, t] : g.alternatives())
      if (t == *sym) add(lhs);
    return out;
  }
  auto b = g.find_builtin(p.head());
  if (!b) return out;
  std::vector<std::vector<SymbolId>> child_syms;
  child_syms.reserve(p.children().size());
  for (const Program& c : p.children()) child_syms.push_back(possible_symbols(g, c));
  for (const Production& prod : g.productions()) {
    if (prod.func != *b || prod.args.size() != p.children().size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < prod.args.size(); ++i) {
      const auto& cs = child_syms[i];
      if (std::find(cs.begin(), cs.end(), prod.args[i]) == cs.end()) {
        ok = false;
        break;
      }
    }
    if (ok) add(prod.lhs);
  }
  return out;
}

}  // namespace

bool conforms_to(const Grammar& g, const Program& p) {
  std::vector<SymbolId> syms = possible_symbols(g, p);
  return std::find(syms.begin(), syms.end(), g.start()) != syms.end();
}

Grammar toy_grammar() {
  Grammar g;
  SymbolId x = g.add_terminal("x", [](const Env& env) -> std::optional<Value> {
    const Value& v = env.lookup("x");
    if (!as_int(v)) return std::nullopt;
    return v;
  });
  SymbolId two = g.add_terminal("2", [](const Env&) { return std::optional<Value>(int_value(2)); });
  SymbolId three = g.add_terminal("3", [](const Env&) { return std::optional<Value>(int_value(3)); });
  SymbolId n = g.add_nonterminal("n");
  SymbolId t = g.add_nonterminal("t");
  g.add_builtin("+", 2, [](std::span<const Value> a) -> std::optional<Value> {
    const auto* l = as_int(a[0]);
    const auto* r = as_int(a[1]);
    if (!l || !r) return std::nullopt;
    return int_value(*l + *r);
  });
  g.add_builtin("×", 2, [](std::span<const Value> a) -> std::optional<Value> {
    const auto* l = as_int(a[0]);
    const auto* r = as_int(a[1]);
    if (!l || !r) return std::nullopt;
    return int_value(*l * *r);
  });
  g.add_alternative(n, x);
  g.add_alternative(t, two);
  g.add_alternative(t, three);
  g.add_production(n, "+", {n, t});
  g.add_production(n, "×", {n, t});
  g.set_start(n);
  g.validate();
  return g;
}

}  // namespace nps
