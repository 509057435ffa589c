#include "nps/objective.hpp"

#include <array>
#include <cstdlib>

namespace nps {

CostTable CostTable::unit(const Grammar& g) {
  CostTable t;
  for (SymbolId s = 0; s < g.symbols().size(); ++s)
    if (g.is_terminal(s)) t.terminal_cost[g.symbol(s).name] = 1.0;
  for (const Builtin& b : g.builtins()) t.func_cost[b.name] = 1.0;
  return t;
}

namespace {

double lookup(const std::map<std::string, double>& m, const std::string& name,
              const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw ObjectiveError(std::string("no cost entry for ") + kind + " " + name);
  if (it->second < 0) throw ObjectiveError(std::string("negative cost for ") + kind + " " + name);
  return it->second;
}

}  // namespace

Weight cost(const Program& p, const CostTable& t) {
  if (p.is_leaf()) return Weight::finite(lookup(t.terminal_cost, p.head(), "terminal"));
  double sum = lookup(t.func_cost, p.head(), "function");
  for (const Program& c : p.children()) sum += cost(c, t).value();
  return Weight::finite(sum);
}

std::string to_string(const ObjectiveValue& v) {
  if (v.is_scalar()) return to_string(v.scalar_value());
  auto [l, c] = v.lex_value();
  return "(" + to_string(l) + ", " + to_string(c) + ")";
}

Objective lexicographic() {
  return {"lex", [](Weight l, Weight c) { return ObjectiveValue::lex_pair(l, c); }};
}

Objective tradeoff(double lambda) {
  if (!(lambda > 0)) throw ObjectiveError("tradeoff requires a positive lambda");
  return {"tradeoff:" + to_string(Weight::finite(lambda)),
          [lambda](Weight l, Weight c) { return ObjectiveValue::scalar(l + lambda * c); }};
}

std::optional<Objective> objective_by_name(const std::string& name) {
  if (name == "lex") return lexicographic();
  const std::string prefix = "tradeoff:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string num = name.substr(prefix.size());
    char* end = nullptr;
    double lambda = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size() || !(lambda > 0)) return std::nullopt;
    return tradeoff(lambda);
  }
  return std::nullopt;
}

void check_monotone(const Objective& u) {
  const std::array<Weight, 5> losses = {Weight::finite(0), Weight::finite(0.5), Weight::finite(1),
                                        Weight::finite(42), Weight::infinity()};
  const std::array<Weight, 6> comps = {Weight::finite(0),  Weight::finite(0.1),
                                       Weight::finite(1),  Weight::finite(2),
                                       Weight::finite(10), Weight::finite(1000)};
  for (const Weight& l : losses) {
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
      ObjectiveValue lo = u(l, comps[i]);
      ObjectiveValue hi = u(l, comps[i + 1]);
      if (!(lo <= hi))
        throw ObjectiveError("objective " + u.name + " is not monotone in complexity");
    }
  }
}

}  // namespace nps
