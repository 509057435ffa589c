#include <algorithm>
#include <unordered_set>

#include "nps/dsl.hpp"

namespace nps {

namespace {

bool in_class(char32_t c, const Token& t) {
  switch (t.cls) {
    case TokenClass::Digits: return c >= U'0' && c <= U'9';
    case TokenClass::Lowercase: return c >= U'a' && c <= U'z';
    case TokenClass::Uppercase: return c >= U'A' && c <= U'Z';
    case TokenClass::Alphabets:
      return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c >= 128;
    case TokenClass::Whitespace:
      return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
    case TokenClass::Literal: return c == t.literal;
  }
  return false;
}

// Gap index for a raw position spec: nonnegative specs address from the
// front, negative ones from one past the end (-1 is the end gap).
std::optional<std::size_t> resolve_gap(std::int64_t spec, std::size_t len) {
  if (spec >= 0) {
    if (static_cast<std::size_t>(spec) > len) return std::nullopt;
    return static_cast<std::size_t>(spec);
  }
  std::int64_t g = static_cast<std::int64_t>(len) + spec + 1;
  if (g < 0) return std::nullopt;
  return static_cast<std::size_t>(g);
}

std::optional<Value> builtin_str(std::span<const Value> a) {
  if (!as_str(a[0])) return std::nullopt;
  return a[0];
}

std::optional<Value> builtin_concat(std::span<const Value> a) {
  const auto* l = as_str(a[0]);
  const auto* r = as_str(a[1]);
  if (!l || !r) return std::nullopt;
  return str_value(*l + *r);
}

std::optional<Value> builtin_substr(std::span<const Value> a) {
  const auto* x = as_str(a[0]);
  const auto* p1 = as_int(a[1]);
  const auto* p2 = as_int(a[2]);
  if (!x || !p1 || !p2) return std::nullopt;
  std::u32string cps = utf8_decode(*x);
  auto g1 = resolve_gap(*p1, cps.size());
  auto g2 = resolve_gap(*p2, cps.size());
  if (!g1 || !g2 || *g1 > *g2) return std::nullopt;
  return str_value(utf8_encode(std::u32string_view(cps).substr(*g1, *g2 - *g1)));
}

std::optional<Value> builtin_pos(std::span<const Value> a) {
  const auto* x = as_str(a[0]);
  const auto* tok = as_token(a[1]);
  const auto* k = as_int(a[2]);
  const auto* d = as_dir(a[3]);
  if (!x || !tok || !k || !d || *k == 0) return std::nullopt;
  std::u32string cps = utf8_decode(*x);
  auto matches = token_matches(cps, *tok);
  std::int64_t idx = *k >= 1 ? *k - 1 : static_cast<std::int64_t>(matches.size()) + *k;
  if (idx < 0 || idx >= static_cast<std::int64_t>(matches.size())) return std::nullopt;
  const auto& m = matches[static_cast<std::size_t>(idx)];
  return int_value(static_cast<std::int64_t>(*d == Dir::Start ? m.first : m.second));
}

std::optional<Value> builtin_const_pos(std::span<const Value> a) {
  if (!as_int(a[0])) return std::nullopt;
  // Range checking needs the subject string; SubStr resolves the spec.
  return a[0];
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> token_matches(const std::u32string& text,
                                                               const Token& tok) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!in_class(text[i], tok)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && in_class(text[i], tok)) ++i;
    out.emplace_back(start, i);
  }
  return out;
}

std::optional<Token> token_class_by_name(std::string_view name) {
  if (name == "Digits") return Token{TokenClass::Digits, 0};
  if (name == "Alphabets") return Token{TokenClass::Alphabets, 0};
  if (name == "Lowercase") return Token{TokenClass::Lowercase, 0};
  if (name == "Uppercase") return Token{TokenClass::Uppercase, 0};
  if (name == "Whitespace") return Token{TokenClass::Whitespace, 0};
  return std::nullopt;
}

Grammar string_grammar(const StringGrammarOptions& opts) {
  if (opts.ks.empty()) throw GrammarError("string grammar requires a nonempty ks list");
  for (std::int64_t k : opts.ks)
    if (k == 0) throw GrammarError("token position indices must be nonzero");

  // Literal-character tokens come from the single-character constants.
  std::vector<Token> tokens;
  for (const std::string& name : opts.token_classes) {
    auto t = token_class_by_name(name);
    if (!t) throw GrammarError("unknown token class: " + name);
    if (std::find(tokens.begin(), tokens.end(), *t) == tokens.end()) tokens.push_back(*t);
  }
  for (const std::string& c : opts.constants) {
    std::u32string cps = utf8_decode(c);
    if (cps.size() != 1) continue;
    Token t{TokenClass::Literal, cps[0]};
    if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) tokens.push_back(t);
  }
  if (tokens.empty()) throw GrammarError("string grammar requires at least one token");

  Grammar g;
  SymbolId x = g.add_terminal("x", [](const Env& env) -> std::optional<Value> {
    const Value& v = env.lookup("x");
    if (!as_str(v)) return std::nullopt;
    return v;
  });

  SymbolId e = g.add_nonterminal("e");
  SymbolId f = g.add_nonterminal("f");
  SymbolId p = g.add_nonterminal("p");
  SymbolId s = g.add_nonterminal("s");
  SymbolId kp = g.add_nonterminal("kp");
  SymbolId kc = g.add_nonterminal("kc");
  SymbolId tau = g.add_nonterminal("tau");
  SymbolId d = g.add_nonterminal("d");

  std::unordered_set<std::string> seen;
  for (const std::string& c : opts.constants) {
    std::string name = quoted_atom(c);
    if (!seen.insert(name).second) continue;
    SymbolId t = g.add_terminal(name, [v = str_value(c)](const Env&) {
      return std::optional<Value>(v);
    });
    g.add_alternative(s, t);
  }

  // One terminal per distinct integer, shared between the two index kinds.
  std::unordered_map<std::int64_t, SymbolId> int_terms;
  auto int_terminal = [&](std::int64_t k) {
    auto it = int_terms.find(k);
    if (it != int_terms.end()) return it->second;
    SymbolId t = g.add_terminal(std::to_string(k), [v = int_value(k)](const Env&) {
      return std::optional<Value>(v);
    });
    int_terms.emplace(k, t);
    return t;
  };
  {
    std::unordered_set<std::int64_t> added;
    for (std::int64_t k : opts.ks)
      if (added.insert(k).second) g.add_alternative(kp, int_terminal(k));
    added.clear();
    for (std::int64_t k : opts.const_pos_ks)
      if (added.insert(k).second) g.add_alternative(kc, int_terminal(k));
  }

  for (const Token& t : tokens) {
    SymbolId ts = g.add_terminal(token_name(t), [v = tok_value(t)](const Env&) {
      return std::optional<Value>(v);
    });
    g.add_alternative(tau, ts);
  }

  SymbolId start_dir = g.add_terminal("Start", [](const Env&) {
    return std::optional<Value>(dir_value(Dir::Start));
  });
  SymbolId end_dir = g.add_terminal("End", [](const Env&) {
    return std::optional<Value>(dir_value(Dir::End));
  });
  g.add_alternative(d, start_dir);
  g.add_alternative(d, end_dir);

  g.add_builtin("Str", 1, builtin_str);
  g.add_builtin("Concat", 2, builtin_concat);
  g.add_builtin("ConstStr", 1, builtin_str);
  g.add_builtin("SubStr", 3, builtin_substr);
  g.add_builtin("Pos", 4, builtin_pos);
  g.add_builtin("ConstPos", 1, builtin_const_pos);

  g.add_production(e, "Str", {f});
  g.add_production(e, "Concat", {f, e});
  g.add_production(f, "ConstStr", {s});
  g.add_production(f, "SubStr", {x, p, p});
  g.add_production(p, "Pos", {x, tau, kp, d});
  g.add_production(p, "ConstPos", {kc});

  g.set_start(e);
  g.validate();
  return g;
}

Grammar string_grammar(std::vector<std::string> constants, std::vector<std::int64_t> ks,
                       std::vector<std::string> token_classes) {
  StringGrammarOptions opts;
  opts.constants = std::move(constants);
  opts.ks = std::move(ks);
  opts.token_classes = std::move(token_classes);
  return string_grammar(opts);
}

}  // namespace nps
