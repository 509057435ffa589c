#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nps/grammar.hpp"
#include "nps/program.hpp"
#include "nps/value.hpp"

namespace nps {

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Runs p on env. Leaves evaluate through their terminal evaluator, nodes apply
// the named builtin to the children's values. Absent means some evaluator was
// undefined on its inputs; unbound variables throw UnboundVariable instead.
std::optional<Value> eval(const Grammar& g, const Program& p, const Env& env);

// True when some derivation from g's start symbol yields p.
bool conforms_to(const Grammar& g, const Program& p);

// Arithmetic grammar over one integer input:
//   n := x | n + t | n * t ;  t := 2 | 3   (start symbol n)
// The function nodes are named "+" and "×".
Grammar toy_grammar();

struct StringGrammarOptions {
  std::vector<std::string> constants;
  // Occurrence indices for token positions; nonzero, negatives count from the
  // last match backwards.
  std::vector<std::int64_t> ks = {1, 2, 3, -1, -2, -3};
  // Gap indices for constant positions; negatives count from the string end.
  std::vector<std::int64_t> const_pos_ks = {0, 1, 2, 3, -1};
  // Token class names; literal-character tokens are derived from every
  // single-character constant automatically.
  std::vector<std::string> token_classes = {"Digits", "Alphabets", "Lowercase", "Uppercase",
                                            "Whitespace"};
};

// String-transformation grammar over one string input x:
//   e := Str(f) | Concat(f, e)
//   f := ConstStr(s) | SubStr(x, p, p)
//   p := Pos(x, tau, k, d) | ConstPos(k)
//   d := Start | End
// Positions are gap indices between code points (0 .. len). A token position
// selects the k-th maximal match of tau and returns its start or end gap.
Grammar string_grammar(const StringGrammarOptions& opts);
Grammar string_grammar(std::vector<std::string> constants, std::vector<std::int64_t> ks,
                       std::vector<std::string> token_classes);

// Maximal non-overlapping runs of tok in text, left to right, as
// (start gap, end gap) pairs over code points.
std::vector<std::pair<std::size_t, std::size_t>> token_matches(const std::u32string& text,
                                                               const Token& tok);

std::optional<Token> token_class_by_name(std::string_view name);

}  // namespace nps
