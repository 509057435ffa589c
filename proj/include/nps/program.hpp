#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nps/grammar.hpp"

namespace nps {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parse tree: a leaf names a terminal symbol, an inner node names a builtin
// function applied to the children.
class Program {
 public:
  Program() : head_(), leaf_(true) {}
  static Program leaf(std::string terminal) { return Program(std::move(terminal), {}, true); }
  static Program node(std::string func, std::vector<Program> children) {
    return Program(std::move(func), std::move(children), false);
  }

  bool is_leaf() const { return leaf_; }
  const std::string& head() const { return head_; }
  const std::vector<Program>& children() const { return children_; }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  Program(std::string head, std::vector<Program> children, bool leaf)
      : head_(std::move(head)), children_(std::move(children)), leaf_(leaf) {}
  std::string head_;
  std::vector<Program> children_;
  bool leaf_;
};

// Number of parse-tree nodes.
std::size_t program_size(const Program& p);

// Canonical S-expression: leaves print their terminal name verbatim, nodes
// print "(func child ...)" with single spaces.
std::string format_program(const Program& p);

// Inverse of format_program for programs over g; validates that leaves name
// terminals and heads name builtins with matching arity.
Program parse_program(std::string_view text, const Grammar& g);

// Canonical double-quoted atom for a raw string (used as terminal names for
// string constants so that formatted programs round-trip).
std::string quoted_atom(std::string_view raw);
// Canonical single-quoted atom for one character (literal-token terminals).
std::string char_atom(char32_t c);

}  // namespace nps
