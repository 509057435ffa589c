#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace nps {

// Side of a token match selected by a position expression.
enum class Dir : std::uint8_t { Start, End };

enum class TokenClass : std::uint8_t {
  Digits,
  Alphabets,
  Lowercase,
  Uppercase,
  Whitespace,
  Literal,  // matches runs of one specific character
};

struct Token {
  TokenClass cls = TokenClass::Digits;
  char32_t literal = 0;  // meaningful for TokenClass::Literal only
  friend bool operator==(const Token&, const Token&) = default;
};

// Run-time value flowing through programs and automaton states. Strings are
// UTF-8; every character-level operation counts Unicode scalar values.
using Value = std::variant<std::string, std::int64_t, Dir, Token>;

inline Value str_value(std::string s) { return Value(std::move(s)); }
inline Value int_value(std::int64_t i) { return Value(i); }
inline Value dir_value(Dir d) { return Value(d); }
inline Value tok_value(Token t) { return Value(t); }

inline const std::string* as_str(const Value& v) { return std::get_if<std::string>(&v); }
inline const std::int64_t* as_int(const Value& v) { return std::get_if<std::int64_t>(&v); }
inline const Dir* as_dir(const Value& v) { return std::get_if<Dir>(&v); }
inline const Token* as_token(const Value& v) { return std::get_if<Token>(&v); }

std::string token_name(const Token& t);
// Display rendering: strings quoted, integers decimal, Start/End, token name.
std::string to_string(const Value& v);

struct ValueHash {
  std::size_t operator()(const Value& v) const;
};

// UTF-8 <-> code point helpers. Decoding is total: bytes that do not form a
// valid sequence are taken as single code points.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
std::size_t utf8_length(std::string_view s);

struct UnboundVariable : std::runtime_error {
  explicit UnboundVariable(const std::string& name)
      : std::runtime_error("unbound variable: " + name) {}
};

// Input binding for one example: variable name -> value, kept sorted by name.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<std::string, Value>> init) {
    for (auto& [k, v] : init) set(k, v);
  }

  void set(std::string name, Value v);
  const Value* find(std::string_view name) const;
  // Throws UnboundVariable; distinct from a builtin being undefined.
  const Value& lookup(std::string_view name) const;
  const std::vector<std::pair<std::string, Value>>& bindings() const { return bindings_; }

  friend bool operator==(const Env&, const Env&) = default;

 private:
  std::vector<std::pair<std::string, Value>> bindings_;
};

struct EnvHash {
  std::size_t operator()(const Env& e) const;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace nps
