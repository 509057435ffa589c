#include "nps/program.hpp"

#include <cctype>

namespace nps {

std::size_t program_size(const Program& p) {
  std::size_t n = 1;
  for (const Program& c : p.children()) n += program_size(c);
  return n;
}

std::string quoted_atom(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string char_atom(char32_t c) {
  std::string out = "'";
  if (c == U'\'' || c == U'\\') out.push_back('\\');
  out += utf8_encode(std::u32string(1, c));
  out.push_back('\'');
  return out;
}

static void format_into(const Program& p, std::string& out) {
  if (p.is_leaf()) {
    out += p.head();
    return;
  }
  out.push_back('(');
  out += p.head();
  for (const Program& c : p.children()) {
    out.push_back(' ');
    format_into(c, out);
  }
  out.push_back(')');
}

std::string format_program(const Program& p) {
  std::string out;
  format_into(p, out);
  return out;
}

namespace {

struct Tok {
  enum Kind { LParen, RParen, Atom, End } kind = End;
  std::string text;       // canonical atom name
  bool quoted = false;    // came from a "..." or '...' form
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Tok next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) return {Tok::End, "", false, i_};
    std::size_t at = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      return {Tok::LParen, "(", false, at};
    }
    if (c == ')') {
      ++i_;
      return {Tok::RParen, ")", false, at};
    }
    if (c == '"') return lex_quoted(at);
    if (c == '\'') return lex_char(at);
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"' && s_[i_] != '\'')
      ++i_;
    return {Tok::Atom, std::string(s_.substr(start, i_ - start)), false, at};
  }

 private:
  Tok lex_quoted(std::size_t at) {
    ++i_;  // opening quote
    std::string raw;
    while (i_ < s_.size() && s_[i_] != '"') {
      char c = s_[i_];
      if (c == '\\') {
        if (i_ + 1 >= s_.size()) throw ParseError("dangling escape at offset " + std::to_string(i_));
        char e = s_[i_ + 1];
        switch (e) {
          case 'n': raw.push_back('\n'); break;
          case 't': raw.push_back('\t'); break;
          case 'r': raw.push_back('\r'); break;
          case '"': raw.push_back('"'); break;
          case '\\': raw.push_back('\\'); break;
          default: throw ParseError(std::string("unknown escape \\") + e);
        }
        i_ += 2;
      } else {
        raw.push_back(c);
        ++i_;
      }
    }
    if (i_ >= s_.size()) throw ParseError("unterminated string atom at offset " + std::to_string(at));
    ++i_;  // closing quote
    return {Tok::Atom, quoted_atom(raw), true, at};
  }

  Tok lex_char(std::size_t at) {
    ++i_;  // opening quote
    if (i_ >= s_.size()) throw ParseError("unterminated character atom");
    std::string raw;
    if (s_[i_] == '\\') {
      if (i_ + 1 >= s_.size()) throw ParseError("dangling escape in character atom");
      raw.push_back(s_[i_ + 1]);
      i_ += 2;
    } else {
      // one UTF-8 encoded code point
      raw.push_back(s_[i_]);
      ++i_;
      while (i_ < s_.size() && (static_cast<unsigned char>(s_[i_]) & 0xc0) == 0x80) {
        raw.push_back(s_[i_]);
        ++i_;
      }
    }
    if (i_ >= s_.size() || s_[i_] != '\'')
      throw ParseError("unterminated character atom at offset " + std::to_string(at));
    ++i_;
    std::u32string cps = utf8_decode(raw);
    if (cps.size() != 1) throw ParseError("character atom must hold one character");
    return {Tok::Atom, char_atom(cps[0]), true, at};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const Grammar& g) : lex_(text), g_(g) { advance(); }

  Program parse() {
    Program p = expr();
    if (cur_.kind != Tok::End) throw ParseError("trailing input at offset " + std::to_string(cur_.pos));
    return p;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  Program expr() {
    if (cur_.kind == Tok::Atom) {
      std::string name = cur_.text;
      auto sym = g_.find_symbol(name);
      if (!sym || !g_.is_terminal(*sym))
        throw ParseError("unknown terminal '" + name + "' at offset " + std::to_string(cur_.pos));
      advance();
      return Program::leaf(std::move(name));
    }
    if (cur_.kind != Tok::LParen) throw ParseError("expected '(' or atom at offset " + std::to_string(cur_.pos));
    advance();
    if (cur_.kind != Tok::Atom || cur_.quoted)
      throw ParseError("expected function name at offset " + std::to_string(cur_.pos));
    std::string func = cur_.text;
    auto b = g_.find_builtin(func);
    if (!b) throw ParseError("unknown function '" + func + "' at offset " + std::to_string(cur_.pos));
    advance();
    std::vector<Program> children;
    while (cur_.kind != Tok::RParen) {
      if (cur_.kind == Tok::End) throw ParseError("missing ')'");
      children.push_back(expr());
    }
    advance();
    if (g_.builtin(*b).arity != children.size())
      throw ParseError("function '" + func + "' expects " + std::to_string(g_.builtin(*b).arity) +
                       " arguments, got " + std::to_string(children.size()));
    return Program::node(std::move(func), std::move(children));
  }

  Lexer lex_;
  const Grammar& g_;
  Tok cur_;
};

}  // namespace

Program parse_program(std::string_view text, const Grammar& g) {
  return Parser(text, g).parse();
}

}  // namespace nps
