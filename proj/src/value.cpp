#include "nps/value.hpp"

#include <algorithm>
#include <functional>

namespace nps {

std::string token_name(const Token& t) {
  switch (t.cls) {
    case TokenClass::Digits: return "Digits";
    case TokenClass::Alphabets: return "Alphabets";
    case TokenClass::Lowercase: return "Lowercase";
    case TokenClass::Uppercase: return "Uppercase";
    case TokenClass::Whitespace: return "Whitespace";
    case TokenClass::Literal: {
      std::string out = "'";
      if (t.literal == U'\'' || t.literal == U'\\') out.push_back('\\');
      out += utf8_encode(std::u32string(1, t.literal));
      out.push_back('\'');
      return out;
    }
  }
  return "?";
}

std::string to_string(const Value& v) {
  if (const auto* s = as_str(v)) {
    std::string out = "\"";
    for (char c : *s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('"');
    return out;
  }
  if (const auto* i = as_int(v)) return std::to_string(*i);
  if (const auto* d = as_dir(v)) return *d == Dir::Start ? "Start" : "End";
  return token_name(*as_token(v));
}

std::size_t ValueHash::operator()(const Value& v) const {
  std::size_t seed = v.index();
  if (const auto* s = as_str(v)) {
    seed = hash_combine(seed, std::hash<std::string>()(*s));
  } else if (const auto* i = as_int(v)) {
    seed = hash_combine(seed, std::hash<std::int64_t>()(*i));
  } else if (const auto* d = as_dir(v)) {
    seed = hash_combine(seed, static_cast<std::size_t>(*d));
  } else {
    const Token& t = *as_token(v);
    seed = hash_combine(seed, static_cast<std::size_t>(t.cls));
    seed = hash_combine(seed, static_cast<std::size_t>(t.literal));
  }
  return seed;
}

std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  while (i < s.size()) {
    unsigned char b0 = byte(i);
    std::size_t need = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xe0) == 0xc0) {
      need = 1;
      cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
      need = 2;
      cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
      need = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back(b0);  // stray byte: keep it as-is
      ++i;
      continue;
    }
    if (need > 0 && i + need >= s.size()) {  // truncated sequence
      out.push_back(b0);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k <= need; ++k) {
      if ((byte(i + k) & 0xc0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (byte(i + k) & 0x3f);
    }
    if (!ok) {
      out.push_back(b0);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += need + 1;
  }
  return out;
}

std::string utf8_encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xc0) != 0x80) ++n;
  return n;
}

void Env::set(std::string name, Value v) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), name,
                             [](const auto& p, const std::string& n) { return p.first < n; });
  if (it != bindings_.end() && it->first == name) {
    it->second = std::move(v);
  } else {
    bindings_.insert(it, {std::move(name), std::move(v)});
  }
}

const Value* Env::find(std::string_view name) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), name,
                             [](const auto& p, std::string_view n) { return p.first < n; });
  if (it != bindings_.end() && it->first == name) return &it->second;
  return nullptr;
}

const Value& Env::lookup(std::string_view name) const {
  const Value* v = find(name);
  if (!v) throw UnboundVariable(std::string(name));
  return *v;
}

std::size_t EnvHash::operator()(const Env& e) const {
  std::size_t seed = e.bindings().size();
  for (const auto& [k, v] : e.bindings()) {
    seed = hash_combine(seed, std::hash<std::string>()(k));
    seed = hash_combine(seed, ValueHash()(v));
  }
  return seed;
}

}  // namespace nps
