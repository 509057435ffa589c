#include "nps/weight.hpp"

#include <cstdio>

namespace nps {

std::string to_string(Weight w) {
  if (w.is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", w.value());
  return buf;
}

}  // namespace nps
