#pragma once

// Small builders shared across test files.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nps/dsl.hpp"
#include "nps/loss.hpp"

namespace helpers {

inline nps::Example toy_ex(std::int64_t x, std::int64_t out) {
  return {nps::Env{{"x", nps::int_value(x)}}, nps::int_value(out)};
}

inline nps::DataSet toy_data(std::vector<std::pair<std::int64_t, std::int64_t>> rows) {
  nps::DataSet d;
  for (auto& [x, out] : rows) d.examples.push_back(toy_ex(x, out));
  return d;
}

inline nps::Example str_ex(std::string in, std::string out) {
  return {nps::Env{{"x", nps::str_value(std::move(in))}}, nps::str_value(std::move(out))};
}

inline nps::DataSet str_data(std::vector<std::pair<std::string, std::string>> rows) {
  nps::DataSet d;
  for (auto& [in, out] : rows) d.examples.push_back(str_ex(std::move(in), std::move(out)));
  return d;
}

}  // namespace helpers
