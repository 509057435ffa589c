#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "nps/loss.hpp"

namespace nps {

struct NoiseError : std::runtime_error {
  explicit NoiseError(const std::string& what) : std::runtime_error(what) {}
};

struct CyclicDelete {
  std::size_t preserve_last = 0;
};

struct DigitReplace {
  double b = 0.0;  // corruption probability per digit
  std::uint64_t seed = 0;
};

using NoiseSpec = std::variant<CyclicDelete, DigitReplace>;

// Example i among the first n - preserve_last gets the character at index
// i mod len(output_i) deleted; the trailing preserve_last rows pass through.
// All corrupted outputs must be nonempty strings.
DataSet cyclic_delete(const DataSet& data, std::size_t preserve_last);

// Each digit character of each string output is, with probability b,
// replaced by a uniform random digit (so it changes with probability
// 9b/10). Deterministic given the seed: draws come from std::mt19937_64
// seeded directly; per digit one 53-bit-mantissa uniform in [0,1) decides
// corruption, and only then a second draw modulo 10 picks the digit.
DataSet digit_replace(const DataSet& data, double b, std::uint64_t seed);

DataSet apply_noise(const DataSet& data, const NoiseSpec& spec);
std::string noise_name(const NoiseSpec& spec);

}  // namespace nps
