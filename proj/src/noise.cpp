#include "nps/noise.hpp"

#include <random>

namespace nps {

DataSet cyclic_delete(const DataSet& data, std::size_t preserve_last) {
  if (preserve_last > data.size())
    throw NoiseError("preserve_last exceeds the dataset size");
  DataSet out = data;
  const std::size_t corrupt = data.size() - preserve_last;
  for (std::size_t i = 0; i < corrupt; ++i) {
    const std::string* s = as_str(out.examples[i].output);
    if (!s) throw NoiseError("cyclic_delete requires string outputs (row " + std::to_string(i) + ")");
    std::u32string u = utf8_decode(*s);
    if (u.empty())
      throw NoiseError("cyclic_delete cannot corrupt an empty output (row " + std::to_string(i) + ")");
    u.erase(u.begin() + static_cast<std::ptrdiff_t>(i % u.size()));
    out.examples[i].output = str_value(utf8_encode(u));
  }
  return out;
}

DataSet digit_replace(const DataSet& data, double b, std::uint64_t seed) {
  if (!(b >= 0.0 && b <= 1.0)) throw NoiseError("digit_replace probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  DataSet out = data;
  for (Example& e : out.examples) {
    const std::string* s = as_str(e.output);
    if (!s) continue;
    std::u32string u = utf8_decode(*s);
    bool touched = false;
    for (char32_t& c : u) {
      if (c < U'0' || c > U'9') continue;
      if (uniform01() < b) {
        c = U'0' + static_cast<char32_t>(rng() % 10);
        touched = true;
      }
    }
    if (touched) e.output = str_value(utf8_encode(u));
  }
  return out;
}

DataSet apply_noise(const DataSet& data, const NoiseSpec& spec) {
  if (const auto* cd = std::get_if<CyclicDelete>(&spec))
    return cyclic_delete(data, cd->preserve_last);
  const auto& dr = std::get<DigitReplace>(spec);
  return digit_replace(data, dr.b, dr.seed);
}

std::string noise_name(const NoiseSpec& spec) {
  return std::holds_alternative<CyclicDelete>(spec) ? "cyclic_delete" : "digit_replace";
}

}  // namespace nps
