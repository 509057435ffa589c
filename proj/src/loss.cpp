#include "nps/loss.hpp"

#include <algorithm>

namespace nps {

Weight zero_one(const Value& o, const Value& c) {
  return o == c ? Weight::finite(0) : Weight::finite(1);
}

Weight zero_inf(const Value& o, const Value& c) {
  return o == c ? Weight::finite(0) : Weight::infinity();
}

Weight dl(const Value& a, const Value& b) {
  const auto* sa = as_str(a);
  const auto* sb = as_str(b);
  if (!sa || !sb) throw LossError("edit-distance loss requires string values");
  std::u32string u = utf8_decode(*sa);
  std::u32string v = utf8_decode(*sb);
  const std::size_t n = u.size(), m = v.size();
  // d[i][j]: distance between u[:i] and v[:j].
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = d[i - 1][j - 1] + (u[i - 1] == v[j - 1] ? 0 : 1);
      std::size_t del = d[i - 1][j] + 1;
      std::size_t ins = d[i][j - 1] + 1;
      std::size_t best = std::min({sub, del, ins});
      if (i > 1 && j > 1 && u[i - 1] == v[j - 2] && u[i - 2] == v[j - 1])
        best = std::min(best, d[i - 2][j - 2] + 1);
      d[i][j] = best;
    }
  }
  return Weight::finite(static_cast<double>(d[n][m]));
}

Weight one_delete(const Value& program_output, const Value& data_output) {
  if (program_output == data_output) return Weight::finite(0);
  const auto* sp = as_str(program_output);
  const auto* sd = as_str(data_output);
  if (!sp || !sd) return Weight::infinity();
  std::u32string u = utf8_decode(*sp);
  std::u32string v = utf8_decode(*sd);
  if (u.size() != v.size() + 1) return Weight::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::u32string del = u;
    del.erase(i, 1);
    if (del == v) return Weight::finite(1);
  }
  return Weight::infinity();
}

Weight n_substitution(const Value& program_output, const Value& data_output) {
  const auto* sp = as_str(program_output);
  const auto* sd = as_str(data_output);
  if (!sp || !sd) return Weight::infinity();
  std::u32string u = utf8_decode(*sp);
  std::u32string v = utf8_decode(*sd);
  if (u.size() != v.size()) return Weight::infinity();
  std::size_t diff = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) ++diff;
  return Weight::finite(static_cast<double>(diff));
}

Weight squared_error(const Value& o, const Value& c) {
  const auto* a = as_int(o);
  const auto* b = as_int(c);
  if (!a || !b) throw LossError("squared-error loss requires integer values");
  double diff = static_cast<double>(*b) - static_cast<double>(*a);
  return Weight::finite(diff * diff);
}

PerExampleLoss zero_one_loss() { return {"01", zero_one}; }
PerExampleLoss zero_inf_loss() { return {"0inf", zero_inf}; }
PerExampleLoss dl_loss() { return {"dl", dl}; }

PerExampleLoss one_delete_loss() {
  // The loss is defined on (program output, data output); the engine calls
  // losses as (expected, produced), so flip the arguments.
  return {"1del", [](const Value& o, const Value& c) { return one_delete(c, o); }};
}

PerExampleLoss n_substitution_loss() {
  return {"nsub", [](const Value& o, const Value& c) { return n_substitution(c, o); }};
}

PerExampleLoss squared_error_loss() { return {"sq", squared_error}; }

PerExampleLoss loss_by_name(std::string_view name) {
  if (name == "01") return zero_one_loss();
  if (name == "0inf") return zero_inf_loss();
  if (name == "dl") return dl_loss();
  if (name == "1del") return one_delete_loss();
  if (name == "nsub") return n_substitution_loss();
  throw LossError("unknown loss: " + std::string(name));
}

Weight dataset_loss(const Grammar& g, const Program& p, const DataSet& data,
                    const PerExampleLoss& L) {
  Weight total = Weight::finite(0);
  for (const Example& ex : data.examples) {
    std::optional<Value> out = eval(g, p, ex.input);
    total += out ? L(ex.output, *out) : Weight::infinity();
  }
  return total;
}

}  // namespace nps
