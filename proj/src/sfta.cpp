#include "nps/sfta.hpp"

#include <algorithm>

namespace nps {

namespace {

// Position of state within the sorted accepting vector, or npos.
std::size_t accepting_pos(const Cfta& a, std::uint32_t state) {
  auto it = std::lower_bound(a.accepting.begin(), a.accepting.end(), state);
  if (it == a.accepting.end() || *it != state) return SIZE_MAX;
  return static_cast<std::size_t>(it - a.accepting.begin());
}

}  // namespace

Weight Sfta::weight_of(std::uint32_t state) const {
  std::size_t pos = accepting_pos(base, state);
  if (pos == SIZE_MAX) throw AutomatonError("state is not accepting");
  return weights[pos];
}

Sfta build_sfta(const Grammar& g, const Env& env, const Value& output, const PerExampleLoss& L,
                int height_bound, const BuildOptions& opts) {
  Sfta r;
  r.base = detail::build_states(g, {&env, 1}, {&output, 1}, height_bound, opts);
  r.weights.reserve(r.base.accepting.size());
  for (std::uint32_t s : r.base.accepting) r.weights.push_back(L(output, r.base.value_at(s, 0)));
  return r;
}

Sfta build_sfta_dataset(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                        int height_bound, const BuildOptions& opts, std::size_t* dedup_count) {
  if (data.empty()) throw AutomatonError("dataset construction requires a nonempty dataset");
  std::vector<Env> envs;
  std::vector<Value> outputs;
  std::size_t dropped = 0;
  for (const Example& e : data.examples) {
    if (L.name == "0inf") {
      bool dup = false;
      for (std::size_t i = 0; i < envs.size() && !dup; ++i)
        dup = envs[i] == e.input && outputs[i] == e.output;
      if (dup) {
        ++dropped;
        continue;
      }
    }
    envs.push_back(e.input);
    outputs.push_back(e.output);
  }
  if (dedup_count) *dedup_count = dropped;

  Sfta r;
  r.base = detail::build_states(g, envs, outputs, height_bound, opts);
  r.weights.reserve(r.base.accepting.size());
  for (std::uint32_t s : r.base.accepting) {
    Weight w;
    for (std::size_t i = 0; i < envs.size(); ++i) w = w + L(outputs[i], r.base.value_at(s, i));
    r.weights.push_back(w);
  }
  return r;
}

Sfta plus_intersect(const Sfta& a, const Sfta& b) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;
  Sfta r;
  r.base = detail::product(a.base, b.base, &origin);
  r.weights.reserve(r.base.accepting.size());
  for (std::uint32_t s : r.base.accepting) {
    auto [ai, bi] = origin[s];
    r.weights.push_back(a.weights[accepting_pos(a.base, ai)] +
                        b.weights[accepting_pos(b.base, bi)]);
  }
  return r;
}

Sfta slash_intersect(const Sfta& a, const Cfta& c) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;
  Sfta r;
  r.base = detail::product(a.base, c, &origin);
  r.weights.reserve(r.base.accepting.size());
  for (std::uint32_t s : r.base.accepting)
    r.weights.push_back(a.weights[accepting_pos(a.base, origin[s].first)]);
  return r;
}

Sfta prune(const Sfta& a, Weight w0) {
  Sfta r;
  r.base = a.base;
  std::vector<std::uint32_t> accept;
  for (std::size_t i = 0; i < a.base.accepting.size(); ++i) {
    if (a.weights[i] <= w0) {
      accept.push_back(a.base.accepting[i]);
      r.weights.push_back(a.weights[i]);
    }
  }
  r.base.accepting = std::move(accept);
  return r;
}

Cfta select(const Sfta& a, std::uint32_t state) {
  if (accepting_pos(a.base, state) == SIZE_MAX)
    throw AutomatonError("selection requires an accepting state");
  Cfta r = a.base;
  r.accepting = {state};
  return r;
}

Cfta select(const Sfta& a, const StateId& q) {
  auto s = a.base.find_state(q);
  if (!s) throw AutomatonError("selection requires an accepting state: no such state");
  return select(a, *s);
}

Cfta to_cfta(const Sfta& a) { return a.base; }

std::vector<std::pair<Weight, std::size_t>> weight_histogram(const Sfta& a, double tol) {
  std::vector<Weight> ws = a.weights;
  std::sort(ws.begin(), ws.end());
  std::vector<std::pair<Weight, std::size_t>> out;
  for (const Weight& w : ws) {
    if (!out.empty()) {
      const Weight& last = out.back().first;
      bool same = (last.is_infinite() && w.is_infinite()) ||
                  (last.is_finite() && w.is_finite() && w.raw() - last.raw() <= tol);
      if (same) {
        ++out.back().second;
        continue;
      }
    }
    out.emplace_back(w, 1);
  }
  return out;
}

}  // namespace nps
