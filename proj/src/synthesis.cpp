#include "nps/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cheapest program per state, with canonical tie-breaking. Works on the
// automaton as a hypergraph: states are nodes, transitions hyperedges whose
// cost is the op cost plus the children's costs.
struct Extractor {
  const Cfta& a;
  std::vector<double> best_cost;
  std::vector<std::size_t> best_size;
  std::vector<double> op_cost;

  explicit Extractor(const Cfta& a_, const CostTable& t)
      : a(a_),
        best_cost(a_.num_states(), kInf),
        best_size(a_.num_states(), SIZE_MAX),
        op_cost(a_.num_ops(), -1.0) {
    table_lookup(t);
    cost_fixpoint();
    size_fixpoint();
  }

  void table_lookup(const CostTable& t) {
    // Resolve op costs lazily per op actually used by some transition, so a
    // partial table works as long as it covers the reachable alphabet.
    for (const Cfta::Transition& tr : a.transitions) {
      if (op_cost[tr.op] >= 0) continue;
      const std::string name = a.op_name(tr.op);
      const auto& m = a.op_is_terminal(tr.op) ? t.terminal_cost : t.func_cost;
      auto it = m.find(name);
      if (it == m.end()) throw ObjectiveError("no cost entry for " + name);
      if (it->second < 0) throw ObjectiveError("negative cost for " + name);
      op_cost[tr.op] = it->second;
    }
  }

  void cost_fixpoint() {
    for (bool changed = true; changed;) {
      changed = false;
      for (const Cfta::Transition& tr : a.transitions) {
        double c = op_cost[tr.op];
        for (std::uint32_t arg : tr.args) {
          if (best_cost[arg] == kInf) {
            c = kInf;
            break;
          }
          c += best_cost[arg];
        }
        if (c < best_cost[tr.target]) {
          best_cost[tr.target] = c;
          changed = true;
        }
      }
    }
  }

  // Among cost-optimal derivations, minimize node count (makes the text
  // tie-break well-founded).
  void size_fixpoint() {
    for (bool changed = true; changed;) {
      changed = false;
      for (const Cfta::Transition& tr : a.transitions) {
        if (!optimal(tr)) continue;
        std::size_t n = 1;
        bool ok = true;
        for (std::uint32_t arg : tr.args) {
          if (best_size[arg] == SIZE_MAX) {
            ok = false;
            break;
          }
          n += best_size[arg];
        }
        if (ok && n < best_size[tr.target]) {
          best_size[tr.target] = n;
          changed = true;
        }
      }
    }
  }

  bool optimal(const Cfta::Transition& tr) const {
    if (best_cost[tr.target] == kInf) return false;
    double c = op_cost[tr.op];
    for (std::uint32_t arg : tr.args) {
      if (best_cost[arg] == kInf) return false;
      c += best_cost[arg];
    }
    return c == best_cost[tr.target];
  }

  struct Extracted {
    Program program;
    std::string text;
  };
  std::unordered_map<std::uint32_t, Extracted> memo;

  const Extracted& extract(std::uint32_t q) {
    if (auto it = memo.find(q); it != memo.end()) return it->second;
    const Extracted* best = nullptr;
    Extracted cand;
    for (std::uint32_t ti : a.trans_by_target[q]) {
      const Cfta::Transition& tr = a.transitions[ti];
      if (!optimal(tr)) continue;
      std::size_t n = 1;
      bool ok = true;
      for (std::uint32_t arg : tr.args) {
        if (best_size[arg] == SIZE_MAX) {
          ok = false;
          break;
        }
        n += best_size[arg];
      }
      if (!ok || n != best_size[q]) continue;
      Program p;
      if (a.op_is_terminal(tr.op) && tr.args.empty()) {
        p = Program::leaf(a.op_name(tr.op));
      } else {
        std::vector<Program> kids;
        kids.reserve(tr.args.size());
        for (std::uint32_t arg : tr.args) kids.push_back(extract(arg).program);
        p = Program::node(a.op_name(tr.op), std::move(kids));
      }
      std::string text = format_program(p);
      if (!best || text < cand.text) {
        cand = {std::move(p), std::move(text)};
        best = &cand;
      }
    }
    return memo.emplace(q, std::move(cand)).first->second;
  }
};

struct Pick {
  bool valid = false;
  std::uint32_t state = 0;
  Weight loss;
  Weight complexity;
  ObjectiveValue objective = ObjectiveValue::scalar(Weight());
  std::string text;
};

// Deterministic argmin: objective, then complexity, then formatted text.
void consider(Pick& best, std::uint32_t state, Weight loss, Weight complexity,
              ObjectiveValue obj, const std::string& text) {
  if (best.valid) {
    if (best.objective < obj) return;
    if (obj == best.objective) {
      if (best.complexity < complexity) return;
      if (complexity == best.complexity && best.text <= text) return;
    }
  }
  best = {true, state, loss, complexity, std::move(obj), text};
}

SynthesisResult finish(const Sfta& a, const Extractor& ex, const Pick& best) {
  SynthesisResult r;
  r.program = ex.memo.at(best.state).program;
  r.loss = best.loss;
  r.complexity = best.complexity;
  r.objective = best.objective;
  r.chosen_state = a.base.state_id(best.state);
  r.sfta_state_count = a.base.num_states();
  return r;
}

SynthesisResult select_best(const Sfta& a, const Objective& u, const CostTable& t,
                            const char* no_program_msg) {
  if (a.base.accepting.empty()) throw NoProgram(no_program_msg);
  Extractor ex(a.base, t);
  Pick best;
  for (std::size_t i = 0; i < a.base.accepting.size(); ++i) {
    std::uint32_t q = a.base.accepting[i];
    const auto& e = ex.extract(q);
    Weight c = Weight::finite(ex.best_cost[q]);
    consider(best, q, a.weights[i], c, u(a.weights[i], c), e.text);
  }
  if (!best.valid) throw NoProgram(no_program_msg);
  return finish(a, ex, best);
}

}  // namespace

std::unordered_map<std::uint32_t, MinCostEntry> min_cost_per_state(const Sfta& a,
                                                                   const CostTable& t) {
  std::unordered_map<std::uint32_t, MinCostEntry> out;
  if (a.base.accepting.empty()) return out;
  Extractor ex(a.base, t);
  for (std::uint32_t q : a.base.accepting) {
    if (ex.best_cost[q] == kInf) continue;
    out.emplace(q, MinCostEntry{ex.extract(q).program, Weight::finite(ex.best_cost[q])});
  }
  return out;
}

SynthesisResult synthesize(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                           const CostTable& t, const Objective& u, int height_bound,
                           const BuildOptions& opts) {
#ifndef NDEBUG
  check_monotone(u);
#endif
  Sfta a = build_sfta_dataset(g, data, L, height_bound, opts);
  return select_best(a, u, t, "no program within the height bound");
}

SynthesisResult best_for_accuracy(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                                  const CostTable& t, Weight b, int height_bound,
                                  const BuildOptions& opts) {
  Sfta a = prune(build_sfta_dataset(g, data, L, height_bound, opts), b);
  if (a.base.accepting.empty()) throw NoProgram("no program within the loss bound");
  Extractor ex(a.base, t);
  Pick best;
  for (std::size_t i = 0; i < a.base.accepting.size(); ++i) {
    std::uint32_t q = a.base.accepting[i];
    const auto& e = ex.extract(q);
    Weight c = Weight::finite(ex.best_cost[q]);
    consider(best, q, a.weights[i], c, ObjectiveValue::scalar(c), e.text);
  }
  if (!best.valid) throw NoProgram("no program within the loss bound");
  return finish(a, ex, best);
}

SynthesisResult forced_accuracy(const Grammar& g, const DataSet& data, const DataSet& trusted,
                                const PerExampleLoss& L, const CostTable& t, const Objective& u,
                                Weight b, int height_bound, const BuildOptions& opts) {
  if (trusted.empty()) return synthesize(g, data, L, t, u, height_bound, opts);
  for (const Example& e : trusted.examples) {
    bool found = false;
    for (const Example& d : data.examples)
      if (d.input == e.input && d.output == e.output) {
        found = true;
        break;
      }
    if (!found) throw AutomatonError("trusted examples must come from the dataset");
  }
#ifndef NDEBUG
  check_monotone(u);
#endif
  Sfta full = build_sfta_dataset(g, data, L, height_bound, opts);
  Sfta trust = build_sfta_dataset(g, trusted, L, height_bound, opts);
  Sfta constrained = slash_intersect(full, to_cfta(prune(trust, b)));
  return select_best(constrained, u, t, "no program meets the trusted bound");
}

}  // namespace nps
