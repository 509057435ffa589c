#include "nps/cfta.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "nps/program.hpp"

namespace nps {

std::uint32_t ValuePool::intern(const Value& v) {
  auto it = index_.find(v);
  if (it != index_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(values_.size());
  auto [pos, inserted] = index_.emplace(v, id);
  (void)inserted;
  values_.push_back(&pos->first);
  return id;
}

std::string to_string(const StateId& q) {
  std::string out = q.symbol;
  out.push_back(':');
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    if (i) out.push_back('|');
    out += to_string(q.values[i]);
  }
  return out;
}

std::uint32_t Cfta::num_ops() const {
  return static_cast<std::uint32_t>(grammar->builtins().size() + grammar->symbols().size());
}

std::uint32_t Cfta::op_of_terminal(SymbolId s) const {
  return static_cast<std::uint32_t>(grammar->builtins().size()) + s;
}

bool Cfta::op_is_terminal(std::uint32_t op) const {
  return op >= grammar->builtins().size();
}

std::string Cfta::op_name(std::uint32_t op) const {
  if (op_is_terminal(op))
    return grammar->symbol(static_cast<SymbolId>(op - grammar->builtins().size())).name;
  return grammar->builtin(op).name;
}

std::span<const std::uint32_t> Cfta::values_of(std::uint32_t state) const {
  return {state_values.data() + static_cast<std::size_t>(state) * width, width};
}

const Value& Cfta::value_at(std::uint32_t state, std::size_t coord) const {
  return pool.get(state_values[static_cast<std::size_t>(state) * width + coord]);
}

StateId Cfta::state_id(std::uint32_t state) const {
  StateId q;
  q.symbol = grammar->symbol(state_symbols[state]).name;
  q.values.reserve(width);
  for (std::uint32_t id : values_of(state)) q.values.push_back(pool.get(id));
  return q;
}

std::optional<std::uint32_t> Cfta::find_state(const StateId& q) const {
  if (q.values.size() != width) return std::nullopt;
  auto sym = grammar->find_symbol(q.symbol);
  if (!sym) return std::nullopt;
  for (std::uint32_t s = 0; s < num_states(); ++s) {
    if (state_symbols[s] != *sym) continue;
    bool eq = true;
    for (std::size_t i = 0; i < width; ++i) {
      if (!(value_at(s, i) == q.values[i])) {
        eq = false;
        break;
      }
    }
    if (eq) return s;
  }
  return std::nullopt;
}

bool Cfta::is_accepting(std::uint32_t state) const {
  return std::binary_search(accepting.begin(), accepting.end(), state);
}

void Cfta::reindex() {
  trans_by_op.assign(num_ops(), {});
  trans_by_target.assign(num_states(), {});
  for (std::uint32_t i = 0; i < transitions.size(); ++i) {
    trans_by_op[transitions[i].op].push_back(i);
    trans_by_target[transitions[i].target].push_back(i);
  }
}

namespace {

struct StateKey {
  SymbolId sym;
  std::vector<std::uint32_t> vals;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::size_t seed = k.sym;
    for (std::uint32_t v : k.vals) seed = hash_combine(seed, v);
    return seed;
  }
};

struct U32VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t seed = v.size();
    for (std::uint32_t x : v) seed = hash_combine(seed, x);
    return seed;
  }
};

// Bottom-up fixpoint construction. Each state carries the minimum direct
// recursion depth among its derivations (how many times its own symbol nests
// into itself) and the minimum node height; a candidate whose recursion depth
// would exceed the bound is dropped. Rounds are semi-naive: after seeding, a
// combination is tried only when it uses at least one state created or
// improved in the previous round, with the first such position pinned to
// avoid duplicate enumeration.
class Builder {
 public:
  Builder(const Grammar& g, std::span<const Env> envs, std::span<const Value> outputs, int bound,
          const BuildOptions& opts)
      : g_(g), envs_(envs), outputs_(outputs), bound_(bound), opts_(opts) {
    if (envs.empty() || envs.size() != outputs.size())
      throw AutomatonError("construction requires matching nonempty inputs and outputs");
    if (bound < 1) throw AutomatonError("height bound must be at least 1");
    a_.grammar = &g;
    a_.height_bound = bound;
    a_.width = envs.size();
    safety_cap_ = bound * static_cast<int>(std::max<std::size_t>(g.num_nonterminals(), 1)) + 2;
    out_len_.reserve(outputs.size());
    for (const Value& o : outputs_)
      out_len_.push_back(as_str(o) ? utf8_length(*as_str(o)) : SIZE_MAX);
    by_symbol_.assign(g.symbols().size(), {});
  }

  Cfta run() {
    seed_terminals();
    rounds();
    for (std::uint32_t s = 0; s < a_.num_states(); ++s)
      if (a_.state_symbols[s] == g_.start()) a_.accepting.push_back(s);
    a_.reindex();
    return std::move(a_);
  }

 private:
  // Start-symbol string values may not exceed the output length plus slack.
  bool length_ok(SymbolId sym, const Value& v, std::size_t coord) const {
    if (sym != g_.start()) return true;
    const auto* s = as_str(v);
    if (!s || out_len_[coord] == SIZE_MAX) return true;
    return utf8_length(*s) <= out_len_[coord] + static_cast<std::size_t>(opts_.len_slack);
  }

  std::uint32_t add_state(SymbolId sym, std::vector<std::uint32_t> vals, int rec, int h) {
    StateKey key{sym, std::move(vals)};
    auto it = index_.find(key);
    if (it != index_.end()) {
      std::uint32_t idx = it->second;
      bool improved = false;
      if (rec < rec_[idx]) {
        rec_[idx] = rec;
        improved = true;
      }
      if (h < height_[idx]) {
        height_[idx] = h;
        improved = true;
      }
      if (improved) mark_dirty(idx);
      return idx;
    }
    std::uint32_t idx = static_cast<std::uint32_t>(a_.num_states());
    a_.state_symbols.push_back(sym);
    a_.state_values.insert(a_.state_values.end(), key.vals.begin(), key.vals.end());
    rec_.push_back(rec);
    height_.push_back(h);
    by_symbol_[sym].push_back(idx);
    index_.emplace(std::move(key), idx);
    mark_dirty(idx);
    return idx;
  }

  void mark_dirty(std::uint32_t idx) {
    if (idx >= dirty_flag_.size()) dirty_flag_.resize(idx + 1, 0);
    if (!dirty_flag_[idx]) {
      dirty_flag_[idx] = 1;
      next_frontier_.push_back(idx);
    }
  }

  void add_transition(std::uint32_t op, const std::vector<std::uint32_t>& args,
                      std::uint32_t target) {
    std::vector<std::uint32_t> key;
    key.reserve(args.size() + 2);
    key.push_back(op);
    key.push_back(target);
    key.insert(key.end(), args.begin(), args.end());
    if (!trans_seen_.insert(std::move(key)).second) return;
    a_.transitions.push_back({op, target, args});
  }

  void seed_terminals() {
    for (SymbolId s = 0; s < g_.symbols().size(); ++s) {
      if (!g_.is_terminal(s)) continue;
      std::vector<std::uint32_t> vals;
      vals.reserve(a_.width);
      bool defined = true;
      for (std::size_t i = 0; i < a_.width; ++i) {
        std::optional<Value> v = g_.terminal_fn(s)(envs_[i]);
        if (!v || !length_ok(s, *v, i)) {
          defined = false;
          break;
        }
        vals.push_back(a_.pool.intern(*v));
      }
      if (!defined) continue;
      std::uint32_t idx = add_state(s, std::move(vals), 1, 1);
      add_transition(a_.op_of_terminal(s), {}, idx);
    }
    for (const auto& [lhs, t] : g_.alternatives()) {
      for (std::uint32_t ts : by_symbol_[t]) {
        std::vector<std::uint32_t> vals(a_.values_of(ts).begin(), a_.values_of(ts).end());
        bool ok = true;
        for (std::size_t i = 0; i < a_.width && ok; ++i)
          ok = length_ok(lhs, a_.pool.get(vals[i]), i);
        if (!ok) continue;
        std::uint32_t idx = add_state(lhs, std::move(vals), 1, 1);
        add_transition(a_.op_of_terminal(t), {}, idx);
      }
    }
  }

  void rounds() {
    while (!next_frontier_.empty()) {
      frontier_ = std::move(next_frontier_);
      next_frontier_.clear();
      frontier_flag_.assign(a_.num_states(), 0);
      for (std::uint32_t f : frontier_) frontier_flag_[f] = 1;
      dirty_flag_.assign(a_.num_states(), 0);
      std::vector<std::size_t> snapshot(g_.symbols().size());
      for (SymbolId s = 0; s < g_.symbols().size(); ++s) snapshot[s] = by_symbol_[s].size();
      for (const Production& prod : g_.productions()) apply_production(prod, snapshot);
    }
  }

  void apply_production(const Production& prod, const std::vector<std::size_t>& snapshot) {
    const std::size_t k = prod.args.size();
    if (k == 0) {
      attempt(prod, {});
      return;
    }
    std::vector<std::uint32_t> combo(k);
    // j: first position holding a frontier state; earlier positions iterate
    // settled states only, later ones anything in the snapshot.
    for (std::size_t j = 0; j < k; ++j) enumerate(prod, snapshot, combo, 0, j);
  }

  void enumerate(const Production& prod, const std::vector<std::size_t>& snapshot,
                 std::vector<std::uint32_t>& combo, std::size_t pos, std::size_t j) {
    if (pos == prod.args.size()) {
      attempt(prod, combo);
      return;
    }
    const auto& list = by_symbol_[prod.args[pos]];
    const std::size_t limit = std::min(snapshot[prod.args[pos]], list.size());
    for (std::size_t i = 0; i < limit; ++i) {
      std::uint32_t s = list[i];
      const bool is_front = frontier_flag_[s] != 0;
      if (pos < j && is_front) continue;
      if (pos == j && !is_front) continue;
      combo[pos] = s;
      enumerate(prod, snapshot, combo, pos + 1, j);
    }
  }

  void attempt(const Production& prod, const std::vector<std::uint32_t>& args) {
    int rec = 1;
    int h = 1;
    for (std::uint32_t s : args) {
      if (a_.state_symbols[s] == prod.lhs) rec = std::max(rec, 1 + rec_[s]);
      h = std::max(h, 1 + height_[s]);
    }
    if (rec > bound_ || h > safety_cap_) return;
    const Builtin& fn = g_.builtin(prod.func);
    std::vector<std::uint32_t> vals;
    vals.reserve(a_.width);
    std::vector<Value> argv(args.size());
    for (std::size_t i = 0; i < a_.width; ++i) {
      for (std::size_t ai = 0; ai < args.size(); ++ai) argv[ai] = a_.value_at(args[ai], i);
      std::optional<Value> out = fn.fn(argv);
      if (!out || !length_ok(prod.lhs, *out, i)) return;
      vals.push_back(a_.pool.intern(*out));
    }
    std::uint32_t idx = add_state(prod.lhs, std::move(vals), rec, h);
    add_transition(a_.op_of_builtin(prod.func), args, idx);
  }

  const Grammar& g_;
  std::span<const Env> envs_;
  std::span<const Value> outputs_;
  int bound_;
  BuildOptions opts_;
  int safety_cap_ = 0;

  Cfta a_;
  std::unordered_map<StateKey, std::uint32_t, StateKeyHash> index_;
  std::unordered_set<std::vector<std::uint32_t>, U32VecHash> trans_seen_;
  std::vector<int> rec_;
  std::vector<int> height_;
  std::vector<std::vector<std::uint32_t>> by_symbol_;
  std::vector<std::uint32_t> frontier_;
  std::vector<std::uint32_t> next_frontier_;
  std::vector<char> frontier_flag_;
  std::vector<char> dirty_flag_;
  std::vector<std::size_t> out_len_;
};

// States reachable by bottom-up runs of p (empty when p does not fit the
// grammar's alphabet).
std::unordered_set<std::uint32_t> run_states(const Cfta& a, const Program& p) {
  std::unordered_set<std::uint32_t> out;
  std::uint32_t op;
  if (p.is_leaf()) {
    auto sym = a.grammar->find_symbol(p.head());
    if (!sym || !a.grammar->is_terminal(*sym)) return out;
    op = a.op_of_terminal(*sym);
  } else {
    auto b = a.grammar->find_builtin(p.head());
    if (!b || a.grammar->builtin(*b).arity != p.children().size()) return out;
    op = a.op_of_builtin(*b);
  }
  std::vector<std::unordered_set<std::uint32_t>> kids;
  kids.reserve(p.children().size());
  for (const Program& c : p.children()) {
    kids.push_back(run_states(a, c));
    if (kids.back().empty()) return out;
  }
  auto consider = [&](const Cfta::Transition& t) {
    if (t.op != op || t.args.size() != kids.size()) return;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (!kids[i].count(t.args[i])) return;
    out.insert(t.target);
  };
  if (a.trans_by_op.size() == a.num_ops()) {
    for (std::uint32_t ti : a.trans_by_op[op]) consider(a.transitions[ti]);
  } else {
    for (const Cfta::Transition& t : a.transitions) consider(t);
  }
  return out;
}

}  // namespace

bool Cfta::accepts(const Program& p) const {
  for (std::uint32_t s : run_states(*this, p))
    if (is_accepting(s)) return true;
  return false;
}

std::vector<Program> Cfta::enumerate_accepted(std::size_t max_size, std::size_t max_count) const {
  std::vector<std::vector<std::uint32_t>> by_target(num_states());
  for (std::uint32_t i = 0; i < transitions.size(); ++i)
    by_target[transitions[i].target].push_back(i);

  // Minimum program size reaching each state, by fixpoint.
  std::vector<std::size_t> min_size(num_states(), SIZE_MAX);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Transition& t : transitions) {
      std::size_t cand = 1;
      if (!op_is_terminal(t.op)) {
        bool ok = true;
        for (std::uint32_t a : t.args) {
          if (min_size[a] == SIZE_MAX) {
            ok = false;
            break;
          }
          cand += min_size[a];
        }
        if (!ok) continue;
      }
      if (cand < min_size[t.target]) {
        min_size[t.target] = cand;
        changed = true;
      }
    }
  }

  // progs(q, s): all programs of size exactly s with a run ending in q.
  std::map<std::pair<std::uint32_t, std::size_t>, std::vector<Program>> memo;
  std::function<const std::vector<Program>&(std::uint32_t, std::size_t)> progs =
      [&](std::uint32_t q, std::size_t s) -> const std::vector<Program>& {
    auto key = std::make_pair(q, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Program>& slot = memo[key];
    if (s == 0 || min_size[q] == SIZE_MAX || s < min_size[q]) return slot;
    std::set<std::string> seen;
    for (std::uint32_t ti : by_target[q]) {
      const Transition& t = transitions[ti];
      if (op_is_terminal(t.op)) {
        if (s == 1) {
          Program p = Program::leaf(op_name(t.op));
          if (seen.insert(format_program(p)).second) slot.push_back(std::move(p));
        }
        continue;
      }
      if (t.args.empty()) {
        if (s == 1) {
          Program p = Program::node(op_name(t.op), {});
          if (seen.insert(format_program(p)).second) slot.push_back(std::move(p));
        }
        continue;
      }
      const std::size_t k = t.args.size();
      std::vector<std::size_t> suffix_min(k + 1, 0);
      bool reachable = true;
      for (std::size_t i = k; i-- > 0;) {
        if (min_size[t.args[i]] == SIZE_MAX) {
          reachable = false;
          break;
        }
        suffix_min[i] = suffix_min[i + 1] + min_size[t.args[i]];
      }
      if (!reachable || s < 1 + suffix_min[0]) continue;
      std::vector<std::size_t> sizes(k);
      std::vector<Program> kids(k);
      std::function<void(std::size_t)> cross = [&](std::size_t i) {
        if (i == k) {
          Program p = Program::node(op_name(t.op), kids);
          if (seen.insert(format_program(p)).second) slot.push_back(std::move(p));
          return;
        }
        for (const Program& c : progs(t.args[i], sizes[i])) {
          kids[i] = c;
          cross(i + 1);
        }
      };
      std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t rem) {
        if (i + 1 == k) {
          if (rem < min_size[t.args[i]]) return;
          sizes[i] = rem;
          cross(0);
          return;
        }
        for (std::size_t si = min_size[t.args[i]]; si + suffix_min[i + 1] <= rem; ++si) {
          sizes[i] = si;
          assign(i + 1, rem - si);
        }
      };
      assign(0, s - 1);
    }
    return slot;
  };

  std::vector<Program> out;
  for (std::size_t s = 1; s <= max_size && out.size() < max_count; ++s) {
    std::map<std::string, const Program*> row;
    for (std::uint32_t q : accepting)
      for (const Program& p : progs(q, s)) row.emplace(format_program(p), &p);
    for (const auto& [text, p] : row) {
      if (out.size() >= max_count) break;
      out.push_back(*p);
    }
  }
  return out;
}

std::string Cfta::dump() const {
  auto state_str = [this](std::uint32_t s) {
    std::string out = grammar->symbol(state_symbols[s]).name;
    out.push_back(':');
    for (std::size_t i = 0; i < width; ++i) {
      if (i) out.push_back('|');
      out += to_string(value_at(s, i));
    }
    return out;
  };
  std::string out;
  for (const Transition& t : transitions) {
    out += op_name(t.op);
    if (!op_is_terminal(t.op)) {
      out.push_back('(');
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += state_str(t.args[i]);
      }
      out.push_back(')');
    }
    out += " -> ";
    out += state_str(t.target);
    out.push_back('\n');
  }
  out += "accept:";
  for (std::uint32_t s : accepting) {
    out.push_back(' ');
    out += state_str(s);
  }
  out.push_back('\n');
  return out;
}

namespace detail {

Cfta build_states(const Grammar& g, std::span<const Env> envs, std::span<const Value> outputs,
                  int height_bound, const BuildOptions& opts) {
  g.validate();
  return Builder(g, envs, outputs, height_bound, opts).run();
}

}  // namespace detail

Cfta build_cfta(const Grammar& g, const Env& env, const Value& output, int height_bound,
                const BuildOptions& opts) {
  Cfta a = detail::build_states(g, {&env, 1}, {&output, 1}, height_bound, opts);
  std::vector<std::uint32_t> accept;
  for (std::uint32_t s : a.accepting)
    if (a.value_at(s, 0) == output) accept.push_back(s);
  a.accepting = std::move(accept);
  return a;
}

namespace detail {

Cfta product(const Cfta& a, const Cfta& b,
             std::vector<std::pair<std::uint32_t, std::uint32_t>>* origin_out) {
  if (a.grammar != b.grammar)
    throw AutomatonError("intersection requires automata over the same grammar");
  Cfta r;
  r.grammar = a.grammar;
  r.height_bound = std::min(a.height_bound, b.height_bound);
  r.width = a.width + b.width;

  std::vector<std::vector<std::uint32_t>> a_by_op(a.num_ops()), b_by_op(b.num_ops());
  for (std::uint32_t i = 0; i < a.transitions.size(); ++i)
    a_by_op[a.transitions[i].op].push_back(i);
  for (std::uint32_t i = 0; i < b.transitions.size(); ++i)
    b_by_op[b.transitions[i].op].push_back(i);

  auto pair_key = [](std::uint32_t x, std::uint32_t y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  std::unordered_map<std::uint64_t, std::uint32_t> pair_idx;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;
  std::unordered_set<std::uint64_t> fired;
  std::unordered_set<std::vector<std::uint32_t>, U32VecHash> trans_seen;

  auto make_state = [&](std::uint32_t ai, std::uint32_t bi) {
    std::uint64_t key = pair_key(ai, bi);
    auto it = pair_idx.find(key);
    if (it != pair_idx.end()) return it->second;
    std::uint32_t idx = static_cast<std::uint32_t>(r.num_states());
    r.state_symbols.push_back(a.state_symbols[ai]);
    for (std::uint32_t v : a.values_of(ai)) r.state_values.push_back(r.pool.intern(a.pool.get(v)));
    for (std::uint32_t v : b.values_of(bi)) r.state_values.push_back(r.pool.intern(b.pool.get(v)));
    origin.emplace_back(ai, bi);
    pair_idx.emplace(key, idx);
    return idx;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t op = 0; op < a.num_ops(); ++op) {
      for (std::uint32_t ta_i : a_by_op[op]) {
        const Cfta::Transition& ta = a.transitions[ta_i];
        for (std::uint32_t tb_i : b_by_op[op]) {
          if (fired.count(pair_key(ta_i, tb_i))) continue;
          const Cfta::Transition& tb = b.transitions[tb_i];
          if (a.state_symbols[ta.target] != b.state_symbols[tb.target]) continue;
          std::vector<std::uint32_t> args(ta.args.size());
          bool ok = true;
          for (std::size_t i = 0; i < ta.args.size(); ++i) {
            auto it = pair_idx.find(pair_key(ta.args[i], tb.args[i]));
            if (it == pair_idx.end()) {
              ok = false;
              break;
            }
            args[i] = it->second;
          }
          if (!ok) continue;
          std::uint32_t tgt = make_state(ta.target, tb.target);
          std::vector<std::uint32_t> tkey;
          tkey.reserve(args.size() + 2);
          tkey.push_back(op);
          tkey.push_back(tgt);
          tkey.insert(tkey.end(), args.begin(), args.end());
          if (trans_seen.insert(tkey).second) r.transitions.push_back({op, tgt, std::move(args)});
          fired.insert(pair_key(ta_i, tb_i));
          changed = true;
        }
      }
    }
  }

  // Pairing component transitions can assemble states only derivable by
  // trees deeper than the bound, because each component run may slip through
  // its own shallow states. Re-apply the per-nonterminal recursion bound on
  // the joint graph so that products agree exactly with automata built
  // directly over the concatenated example vectors.
  const int bound = r.height_bound;
  const int cap = bound * static_cast<int>(r.grammar->num_nonterminals()) + 2;
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> minrec(r.num_states(), kUnset), minh(r.num_states(), kUnset);
  auto candidate = [&](const Cfta::Transition& t, int& rec, int& h) {
    rec = 1;
    h = 1;
    for (std::uint32_t q : t.args) {
      if (minrec[q] == kUnset) return false;
      if (r.state_symbols[q] == r.state_symbols[t.target]) rec = std::max(rec, 1 + minrec[q]);
      h = std::max(h, 1 + minh[q]);
    }
    return true;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (const Cfta::Transition& t : r.transitions) {
      int rec = 0, h = 0;
      if (!candidate(t, rec, h) || rec > bound || h > cap) continue;
      if (rec < minrec[t.target]) {
        minrec[t.target] = rec;
        improved = true;
      }
      if (h < minh[t.target]) {
        minh[t.target] = h;
        improved = true;
      }
    }
  }
  std::vector<bool> keep(r.transitions.size(), false);
  bool all_kept = true;
  for (std::size_t i = 0; i < r.transitions.size(); ++i) {
    int rec = 0, h = 0;
    keep[i] = candidate(r.transitions[i], rec, h) && rec <= bound && h <= cap &&
              minrec[r.transitions[i].target] != kUnset;
    all_kept = all_kept && keep[i];
  }
  if (!all_kept) {
    std::vector<std::uint32_t> remap(r.num_states(), 0);
    std::uint32_t alive = 0;
    std::vector<SymbolId> syms;
    std::vector<std::uint32_t> vals;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> org;
    for (std::uint32_t s = 0; s < r.num_states(); ++s) {
      if (minrec[s] == kUnset) continue;
      remap[s] = alive++;
      syms.push_back(r.state_symbols[s]);
      auto vs = r.values_of(s);
      vals.insert(vals.end(), vs.begin(), vs.end());
      org.push_back(origin[s]);
    }
    std::vector<Cfta::Transition> trans;
    for (std::size_t i = 0; i < r.transitions.size(); ++i) {
      if (!keep[i]) continue;
      Cfta::Transition t = r.transitions[i];
      t.target = remap[t.target];
      for (std::uint32_t& q : t.args) q = remap[q];
      trans.push_back(std::move(t));
    }
    r.state_symbols = std::move(syms);
    r.state_values = std::move(vals);
    r.transitions = std::move(trans);
    for (std::uint32_t s = 0; s < r.num_states(); ++s)
      if (a.is_accepting(org[s].first) && b.is_accepting(org[s].second)) r.accepting.push_back(s);
    origin = std::move(org);
  } else {
    for (std::uint32_t s = 0; s < r.num_states(); ++s)
      if (a.is_accepting(origin[s].first) && b.is_accepting(origin[s].second))
        r.accepting.push_back(s);
  }
  r.reindex();
  if (origin_out) *origin_out = std::move(origin);
  return r;
}

}  // namespace detail

Cfta intersect(const Cfta& a, const Cfta& b) { return detail::product(a, b, nullptr); }

}  // namespace nps
