#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "helpers.hpp"
#include "nps/sfta.hpp"
#include "oracle.hpp"

using namespace nps;

namespace {

// (value, weight) for every accepting state of a single-example toy SFTA.
std::map<std::int64_t, Weight> accepting_weights(const Sfta& a) {
  std::map<std::int64_t, Weight> out;
  for (std::size_t i = 0; i < a.base.accepting.size(); ++i)
    out.emplace(*as_int(a.base.value_at(a.base.accepting[i], 0)), a.weights[i]);
  return out;
}

// Random toy dataset with small inputs and outputs near the reachable range.
DataSet random_toy_data(std::mt19937_64& rng, std::size_t max_rows) {
  DataSet d;
  std::size_t rows = 1 + rng() % max_rows;
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t x = static_cast<std::int64_t>(rng() % 8) - 2;
    std::int64_t out = static_cast<std::int64_t>(rng() % 16) - 2;
    d.examples.push_back(helpers::toy_ex(x, out));
  }
  return d;
}

}  // namespace

TEST_CASE("single-example weights under the squared loss") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  std::map<std::int64_t, Weight> want = {
      {1, Weight::finite(64)}, {2, Weight::finite(49)}, {3, Weight::finite(36)},
      {4, Weight::finite(25)}, {5, Weight::finite(16)}, {6, Weight::finite(9)},
      {7, Weight::finite(4)},  {8, Weight::finite(1)},  {9, Weight::finite(0)},
      {12, Weight::finite(9)},
  };
  CHECK(accepting_weights(a) == want);
  CHECK(a.num_accepting() == 10);
}

TEST_CASE("single-example weights under 0/1 and 0/inf") {
  Grammar g = toy_grammar();
  Env env{{"x", int_value(1)}};
  Sfta a01 = build_sfta(g, env, int_value(9), zero_one_loss(), 3);
  for (auto& [value, w] : accepting_weights(a01))
    CHECK(w == (value == 9 ? Weight::finite(0) : Weight::finite(1)));
  Sfta ainf = build_sfta(g, env, int_value(9), zero_inf_loss(), 3);
  for (auto& [value, w] : accepting_weights(ainf)) {
    if (value == 9)
      CHECK(w == Weight::finite(0));
    else
      CHECK(w.is_infinite());
  }
}

TEST_CASE("weight lookup by state index") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  auto q9 = a.base.find_state(StateId{"n", {int_value(9)}});
  REQUIRE(q9.has_value());
  CHECK(a.weight_of(*q9) == Weight::finite(0));
  auto t2 = a.base.find_state(StateId{"t", {int_value(2)}});
  REQUIRE(t2.has_value());
  CHECK_THROWS_AS(a.weight_of(*t2), AutomatonError);
}

TEST_CASE("plus_intersect pairs states and adds weights") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  Sfta b = build_sfta(g, Env{{"x", int_value(2)}}, int_value(12), squared_error_loss(), 3);
  Sfta ab = plus_intersect(a, b);
  CHECK(ab.base.width == 2);

  auto q = ab.base.find_state(StateId{"n", {int_value(9), int_value(12)}});
  REQUIRE(q.has_value());
  CHECK(ab.weight_of(*q) == Weight::finite(0));
  CHECK(select(ab, *q).accepts(parse_program("(× (+ x 2) 3)", g)));

  // Every paired accepting weight is the sum of the component weights.
  for (std::size_t i = 0; i < ab.base.accepting.size(); ++i) {
    std::uint32_t s = ab.base.accepting[i];
    std::int64_t v1 = *as_int(ab.base.value_at(s, 0));
    std::int64_t v2 = *as_int(ab.base.value_at(s, 1));
    double w1 = (v1 - 9.0) * (v1 - 9.0);
    double w2 = (v2 - 12.0) * (v2 - 12.0);
    CHECK(ab.weights[i] == Weight::finite(w1 + w2));
  }
}

TEST_CASE("plus_intersect carries explicit weight sums") {
  Grammar g = toy_grammar();
  Env env{{"x", int_value(1)}};
  // A custom loss giving weight 2 to every value except 9 pairs with the
  // zero-loss automaton to a combined weight of exactly 2.
  PerExampleLoss two{"two", [](const Value& o, const Value& c) {
                       return o == c ? Weight::finite(0) : Weight::finite(2);
                     }};
  Sfta a = build_sfta(g, env, int_value(9), zero_one_loss(), 3);
  Sfta b = build_sfta(g, env, int_value(7), two, 3);
  Sfta ab = plus_intersect(a, b);
  auto q = ab.base.find_state(StateId{"n", {int_value(9), int_value(9)}});
  REQUIRE(q.has_value());
  CHECK(ab.weight_of(*q) == Weight::finite(2));  // 0 from a, 2 from b

  // Infinity absorbs.
  Sfta c = build_sfta(g, env, int_value(7), zero_inf_loss(), 3);
  Sfta ac = plus_intersect(a, c);
  auto q2 = ac.base.find_state(StateId{"n", {int_value(9), int_value(9)}});
  REQUIRE(q2.has_value());
  CHECK(ac.weight_of(*q2).is_infinite());
}

TEST_CASE("slash_intersect keeps left weights over the common language") {
  Grammar g = toy_grammar();
  Env env{{"x", int_value(1)}};
  Sfta a = build_sfta(g, env, int_value(9), squared_error_loss(), 3);

  // Against the automaton's own unweighted base, everything survives.
  Sfta same = slash_intersect(a, to_cfta(a));
  auto q = same.base.find_state(StateId{"n", {int_value(9), int_value(9)}});
  REQUIRE(q.has_value());
  CHECK(same.weight_of(*q) == Weight::finite(0));
  auto h = weight_histogram(a);
  auto h2 = weight_histogram(same);
  CHECK(h == h2);

  // Against a pruned automaton, only states paired with a survivor remain.
  Cfta only9 = select(a, StateId{"n", {int_value(9)}});
  Sfta restricted = slash_intersect(a, only9);
  CHECK(restricted.num_accepting() == 1);
  CHECK(restricted.weights[0] == Weight::finite(0));
  CHECK(restricted.base.accepts(parse_program("(× (+ x 2) 3)", g)));
  CHECK_FALSE(restricted.base.accepts(parse_program("x", g)));

  // Against an empty automaton, nothing accepts.
  Cfta none = build_cfta(g, env, int_value(100), 2);
  CHECK(slash_intersect(a, none).num_accepting() == 0);
}

TEST_CASE("prune keeps states at or below the threshold") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  Sfta p9 = prune(a, Weight::finite(9));
  std::set<std::int64_t> vals;
  for (std::uint32_t q : p9.base.accepting) vals.insert(*as_int(p9.base.value_at(q, 0)));
  CHECK(vals == std::set<std::int64_t>{6, 7, 8, 9, 12});
  auto w = accepting_weights(p9);
  CHECK(w.at(6) == Weight::finite(9));
  CHECK(w.at(12) == Weight::finite(9));
  CHECK(w.at(9) == Weight::finite(0));

  CHECK(prune(a, Weight::finite(0)).num_accepting() == 1);
  CHECK(prune(a, Weight::infinity()).num_accepting() == a.num_accepting());
  // States and transitions stay untouched.
  CHECK(p9.base.num_states() == a.base.num_states());
  CHECK(p9.base.num_transitions() == a.base.num_transitions());
}

TEST_CASE("select narrows acceptance to one state") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  Cfta nine = select(a, StateId{"n", {int_value(9)}});
  CHECK(nine.accepting.size() == 1);
  CHECK(nine.accepts(parse_program("(× (+ x 2) 3)", g)));
  CHECK_FALSE(nine.accepts(parse_program("x", g)));
  Env env{{"x", int_value(1)}};
  for (const Program& p : nine.enumerate_accepted(9, 1000)) {
    auto out = eval(g, p, env);
    REQUIRE(out.has_value());
    CHECK(*as_int(*out) == 9);
  }
  // Selecting a non-accepting or unknown state throws.
  CHECK_THROWS_AS(select(a, StateId{"t", {int_value(2)}}), AutomatonError);
  CHECK_THROWS_AS(select(a, StateId{"n", {int_value(100)}}), AutomatonError);
}

TEST_CASE("dataset automaton equals the single-example automaton on one row") {
  Grammar g = toy_grammar();
  DataSet one;
  one.examples.push_back(helpers::toy_ex(1, 9));
  Sfta direct = build_sfta_dataset(g, one, squared_error_loss(), 3);
  Sfta single = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  CHECK(direct.base.dump() == single.base.dump());
  REQUIRE(direct.weights.size() == single.weights.size());
  for (std::size_t i = 0; i < direct.weights.size(); ++i)
    CHECK(direct.weights[i] == single.weights[i]);
}

TEST_CASE("dataset automaton weights sum the per-example losses") {
  Grammar g = toy_grammar();
  DataSet data = helpers::toy_data({{1, 9}, {2, 12}});
  Sfta a = build_sfta_dataset(g, data, squared_error_loss(), 3);
  auto q = a.base.find_state(StateId{"n", {int_value(9), int_value(12)}});
  REQUIRE(q.has_value());
  CHECK(a.weight_of(*q) == Weight::finite(0));
  auto q2 = a.base.find_state(StateId{"n", {int_value(1), int_value(2)}});
  REQUIRE(q2.has_value());
  CHECK(a.weight_of(*q2) == Weight::finite(164));  // 64 + 100
  CHECK_THROWS_AS(build_sfta_dataset(g, DataSet{}, squared_error_loss(), 3), AutomatonError);
}

TEST_CASE("identical env with conflicting outputs leaves only infinite weights") {
  Grammar g = toy_grammar();
  DataSet data = helpers::toy_data({{1, 9}, {1, 12}});
  Sfta a = build_sfta_dataset(g, data, zero_inf_loss(), 3);
  REQUIRE(a.num_accepting() > 0);
  for (Weight w : a.weights) CHECK(w.is_infinite());
}

TEST_CASE("duplicate rows collapse under 0/inf only") {
  Grammar g = toy_grammar();
  DataSet dup = helpers::toy_data({{1, 9}, {1, 9}, {2, 12}});
  std::size_t dropped = 0;
  Sfta a = build_sfta_dataset(g, dup, zero_inf_loss(), 3, {}, &dropped);
  CHECK(dropped == 1);
  CHECK(a.base.width == 2);

  DataSet uniq = helpers::toy_data({{1, 9}, {2, 12}});
  Sfta b = build_sfta_dataset(g, uniq, zero_inf_loss(), 3);
  CHECK(a.base.dump() == b.base.dump());

  // Under 0/1 the duplicate row keeps contributing to the weight.
  dropped = 0;
  Sfta c = build_sfta_dataset(g, dup, zero_one_loss(), 3, {}, &dropped);
  CHECK(dropped == 0);
  CHECK(c.base.width == 3);
  auto miss = c.base.find_state(StateId{"n", {int_value(1), int_value(1), int_value(2)}});
  REQUIRE(miss.has_value());
  CHECK(c.weight_of(*miss) == Weight::finite(3));  // two misses on row 1+2, one on row 3
}

TEST_CASE("every accepted program's loss equals its state weight") {
  Grammar g = toy_grammar();
  std::mt19937_64 rng(2026);
  const PerExampleLoss losses[] = {zero_one_loss(), zero_inf_loss(), squared_error_loss()};
  for (int inst = 0; inst < 12; ++inst) {
    DataSet data = random_toy_data(rng, 3);
    const PerExampleLoss& L = losses[inst % 3];
    int d = 2 + static_cast<int>(inst % 2);
    Sfta a = build_sfta_dataset(g, data, L, d);
    for (std::uint32_t s : a.base.accepting) {
      Cfta sel = select(a, s);
      for (const Program& p : sel.enumerate_accepted(9, 50))
        CHECK(oracle::direct_loss(g, p, data, L) == a.weight_of(s));
    }
  }
}

TEST_CASE("distinct accepting states admit no common program") {
  Grammar g = toy_grammar();
  DataSet data = helpers::toy_data({{1, 9}, {3, 9}});
  Sfta a = build_sfta_dataset(g, data, zero_one_loss(), 3);
  std::set<std::string> seen;
  for (std::uint32_t s : a.base.accepting) {
    for (const Program& p : select(a, s).enumerate_accepted(7, 500)) {
      auto [it, fresh] = seen.insert(format_program(p));
      CHECK(fresh);
    }
  }
}

TEST_CASE("string dataset automaton under the edit-distance loss") {
  StringGrammarOptions opts;
  opts.constants = {"a"};
  opts.ks = {1, -1};
  opts.const_pos_ks = {0, -1};
  opts.token_classes = {"Alphabets"};
  Grammar g = string_grammar(opts);
  DataSet data = helpers::str_data({{"ab", "ab"}, {"cd", "cd"}});
  Sfta a = build_sfta_dataset(g, data, dl_loss(), 3);
  REQUIRE(a.num_accepting() > 0);
  // The identity program lands in a zero-weight state.
  Program id = parse_program("(Str (SubStr x (ConstPos 0) (ConstPos -1)))", g);
  auto q = a.base.find_state(StateId{"e", {str_value("ab"), str_value("cd")}});
  REQUIRE(q.has_value());
  CHECK(a.weight_of(*q) == Weight::finite(0));
  CHECK(select(a, *q).accepts(id));
  // A constant program pays the summed edit distance.
  auto qa = a.base.find_state(StateId{"e", {str_value("a"), str_value("a")}});
  REQUIRE(qa.has_value());
  CHECK(a.weight_of(*qa) == Weight::finite(3));  // dl(ab,a)=1, dl(cd,a)=2
}

TEST_CASE("weight histogram sorts, merges, and counts") {
  Grammar g = toy_grammar();
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  auto h = weight_histogram(a);
  // Weights {0,1,4,9,9,16,25,36,49,64}: 9 appears twice (values 6 and 12).
  REQUIRE(h.size() == 9);
  CHECK(h[0] == std::pair<Weight, std::size_t>{Weight::finite(0), 1});
  CHECK(h[3] == std::pair<Weight, std::size_t>{Weight::finite(9), 2});
  CHECK(h[8] == std::pair<Weight, std::size_t>{Weight::finite(64), 1});
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i - 1].first < h[i].first);

  Sfta inf = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), zero_inf_loss(), 3);
  auto hi = weight_histogram(inf);
  REQUIRE(hi.size() == 2);
  CHECK(hi[0] == std::pair<Weight, std::size_t>{Weight::finite(0), 1});
  CHECK(hi[1].first.is_infinite());
  CHECK(hi[1].second == 9);
}

TEST_CASE("fold of plus_intersect matches the direct dataset build") {
  Grammar g = toy_grammar();
  std::mt19937_64 rng(77);
  const PerExampleLoss losses[] = {zero_one_loss(), squared_error_loss()};
  for (int inst = 0; inst < 8; ++inst) {
    DataSet data = random_toy_data(rng, 3);
    const PerExampleLoss& L = losses[inst % 2];
    Sfta direct = build_sfta_dataset(g, data, L, 3);
    Sfta fold = build_sfta(g, data.examples[0].input, data.examples[0].output, L, 3);
    for (std::size_t i = 1; i < data.examples.size(); ++i)
      fold = plus_intersect(
          fold, build_sfta(g, data.examples[i].input, data.examples[i].output, L, 3));
    auto hw = weight_histogram(direct);
    auto hf = weight_histogram(fold);
    CHECK(hw == hf);
  }
}
