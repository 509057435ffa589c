#include <doctest.h>

#include <random>
#include <string>

#include "helpers.hpp"
#include "nps/synthesis.hpp"
#include "oracle.hpp"

using namespace nps;

namespace {

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

TEST_CASE("min cost per accepting state") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  Sfta a = build_sfta(g, Env{{"x", int_value(1)}}, int_value(9), squared_error_loss(), 3);
  auto best = min_cost_per_state(a, unit);
  CHECK(best.size() == a.num_accepting());

  auto q9 = a.base.find_state(StateId{"n", {int_value(9)}});
  REQUIRE(q9.has_value());
  CHECK(format_program(best.at(*q9).program) == "(× (+ x 2) 3)");
  CHECK(best.at(*q9).cost == Weight::finite(5));

  auto q1 = a.base.find_state(StateId{"n", {int_value(1)}});
  REQUIRE(q1.has_value());
  CHECK(format_program(best.at(*q1).program) == "x");
  CHECK(best.at(*q1).cost == Weight::finite(1));

  // Each reported cost is the true minimum over the state's language, and
  // the reported program is accepted there.
  for (std::uint32_t s : a.base.accepting) {
    Cfta sel = select(a, s);
    CHECK(sel.accepts(best.at(s).program));
    Weight min = Weight::infinity();
    for (const Program& p : sel.enumerate_accepted(11, 5000)) {
      Weight c = cost(p, unit);
      if (c < min) min = c;
    }
    CHECK(best.at(s).cost == min);
  }

  // Empty accepting set gives an empty mapping.
  Sfta none = a;
  none.base.accepting.clear();
  none.weights.clear();
  CHECK(min_cost_per_state(none, unit).empty());
}

TEST_CASE("synthesize on consistent data finds the exact program") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 9}});
  SynthesisResult r = synthesize(g, data, squared_error_loss(), unit, lexicographic(), 3);
  CHECK(r.loss == Weight::finite(0));
  CHECK(r.complexity == Weight::finite(5));
  CHECK(r.objective == ObjectiveValue::lex_pair(Weight::finite(0), Weight::finite(5)));
  CHECK(format_program(r.program) == "(× (+ x 2) 3)");
  CHECK(r.chosen_state == StateId{"n", {int_value(9)}});
  CHECK(r.sfta_state_count > 0);

  SynthesisResult r2 = synthesize(g, data, zero_inf_loss(), unit, lexicographic(), 3);
  CHECK(r2.loss == Weight::finite(0));
  CHECK(format_program(r2.program) == format_program(r.program));
}

TEST_CASE("synthesize picks the nearest value when no program is exact") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 10}});
  SynthesisResult r = synthesize(g, data, squared_error_loss(), unit, lexicographic(), 3);
  CHECK(r.loss == Weight::finite(1));  // value 9 misses 10 by 1, the best available
  CHECK(r.chosen_state == StateId{"n", {int_value(9)}});
  auto out = eval(g, r.program, data.examples[0].input);
  REQUIRE(out.has_value());
  CHECK(*as_int(*out) == 9);
}

TEST_CASE("synthesize reports infinite loss when nothing fits under 0/inf") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 100}});
  SynthesisResult r = synthesize(g, data, zero_inf_loss(), unit, lexicographic(), 3);
  CHECK(r.loss.is_infinite());
  // All weights are Infinity, so ties fall to the cheapest program.
  CHECK(format_program(r.program) == "x");
}

TEST_CASE("synthesize throws when no accepting state exists") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  // A string-typed input leaves the toy variable undefined everywhere, so
  // no start-symbol state is ever built.
  DataSet data;
  data.examples.push_back({Env{{"x", str_value("s")}}, int_value(9)});
  CHECK_THROWS_AS(synthesize(g, data, zero_one_loss(), unit, lexicographic(), 3), NoProgram);
}

TEST_CASE("tradeoff objective can prefer a simpler, lossier program") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 9}});
  // lambda = 1: program x costs 1 with loss 64 -> 65; the exact program
  // costs 5 with loss 0 -> 5; exact still wins.
  SynthesisResult r1 = synthesize(g, data, squared_error_loss(), unit, tradeoff(1.0), 3);
  CHECK(r1.objective == ObjectiveValue::scalar(Weight::finite(5)));
  CHECK(format_program(r1.program) == "(× (+ x 2) 3)");
  // data {x->1, out 4}: (+ x 3) hits exactly (cost 3); x has loss 9, cost 1.
  // With a large lambda the cheap program wins: U(x) = 9 + 10 = 19 beats
  // U(+ x 3) = 0 + 30 = 30.
  DataSet d4 = helpers::toy_data({{1, 4}});
  SynthesisResult r2 = synthesize(g, d4, squared_error_loss(), unit, tradeoff(10.0), 3);
  CHECK(format_program(r2.program) == "x");
  CHECK(r2.loss == Weight::finite(9));
  SynthesisResult r3 = synthesize(g, d4, squared_error_loss(), unit, tradeoff(0.001), 3);
  CHECK(format_program(r3.program) == "(+ x 3)");
  CHECK(r3.loss == Weight::finite(0));
}

TEST_CASE("objective value matches the exhaustive oracle") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  std::mt19937_64 rng(404);
  const PerExampleLoss losses[] = {zero_one_loss(), zero_inf_loss(), squared_error_loss()};
  const Objective objectives[] = {lexicographic(), tradeoff(0.001), tradeoff(0.1), tradeoff(1.0)};
  for (int inst = 0; inst < 24; ++inst) {
    DataSet data = random_toy_data(rng, 3);
    const PerExampleLoss& L = losses[inst % 3];
    const Objective& u = objectives[inst % 4];
    int d = 2 + inst % 2;
    SynthesisResult r = synthesize(g, data, L, unit, u, d);
    auto best = oracle::best_objective(g, data, L, unit, u, d);
    REQUIRE(best.has_value());
    CHECK(r.objective == best->objective);
    CHECK(r.loss == oracle::direct_loss(g, r.program, data, L));
    CHECK(r.complexity == cost(r.program, unit));
  }
}

TEST_CASE("best_for_accuracy with an infinite bound returns the cheapest program") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 9}});
  SynthesisResult r = best_for_accuracy(g, data, squared_error_loss(), unit,
                                        Weight::infinity(), 3);
  CHECK(format_program(r.program) == "x");
  CHECK(r.complexity == Weight::finite(1));
  CHECK(r.loss == Weight::finite(64));
  CHECK(r.objective == ObjectiveValue::scalar(Weight::finite(1)));
}

TEST_CASE("best_for_accuracy with bound zero equals exact synthesis") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 9}, {2, 12}});
  SynthesisResult r = best_for_accuracy(g, data, zero_one_loss(), unit, Weight::finite(0), 3);
  CHECK(r.loss == Weight::finite(0));
  CHECK(format_program(r.program) == "(× (+ x 2) 3)");
}

TEST_CASE("best_for_accuracy tolerates one corrupted example") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  // Hidden program (× x 3) over x = 1..4; the first output is corrupted.
  DataSet data = helpers::toy_data({{1, 4}, {2, 6}, {3, 9}, {4, 12}});
  SynthesisResult r = best_for_accuracy(g, data, zero_one_loss(), unit, Weight::finite(1), 3);
  CHECK(format_program(r.program) == "(× x 3)");
  CHECK(r.loss == Weight::finite(1));
  CHECK(r.complexity == Weight::finite(3));
  // Bound 0 is unsatisfiable on this data.
  CHECK_THROWS_AS(
      best_for_accuracy(g, data, zero_one_loss(), unit, Weight::finite(0), 3), NoProgram);
}

TEST_CASE("forced_accuracy with trusted rows pins the clean subset") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 4}, {2, 6}, {3, 9}, {4, 12}});
  DataSet trusted = helpers::toy_data({{2, 6}, {3, 9}, {4, 12}});
  SynthesisResult r = forced_accuracy(g, data, trusted, zero_one_loss(), unit, lexicographic(),
                                      Weight::finite(0), 3);
  CHECK(format_program(r.program) == "(× x 3)");
  CHECK(r.loss == Weight::finite(1));  // loss on the full dataset

  // trusted = data with b = 0 equals exact synthesis under 0/inf.
  DataSet clean = helpers::toy_data({{1, 9}, {2, 12}});
  SynthesisResult exact = forced_accuracy(g, clean, clean, zero_inf_loss(), unit,
                                          lexicographic(), Weight::finite(0), 3);
  CHECK(exact.loss == Weight::finite(0));
  CHECK(format_program(exact.program) == "(× (+ x 2) 3)");

  // An empty trusted set behaves like plain synthesize.
  SynthesisResult plain = forced_accuracy(g, data, DataSet{}, zero_one_loss(), unit,
                                          lexicographic(), Weight::infinity(), 3);
  SynthesisResult direct = synthesize(g, data, zero_one_loss(), unit, lexicographic(), 3);
  CHECK(format_program(plain.program) == format_program(direct.program));
  CHECK(plain.objective == direct.objective);

  // Rows outside the dataset are rejected.
  DataSet outside = helpers::toy_data({{9, 1}});
  CHECK_THROWS_AS(forced_accuracy(g, data, outside, zero_one_loss(), unit, lexicographic(),
                                  Weight::finite(0), 3),
                  AutomatonError);

  // An unsatisfiable trusted bound reports no program.
  DataSet impossible = helpers::toy_data({{1, 100}});
  DataSet with_imp = data;
  with_imp.examples.push_back(impossible.examples[0]);
  CHECK_THROWS_AS(forced_accuracy(g, with_imp, impossible, zero_one_loss(), unit,
                                  lexicographic(), Weight::finite(0), 2),
                  NoProgram);
}

TEST_CASE("zero-inf synthesis agrees with consistency") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  std::mt19937_64 rng(505);
  for (int inst = 0; inst < 10; ++inst) {
    DataSet data = random_toy_data(rng, 2);
    SynthesisResult r = synthesize(g, data, zero_inf_loss(), unit, lexicographic(), 3);
    bool consistent_exists = false;
    for (const Program& p : oracle::enumerate_programs(g, 3))
      if (oracle::direct_loss(g, p, data, zero_inf_loss()) == Weight::finite(0)) {
        consistent_exists = true;
        break;
      }
    CHECK((r.loss == Weight::finite(0)) == consistent_exists);
    if (consistent_exists)
      for (const Example& ex : data.examples) {
        auto out = eval(g, r.program, ex.input);
        REQUIRE(out.has_value());
        CHECK(*out == ex.output);
      }
  }
}

TEST_CASE("synthesis is deterministic") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  DataSet data = helpers::toy_data({{1, 7}, {2, 9}});
  SynthesisResult a = synthesize(g, data, zero_one_loss(), unit, lexicographic(), 3);
  for (int i = 0; i < 3; ++i) {
    SynthesisResult b = synthesize(g, data, zero_one_loss(), unit, lexicographic(), 3);
    CHECK(format_program(a.program) == format_program(b.program));
    CHECK(a.objective == b.objective);
    CHECK(a.chosen_state == b.chosen_state);
  }
}

TEST_CASE("custom cost tables steer extraction") {
  Grammar g = toy_grammar();
  DataSet data = helpers::toy_data({{1, 9}});
  // Make x prohibitively expensive: the cheapest value-9 program changes.
  CostTable t;
  t.terminal_cost = {{"x", 100.0}, {"2", 1.0}, {"3", 1.0}};
  t.func_cost = {{"+", 1.0}, {"×", 1.0}};
  SynthesisResult r = synthesize(g, data, squared_error_loss(), t, lexicographic(), 3);
  CHECK(r.loss == Weight::finite(0));
  // Any value-9 program still contains x (the only input terminal), so the
  // minimum cost is 104 via a five-node program.
  CHECK(r.complexity == Weight::finite(104));
  auto best = oracle::best_objective(g, data, squared_error_loss(), t, lexicographic(), 3);
  REQUIRE(best.has_value());
  CHECK(r.objective == best->objective);
}
