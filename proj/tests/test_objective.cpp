#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "nps/objective.hpp"
#include "oracle.hpp"

using namespace nps;

TEST_CASE("unit cost table makes complexity equal program size") {
  Grammar g = toy_grammar();
  CostTable unit = CostTable::unit(g);
  for (const Program& p : oracle::enumerate_programs(g, 3))
    CHECK(cost(p, unit) == Weight::finite(double(program_size(p))));
}

TEST_CASE("cost sums table entries over the tree") {
  Grammar g = toy_grammar();
  CostTable t;
  t.terminal_cost = {{"x", 2.5}, {"2", 1.0}, {"3", 1.0}};
  t.func_cost = {{"+", 1.0}, {"×", 4.0}};
  CHECK(cost(parse_program("x", g), t) == Weight::finite(2.5));
  CHECK(cost(parse_program("(+ x 2)", g), t) == Weight::finite(4.5));
  CHECK(cost(parse_program("(× (+ x 2) 3)", g), t) == Weight::finite(9.5));

  CostTable unit = CostTable::unit(g);
  CHECK(cost(parse_program("(+ x 2)", g), unit) == Weight::finite(3));

  CostTable missing;
  missing.func_cost = {{"+", 1.0}};
  CHECK_THROWS_AS(cost(parse_program("(+ x 2)", g), missing), ObjectiveError);
  CostTable negative;
  negative.terminal_cost = {{"x", -1.0}};
  CHECK_THROWS_AS(cost(parse_program("x", g), negative), ObjectiveError);
}

TEST_CASE("cost agrees with the oracle walk") {
  Grammar g = toy_grammar();
  CostTable t;
  t.terminal_cost = {{"x", 0.5}, {"2", 2.0}, {"3", 0.25}};
  t.func_cost = {{"+", 1.5}, {"×", 3.0}};
  for (const Program& p : oracle::enumerate_programs(g, 3))
    CHECK(cost(p, t) == oracle::direct_cost(p, t));
}

TEST_CASE("tradeoff objective") {
  Objective u = tradeoff(0.1);
  CHECK(u(Weight::finite(2), Weight::finite(5)) == ObjectiveValue::scalar(Weight::finite(2.5)));
  CHECK(u(Weight::infinity(), Weight::finite(1)).scalar_value().is_infinite());
  Objective u2 = tradeoff(0.001);
  CHECK(u2(Weight::finite(0), Weight::finite(17))
            .scalar_value()
            .approx_equal(Weight::finite(0.017)));
  CHECK_THROWS_AS(tradeoff(0.0), ObjectiveError);
  CHECK_THROWS_AS(tradeoff(-1.0), ObjectiveError);
}

TEST_CASE("lexicographic objective ordering") {
  Objective u = lexicographic();
  ObjectiveValue a = u(Weight::finite(0), Weight::finite(5));
  ObjectiveValue b = u(Weight::finite(1), Weight::finite(1));
  CHECK(a < b);  // loss dominates
  CHECK(u(Weight::finite(1), Weight::finite(1)) < u(Weight::finite(1), Weight::finite(2)));
  CHECK(u(Weight::finite(5), Weight::finite(999)) < u(Weight::infinity(), Weight::finite(1)));
  CHECK(a == u(Weight::finite(0), Weight::finite(5)));
  CHECK(a <= a);
  auto [l, c] = a.lex_value();
  CHECK(l == Weight::finite(0));
  CHECK(c == Weight::finite(5));
}

TEST_CASE("objective values of different kinds never compare") {
  ObjectiveValue s = ObjectiveValue::scalar(Weight::finite(1));
  ObjectiveValue p = ObjectiveValue::lex_pair(Weight::finite(1), Weight::finite(1));
  CHECK(s.is_scalar());
  CHECK_FALSE(p.is_scalar());
  CHECK_THROWS_AS((void)(s < p), ObjectiveError);
  CHECK_THROWS_AS((void)(s == p), ObjectiveError);
  CHECK_THROWS_AS(s.lex_value(), ObjectiveError);
  CHECK_THROWS_AS(p.scalar_value(), ObjectiveError);
  CHECK(to_string(s) == "1");
  CHECK(to_string(p) == "(1, 1)");
  CHECK(to_string(ObjectiveValue::lex_pair(Weight::infinity(), Weight::finite(2))) == "(inf, 2)");
}

TEST_CASE("approximate equality on objective values") {
  ObjectiveValue a = ObjectiveValue::scalar(Weight::finite(1.0));
  ObjectiveValue b = ObjectiveValue::scalar(Weight::finite(1.0 + 1e-12));
  CHECK(a.approx_equal(b));
  CHECK_FALSE(a.approx_equal(ObjectiveValue::scalar(Weight::finite(1.1))));
}

TEST_CASE("objective lookup by name") {
  auto lex = objective_by_name("lex");
  REQUIRE(lex.has_value());
  CHECK(lex->name == "lex");
  auto tr = objective_by_name("tradeoff:0.1");
  REQUIRE(tr.has_value());
  CHECK(tr->fn(Weight::finite(2), Weight::finite(5)) ==
        ObjectiveValue::scalar(Weight::finite(2.5)));
  CHECK_FALSE(objective_by_name("tradeoff:0").has_value());
  CHECK_FALSE(objective_by_name("tradeoff:-1").has_value());
  CHECK_FALSE(objective_by_name("tradeoff:x").has_value());
  CHECK_FALSE(objective_by_name("tradeoff:1junk").has_value());
  CHECK_FALSE(objective_by_name("huh").has_value());
}

TEST_CASE("monotonicity contract") {
  CHECK_NOTHROW(check_monotone(lexicographic()));
  CHECK_NOTHROW(check_monotone(tradeoff(0.001)));
  CHECK_NOTHROW(check_monotone(tradeoff(1.0)));
  // An objective decreasing in complexity violates the contract.
  Objective broken{"broken", [](Weight l, Weight c) {
                     double penalty = c.is_infinite() ? 0.0 : 1000.0 - c.raw();
                     return ObjectiveValue::scalar(l + Weight::finite(penalty < 0 ? 0 : penalty));
                   }};
  CHECK_THROWS_AS(check_monotone(broken), ObjectiveError);
}
