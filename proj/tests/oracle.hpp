#pragma once

// Independent reference implementations used to cross-check the engine:
// exhaustive program enumeration, a naive edit distance, and brute-force
// objective minimization. Deliberately simple and slow; none of it touches
// the automaton code paths it is used to validate.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nps/dsl.hpp"
#include "nps/loss.hpp"
#include "nps/objective.hpp"

namespace oracle {

// Every program derivable from g's start symbol in which no chain of
// directly nested applications of productions of one nonterminal is longer
// than height_bound. Descending into an argument of a different nonterminal
// restores the full budget for that symbol's own chains. Assumes the grammar
// recurses only through a production's own left-hand symbol, which holds for
// both shipped grammars.
std::vector<nps::Program> enumerate_programs(const nps::Grammar& g, int height_bound);

// Edit distance with unit-cost substitution, insertion, deletion, and
// adjacent transposition, by direct recursion on string positions.
std::size_t naive_dl(const std::u32string& a, const std::u32string& b);

struct Best {
  nps::Program program;
  nps::Weight loss;
  nps::Weight complexity;
  nps::ObjectiveValue objective = nps::ObjectiveValue::scalar(nps::Weight());
};

// Brute-force argmin of u(dataset loss, complexity) over enumerate_programs,
// ties broken toward smaller complexity, then smaller formatted text. Absent
// when the grammar derives no program at all within the bound.
std::optional<Best> best_objective(const nps::Grammar& g, const nps::DataSet& data,
                                   const nps::PerExampleLoss& L, const nps::CostTable& t,
                                   const nps::Objective& u, int height_bound);

// Dataset loss of p computed by a direct loop over the examples.
nps::Weight direct_loss(const nps::Grammar& g, const nps::Program& p, const nps::DataSet& data,
                        const nps::PerExampleLoss& L);

// Complexity of p computed by a direct walk over the tree.
nps::Weight direct_cost(const nps::Program& p, const nps::CostTable& t);

}  // namespace oracle
