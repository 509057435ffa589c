#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nps/cfta.hpp"
#include "nps/loss.hpp"
#include "nps/weight.hpp"

namespace nps {

// State-weighted tree automaton: a Cfta whose accepting states each carry a
// weight, the loss shared by every program some run of which ends there.
struct Sfta {
  Cfta base;
  std::vector<Weight> weights;  // parallel to base.accepting

  std::size_t num_accepting() const { return base.accepting.size(); }
  // Weight of an accepting state (by state index); throws AutomatonError
  // when the state is not accepting.
  Weight weight_of(std::uint32_t state) const;
};

// Weighted automaton for one example: states and transitions as build_cfta,
// but every realizable start-symbol state q with value c accepts, weighted
// L(output, c).
Sfta build_sfta(const Grammar& g, const Env& env, const Value& output, const PerExampleLoss& L,
                int height_bound, const BuildOptions& opts = {});

// Weighted automaton over a whole dataset, built directly with states keyed
// by value vectors; accepting weights sum the per-example losses. Duplicate
// examples collapse first under the 0/inf loss (where repetition cannot
// change any weight); dedup_count, when given, receives how many were
// dropped.
Sfta build_sfta_dataset(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                        int height_bound, const BuildOptions& opts = {},
                        std::size_t* dedup_count = nullptr);

// Product automaton; paired accepting states' weights add.
Sfta plus_intersect(const Sfta& a, const Sfta& b);

// Product with an unweighted automaton: accepting requires both components
// accepting, and weights carry over from the left operand.
Sfta slash_intersect(const Sfta& a, const Cfta& c);

// Shrink the accepting set to states of weight <= w0; states and transitions
// stay untouched.
Sfta prune(const Sfta& a, Weight w0);

// Same states and transitions with the accepting set reduced to {q}; throws
// AutomatonError when q is not accepting.
Cfta select(const Sfta& a, const StateId& q);
Cfta select(const Sfta& a, std::uint32_t state);

// Forget the weights.
Cfta to_cfta(const Sfta& a);

// Distinct accepting weights, ascending, with multiplicities; finite weights
// closer than tol merge into one bucket.
std::vector<std::pair<Weight, std::size_t>> weight_histogram(const Sfta& a, double tol = 1e-9);

}  // namespace nps
