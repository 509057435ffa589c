#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "nps/objective.hpp"
#include "nps/sfta.hpp"

namespace nps {

// No accepting state exists (or none within the requested bound).
struct NoProgram : std::runtime_error {
  explicit NoProgram(const std::string& what) : std::runtime_error(what) {}
};

struct SynthesisResult {
  Program program;
  Weight loss;                 // dataset loss of program (the chosen state's weight)
  Weight complexity;           // cost of program under the run's cost table
  ObjectiveValue objective = ObjectiveValue::scalar(Weight());
  StateId chosen_state;
  std::size_t sfta_state_count = 0;
};

struct MinCostEntry {
  Program program;
  Weight cost;
};

// For each accepting state (keyed by state index): a minimum-cost program
// among those accepted when that state alone accepts. Computed by a monotone
// fixpoint over the automaton's transitions; ties broken toward fewer nodes,
// then the lexicographically smallest formatted text.
std::unordered_map<std::uint32_t, MinCostEntry> min_cost_per_state(const Sfta& a,
                                                                   const CostTable& t);

// Learn the program minimizing U(dataset loss, complexity) over all programs
// the height bound admits. Throws NoProgram when no accepting state exists.
SynthesisResult synthesize(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                           const CostTable& t, const Objective& u, int height_bound,
                           const BuildOptions& opts = {});

// Minimum-complexity program with dataset loss <= b; the reported objective
// is the scalar complexity. Throws NoProgram when nothing meets the bound.
SynthesisResult best_for_accuracy(const Grammar& g, const DataSet& data, const PerExampleLoss& L,
                                  const CostTable& t, Weight b, int height_bound,
                                  const BuildOptions& opts = {});

// Like synthesize, restricted to programs whose loss on the trusted subset
// is <= b. Throws NoProgram when the constrained automaton accepts nothing.
SynthesisResult forced_accuracy(const Grammar& g, const DataSet& data, const DataSet& trusted,
                                const PerExampleLoss& L, const CostTable& t, const Objective& u,
                                Weight b, int height_bound, const BuildOptions& opts = {});

}  // namespace nps
