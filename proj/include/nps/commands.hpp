#pragma once

#include <iosfwd>
#include <string>

#include "nps/config.hpp"
#include "nps/noise.hpp"
#include "nps/synthesis.hpp"

namespace nps {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // usage and I/O errors
inline constexpr int kExitNoProgram = 2;
inline constexpr int kExitTimeout = 3;

// Run the synthesis variant the config asks for: forced_accuracy when
// trusted_indices are given, best_for_accuracy when only a bound is given,
// synthesize otherwise. Throws NoProgram like the underlying functions.
SynthesisResult run_problem(const ProblemConfig& c, const Problem& p, const DataSet& data);

struct SynthArgs {
  std::string config_path;
  std::string dataset_path;  // overrides the config's dataset when nonempty
  double timeout_sec = 0;    // > 0: run forked under a wall-clock deadline
};
// Prints program, loss, complexity, objective, state count, and elapsed
// time. A result whose dataset loss is infinite counts as "no program".
int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream& err);

struct EvalArgs {
  std::string config_path;
  std::string dataset_path;
  std::string program_text;
};
// Per-example outputs and losses for a given program, plus totals.
int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err);

struct CorruptArgs {
  std::string config_path;
  std::string dataset_path;
  std::string output_path;
  NoiseSpec spec;
};
// Writes the corrupted dataset plus a "<output>.provenance.json" sidecar
// recording the noise kind, parameters, and source.
int cmd_corrupt(const CorruptArgs& a, std::ostream& out, std::ostream& err);

struct CleanArgs {
  std::string config_path;
  std::string dataset_path;
  std::string output_path;
  std::string mode = "filter";  // "filter" drops flagged rows, "repair" rewrites them
};
// Synthesizes a program, flags rows with positive per-example loss, and
// writes the cleaned dataset.
int cmd_clean(const CleanArgs& a, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::string config_dir;
  double default_timeout_sec = 600;
};
// One table row per config file in the directory: time, SFTA states, loss,
// program size. No-program rows show X, timed-out rows show "-". Each
// problem runs in its own forked process.
int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err);

}  // namespace nps
