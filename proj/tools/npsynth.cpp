#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nps/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Program synthesis over noisy input-output examples"};
  app.require_subcommand(1);

  nps::SynthArgs synth;
  CLI::App* s = app.add_subcommand("synth", "Synthesize a program from a dataset");
  s->add_option("--config", synth.config_path, "Problem config (JSON)")->required();
  s->add_option("--data", synth.dataset_path, "Dataset path (overrides the config's)");
  s->add_option("--timeout-sec", synth.timeout_sec,
                "Wall-clock limit in seconds; exceeding it exits 3");

  nps::EvalArgs ev;
  CLI::App* e = app.add_subcommand("eval", "Evaluate a program on a dataset");
  e->add_option("--config", ev.config_path, "Problem config (JSON)")->required();
  e->add_option("--data", ev.dataset_path, "Dataset path (overrides the config's)");
  e->add_option("--program", ev.program_text, "Program text, e.g. \"(× (+ x 2) 3)\"")->required();

  nps::CorruptArgs co;
  std::string noise = "cyclic_delete";
  std::size_t preserve_last = 0;
  double prob = 0.1;
  std::uint64_t seed = 1;
  CLI::App* c = app.add_subcommand("corrupt", "Apply a noise source to a dataset");
  c->add_option("--config", co.config_path, "Problem config (JSON)")->required();
  c->add_option("--data", co.dataset_path, "Dataset path (overrides the config's)");
  c->add_option("--out", co.output_path, "Corrupted dataset output path")->required();
  c->add_option("--noise", noise, "cyclic_delete or digit_replace")
      ->check(CLI::IsMember({"cyclic_delete", "digit_replace"}));
  c->add_option("--preserve-last", preserve_last, "cyclic_delete: rows at the tail left intact");
  c->add_option("--b", prob, "digit_replace: per-digit corruption probability");
  c->add_option("--seed", seed, "digit_replace: PRNG seed");

  nps::CleanArgs cl;
  CLI::App* l = app.add_subcommand("clean", "Flag and fix noisy rows via a synthesized program");
  l->add_option("--config", cl.config_path, "Problem config (JSON)")->required();
  l->add_option("--data", cl.dataset_path, "Dataset path (overrides the config's)");
  l->add_option("--out", cl.output_path, "Cleaned dataset output path")->required();
  l->add_option("--mode", cl.mode, "filter (drop flagged rows) or repair (rewrite outputs)")
      ->check(CLI::IsMember({"filter", "repair"}));

  nps::BenchArgs be;
  CLI::App* b = app.add_subcommand("bench", "Run every problem config in a directory");
  b->add_option("--dir", be.config_dir, "Directory of problem configs and datasets")->required();
  b->add_option("--timeout-sec", be.default_timeout_sec,
                "Per-problem wall-clock budget when the config names none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? nps::kExitOk : nps::kExitUsage;
  }

  if (s->parsed()) return nps::cmd_synth(synth, std::cout, std::cerr);
  if (e->parsed()) return nps::cmd_eval(ev, std::cout, std::cerr);
  if (c->parsed()) {
    if (noise == "cyclic_delete")
      co.spec = nps::CyclicDelete{preserve_last};
    else
      co.spec = nps::DigitReplace{prob, seed};
    return nps::cmd_corrupt(co, std::cout, std::cerr);
  }
  if (l->parsed()) return nps::cmd_clean(cl, std::cout, std::cerr);
  if (b->parsed()) return nps::cmd_bench(be, std::cout, std::cerr);
  return nps::kExitUsage;
}
