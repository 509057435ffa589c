#include "nps/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace nps {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DataSet trusted_subset(const ProblemConfig& c, const DataSet& data) {
  DataSet t;
  for (std::size_t idx : c.trusted_indices) {
    if (idx >= data.size())
      throw ConfigError("trusted index " + std::to_string(idx) + " is out of range");
    t.examples.push_back(data.examples[idx]);
  }
  return t;
}

std::size_t duplicate_rows(const DataSet& data) {
  std::size_t dup = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (data.examples[i].input == data.examples[j].input &&
          data.examples[i].output == data.examples[j].output) {
        ++dup;
        break;
      }
  return dup;
}

void print_report(std::ostream& out, const SynthesisResult& r, double elapsed) {
  out << "program: " << format_program(r.program) << "\n";
  out << "loss: " << to_string(r.loss) << "\n";
  out << "complexity: " << to_string(r.complexity) << "\n";
  out << "objective: " << to_string(r.objective) << "\n";
  out << "sfta_states: " << r.sfta_state_count << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", elapsed);
  out << "time_sec: " << buf << "\n";
}

// Loads everything a run needs; throws ConfigError on bad inputs.
struct LoadedProblem {
  ProblemConfig config;
  Problem problem;
  DataSet data;
};

LoadedProblem load_all(const std::string& config_path, const std::string& dataset_override) {
  LoadedProblem lp{load_config(config_path), {}, {}};
  if (!dataset_override.empty()) lp.config.dataset = dataset_override;
  if (lp.config.dataset.empty())
    throw ConfigError("no dataset: set \"dataset\" in the config or pass --data");
  lp.problem = make_problem(lp.config);
  lp.data = load_dataset(lp.config.dataset, lp.config.dsl);
  return lp;
}

int synth_into(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem lp = load_all(a.config_path, a.dataset_path);
    auto t0 = std::chrono::steady_clock::now();
    if (lp.config.loss == "0inf") {
      std::size_t dup = duplicate_rows(lp.data);
      if (dup) out << "deduplicated: " << dup << "\n";
    }
    SynthesisResult r;
    try {
      r = run_problem(lp.config, lp.problem, lp.data);
    } catch (const NoProgram& e) {
      out << "no program: " << e.what() << "\n";
      return kExitNoProgram;
    }
    print_report(out, r, seconds_since(t0));
    if (r.loss.is_infinite()) {
      out << "no program: the minimum dataset loss is infinite\n";
      return kExitNoProgram;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// Forks fn and waits at most timeout_sec; the child's exit code passes
// through, a missed deadline yields kExitTimeout. The child exits via
// _exit, which skips buffered-stream flushing, so fn must flush anything
// it wants delivered.
int run_with_deadline(double timeout_sec, const std::function<int()>& fn) {
  pid_t pid = fork();
  if (pid < 0) return kExitUsage;
  if (pid == 0) _exit(fn());
  auto t0 = std::chrono::steady_clock::now();
  for (;;) {
    int status = 0;
    pid_t got = waitpid(pid, &status, WNOHANG);
    if (got == pid) {
      if (WIFEXITED(status)) return WEXITSTATUS(status);
      return kExitUsage;
    }
    if (seconds_since(t0) > timeout_sec) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return kExitTimeout;
    }
    usleep(2000);
  }
}

}  // namespace

SynthesisResult run_problem(const ProblemConfig& c, const Problem& p, const DataSet& data) {
  const Weight b = c.bound ? (std::isinf(*c.bound) ? Weight::infinity() : Weight::finite(*c.bound))
                           : Weight();
  if (!c.trusted_indices.empty())
    return forced_accuracy(*p.grammar, data, trusted_subset(c, data), p.loss, p.table, p.objective,
                           b, c.height, p.build);
  if (c.bound)
    return best_for_accuracy(*p.grammar, data, p.loss, p.table, b, c.height, p.build);
  return synthesize(*p.grammar, data, p.loss, p.table, p.objective, c.height, p.build);
}

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  if (a.timeout_sec > 0) {
    out.flush();
    err.flush();
    return run_with_deadline(a.timeout_sec, [&] {
      int rc = synth_into(a, out, err);
      out.flush();
      err.flush();
      return rc;
    });
  }
  return synth_into(a, out, err);
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem lp = load_all(a.config_path, a.dataset_path);
    Program p;
    try {
      p = parse_program(a.program_text, *lp.problem.grammar);
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    Weight total;
    for (std::size_t i = 0; i < lp.data.size(); ++i) {
      const Example& ex = lp.data.examples[i];
      std::optional<Value> got = eval(*lp.problem.grammar, p, ex.input);
      Weight w = got ? lp.problem.loss(ex.output, *got) : Weight::infinity();
      total += w;
      out << "row " << i << ": output " << (got ? to_string(*got) : "undefined") << " loss "
          << to_string(w) << "\n";
    }
    out << "total_loss: " << to_string(total) << "\n";
    out << "complexity: " << to_string(cost(p, lp.problem.table)) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_corrupt(const CorruptArgs& a, std::ostream& out, std::ostream& err) {
  try {
    ProblemConfig c = load_config(a.config_path);
    if (!a.dataset_path.empty()) c.dataset = a.dataset_path;
    if (c.dataset.empty()) throw ConfigError("no dataset to corrupt");
    if (a.output_path.empty()) throw ConfigError("corrupt needs an output path");
    DataSet data = load_dataset(c.dataset, c.dsl);
    DataSet noisy = apply_noise(data, a.spec);
    save_dataset(noisy, a.output_path, c.dsl);

    nlohmann::json prov{{"noise", noise_name(a.spec)}, {"source", c.dataset}};
    if (const auto* cd = std::get_if<CyclicDelete>(&a.spec)) {
      prov["preserve_last"] = cd->preserve_last;
    } else {
      const auto& dr = std::get<DigitReplace>(a.spec);
      prov["b"] = dr.b;
      prov["seed"] = dr.seed;
    }
    const std::string sidecar = a.output_path + ".provenance.json";
    std::ofstream sc(sidecar, std::ios::binary);
    if (!sc) throw ConfigError("cannot write " + sidecar);
    sc << prov.dump(2) << "\n";

    out << "wrote " << a.output_path << " (" << noisy.size() << " examples)\n";
    out << "wrote " << sidecar << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_clean(const CleanArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mode != "filter" && a.mode != "repair") {
    err << "error: mode must be filter or repair\n";
    return kExitUsage;
  }
  try {
    LoadedProblem lp = load_all(a.config_path, a.dataset_path);
    if (a.output_path.empty()) throw ConfigError("clean needs an output path");
    SynthesisResult r;
    try {
      r = run_problem(lp.config, lp.problem, lp.data);
    } catch (const NoProgram& e) {
      out << "no program: " << e.what() << "\n";
      return kExitNoProgram;
    }
    out << "program: " << format_program(r.program) << "\n";
    DataSet cleaned;
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < lp.data.size(); ++i) {
      const Example& ex = lp.data.examples[i];
      std::optional<Value> got = eval(*lp.problem.grammar, r.program, ex.input);
      Weight w = got ? lp.problem.loss(ex.output, *got) : Weight::infinity();
      if (w == Weight()) {
        cleaned.examples.push_back(ex);
        continue;
      }
      ++flagged;
      if (a.mode == "repair" && got) {
        out << "row " << i << ": loss " << to_string(w) << " -> repaired\n";
        cleaned.examples.push_back({ex.input, *got});
      } else {
        out << "row " << i << ": loss " << to_string(w) << " -> filtered\n";
      }
    }
    save_dataset(cleaned, a.output_path, lp.config.dsl);
    out << "flagged: " << flagged << " of " << lp.data.size() << "\n";
    out << "wrote " << a.output_path << " (" << cleaned.size() << " examples)\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

namespace {

struct BenchRow {
  std::string name;
  std::string time = "-";
  std::string states = "-";
  std::string loss = "-";
  std::string size = "-";
};

// Child-side runner: prints "<time> <states> <loss> <size>" to fd. No-program
// results use X per the table notation; states stay "-" when the automaton
// was never built.
int bench_child(const std::string& config_path, int fd) {
  try {
    LoadedProblem lp = load_all(config_path, "");
    auto t0 = std::chrono::steady_clock::now();
    std::string line;
    try {
      SynthesisResult r = run_problem(lp.config, lp.problem, lp.data);
      char buf[160];
      if (r.loss.is_infinite()) {
        std::snprintf(buf, sizeof buf, "%.2f %zu X X\n", seconds_since(t0), r.sfta_state_count);
      } else {
        std::snprintf(buf, sizeof buf, "%.2f %zu %s %zu\n", seconds_since(t0),
                      r.sfta_state_count, to_string(r.loss).c_str(), program_size(r.program));
      }
      line = buf;
    } catch (const NoProgram&) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.2f - X X\n", seconds_since(t0));
      line = buf;
    }
    if (write(fd, line.data(), line.size()) < 0) return kExitUsage;
    return kExitOk;
  } catch (const std::exception&) {
    return kExitUsage;
  }
}

}  // namespace

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> configs;
  try {
    for (const auto& entry : fs::directory_iterator(a.config_dir)) {
      const std::string p = entry.path().string();
      if (!entry.is_regular_file() || !p.ends_with(".json") || p.ends_with(".provenance.json"))
        continue;
      // Dataset files (objects with an "examples" array) share the directory;
      // everything else is a problem config.
      try {
        std::ifstream in(p, std::ios::binary);
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.is_object() && j.contains("examples")) continue;
      } catch (const nlohmann::json::exception&) {
        // leave malformed files to the per-problem error path
      }
      configs.push_back(p);
    }
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) {
    err << "error: no config files in " << a.config_dir << "\n";
    return kExitUsage;
  }

  std::vector<BenchRow> rows;
  for (const std::string& cfg : configs) {
    BenchRow row;
    row.name = fs::path(cfg).stem().string();
    double timeout = a.default_timeout_sec;
    try {
      timeout = load_config(cfg).timeout_sec;
    } catch (const std::exception& e) {
      err << row.name << ": " << e.what() << "\n";
      row.loss = "X";
      row.size = "X";
      rows.push_back(row);
      continue;
    }

    int fds[2];
    if (pipe(fds) != 0) {
      err << "error: pipe failed\n";
      return kExitUsage;
    }
    pid_t pid = fork();
    if (pid < 0) {
      err << "error: fork failed\n";
      return kExitUsage;
    }
    if (pid == 0) {
      close(fds[0]);
      _exit(bench_child(cfg, fds[1]));
    }
    close(fds[1]);
    auto t0 = std::chrono::steady_clock::now();
    bool timed_out = false;
    int status = 0;
    for (;;) {
      pid_t got = waitpid(pid, &status, WNOHANG);
      if (got == pid) break;
      if (seconds_since(t0) > timeout) {
        kill(pid, SIGKILL);
        waitpid(pid, &status, 0);
        timed_out = true;
        break;
      }
      usleep(2000);
    }
    if (!timed_out) {
      char buf[256];
      ssize_t n = read(fds[0], buf, sizeof buf - 1);
      if (n > 0) {
        buf[n] = '\0';
        std::istringstream line(buf);
        line >> row.time >> row.states >> row.loss >> row.size;
      } else if (WIFEXITED(status) && WEXITSTATUS(status) != kExitOk) {
        row.loss = "X";
        row.size = "X";
        err << row.name << ": run failed\n";
      }
    }
    close(fds[0]);
    rows.push_back(row);
  }

  std::size_t name_w = 7;
  for (const BenchRow& r : rows) name_w = std::max(name_w, r.name.size());
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(s.size() < w ? w - s.size() : 0, ' ');
  };
  out << pad("problem", name_w) << "  time_s    states    loss      size\n";
  for (const BenchRow& r : rows)
    out << pad(r.name, name_w) << "  " << pad(r.time, 8) << "  " << pad(r.states, 8) << "  "
        << pad(r.loss, 8) << "  " << r.size << "\n";
  return kExitOk;
}

}  // namespace nps
