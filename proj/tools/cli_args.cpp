// Copyright 2026 The finalstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_args.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace finalstate::cli {

namespace {

constexpr const char* kDescription =
    "Monte Carlo simulator for final-state projection channels.\n\n"
    "Experiments and default trial counts (each default keeps its acceptance\n"
    "tolerance at or above three predicted standard errors):\n"
    "  fidelity         500  mean sum(lambda)/sqrt(N) and Banaszek fidelity vs asymptotics\n"
    "  page            2000  entropy and purity vs exact Page/Lubkin averages\n"
    "  classical        500  decode every Schmidt-basis symbol through each channel\n"
    "  hm-check          50  unitarity of the no-interaction channel for random S\n"
    "  circuit-compare  300  brickwork circuits vs Haar states, KS on Schmidt spectra\n"
    "  schmidt-stats    500  Schmidt spectrum statistics for any final state/interaction\n\n"
    "Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 I/O error.";

bool set_ok(fs_status status, ParsedArgs& out) {
  if (status == FS_OK) return true;
  out.exit_code = kExitUsage;
  out.message = fs_last_error();
  return false;
}

}  // namespace

unsigned workers_from_environment() {
  const char* env = std::getenv("FINALSTATE_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0 || v > 4096) return 1;
  return static_cast<unsigned>(v);
}

ParsedArgs parse_args(const std::vector<std::string>& args, unsigned default_workers) {
  ParsedArgs out;

  CLI::App app{kDescription, "finalstate"};
  std::string experiment;
  std::uint64_t dim = 0;
  std::uint64_t qubits = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string final_state;
  std::string interaction;
  std::uint64_t depth = 0;
  std::string format = "json";
  std::string out_path;
  bool per_trial = false;
  std::uint64_t workers = default_workers;
  std::uint64_t inputs = 0;

  app.add_option("--experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(
          {"schmidt-stats", "fidelity", "page", "classical", "hm-check", "circuit-compare"}));
  auto* dim_opt = app.add_option("--dim", dim, "Matter dimension N");
  auto* qubits_opt = app.add_option("--qubits", qubits, "Qubits per side, N = 2^n");
  dim_opt->excludes(qubits_opt);
  auto* trials_opt = app.add_option("--trials", trials, "Number of trials (default per experiment)");
  app.add_option("--seed", seed, "Master seed (decimal 64-bit unsigned)");
  auto* final_opt = app.add_option("--final-state", final_state, "Final state")
                        ->check(CLI::IsMember({"hm", "haar", "product"}));
  auto* inter_opt = app.add_option("--interaction", interaction, "Matter/infalling interaction")
                        ->check(CLI::IsMember({"none", "haar-unitary", "haar-state", "circuit"}));
  auto* depth_opt = app.add_option("--depth", depth, "Circuit layers (default 4n)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Output path (default stdout)");
  app.add_flag("--per-trial", per_trial, "Include per-trial records");
  app.add_option("--workers", workers, "Worker threads (default $FINALSTATE_WORKERS or 1)");
  auto* inputs_opt =
      app.add_option("--inputs", inputs, "Random input states per channel in fidelity (default 32)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.exit_code = kExitOk;
    out.message = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = kExitUsage;
    out.message = e.what();
    return out;
  }

  fs_config* raw = nullptr;
  if (!set_ok(fs_config_create(&raw), out)) return out;
  out.config.reset(raw);
  fs_config* cfg = out.config.get();

  if (!set_ok(fs_config_set_experiment(cfg, experiment.c_str()), out)) return out;
  if (*dim_opt && !set_ok(fs_config_set_dim(cfg, dim), out)) return out;
  if (*qubits_opt && !set_ok(fs_config_set_qubits(cfg, qubits), out)) return out;
  if (*trials_opt && !set_ok(fs_config_set_trials(cfg, trials), out)) return out;
  if (!set_ok(fs_config_set_seed(cfg, seed), out)) return out;
  if (*final_opt && !set_ok(fs_config_set_final_state(cfg, final_state.c_str()), out)) return out;
  if (*inter_opt && !set_ok(fs_config_set_interaction(cfg, interaction.c_str()), out)) return out;
  if (*depth_opt && !set_ok(fs_config_set_depth(cfg, depth), out)) return out;
  if (!set_ok(fs_config_set_workers(cfg, workers), out)) return out;
  if (*inputs_opt && !set_ok(fs_config_set_inputs_per_trial(cfg, inputs), out)) return out;
  if (!set_ok(fs_config_set_per_trial(cfg, per_trial ? 1 : 0), out)) return out;
  if (!set_ok(fs_config_validate(cfg), out)) return out;

  out.format = format == "csv" ? FS_FORMAT_CSV : FS_FORMAT_JSON;
  out.out_path = out_path;
  return out;
}

int run(const ParsedArgs& parsed) {
  fs_result* result = nullptr;
  if (fs_run_experiment(parsed.config.get(), &result) != FS_OK) {
    std::cerr << "finalstate: " << fs_last_error() << "\n";
    return kExitChecksFailed;
  }
  const fs_status written = fs_result_write(result, parsed.format, parsed.out_path.c_str());
  const bool pass = fs_result_all_pass(result) == 1;
  fs_result_destroy(result);
  if (written != FS_OK) {
    std::cerr << "finalstate: " << fs_last_error() << "\n";
    return kExitIo;
  }
  return pass ? kExitOk : kExitChecksFailed;
}

}  // namespace finalstate::cli
