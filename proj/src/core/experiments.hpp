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

#pragma once

// Seeded Monte Carlo campaigns. Trial i draws everything from
// RngStream(seed, i), so results do not depend on how trials are scheduled
// across workers; aggregation always runs in trial-index order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projection.hpp"
#include "randsrc.hpp"

namespace finalstate::experiments {

enum class ExperimentKind { kSchmidtStats, kFidelity, kPage, kClassical, kHmCheck, kCircuitCompare };
enum class FinalStateKind { kHm, kHaar, kProduct };
enum class InteractionKind { kNone, kHaarUnitary, kHaarState, kCircuit };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(FinalStateKind kind);
std::string_view to_string(InteractionKind kind);
std::optional<ExperimentKind> parse_experiment(std::string_view name);
std::optional<FinalStateKind> parse_final_state(std::string_view name);
std::optional<InteractionKind> parse_interaction(std::string_view name);

/// Largest N accepted in random-state mode.
inline constexpr std::size_t kMaxDim = 1024;
inline constexpr double kDefaultSigmaMultiple = 3.0;

/// User-facing configuration; unset fields take per-experiment defaults.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kFidelity;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> qubits;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::optional<FinalStateKind> final_state;
  std::optional<InteractionKind> interaction;
  std::optional<std::size_t> depth;
  std::size_t workers = 1;
  std::optional<std::size_t> inputs_per_trial;
  double sigma_multiple = kDefaultSigmaMultiple;
};

/// Fully specified configuration.
struct ResolvedConfig {
  ExperimentKind experiment = ExperimentKind::kFidelity;
  std::size_t dim = 0;
  std::optional<std::size_t> qubits;  // per side; set when dim = 2^qubits came from --qubits
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  FinalStateKind final_state = FinalStateKind::kHaar;
  InteractionKind interaction = InteractionKind::kHaarState;
  std::size_t depth = 0;
  std::size_t workers = 1;
  std::size_t inputs_per_trial = 0;
  double sigma_multiple = kDefaultSigmaMultiple;
};

/// Default trial count per experiment.
std::size_t default_trials(ExperimentKind kind);

/// Fills defaults and validates. Throws kInvalidArgument for inconsistent
/// settings and kResourceCap for sizes beyond the documented caps.
ResolvedConfig resolve(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t index = 0;
  double trace_norm_sum = 0.0;
  double entropy_bits = 0.0;
  double purity = 0.0;
  double banaszek_f = 0.0;
  std::optional<double> mean_exact_f;
  std::optional<double> typical_f;
  std::optional<bool> classical_success;
  std::optional<std::size_t> symbols_decoded;
  std::optional<double> unitarity_defect;
  std::optional<double> process_fidelity;
  std::optional<double> reference_entropy_bits;
  bool annihilation_flag = false;
  std::size_t annihilations = 0;

  // Spectra kept for ensemble comparisons; not serialized.
  std::vector<double> lambdas;
  std::vector<double> reference_lambdas;
};

enum class CheckMode {
  /// |mean - theory| <= max(sigma_multiple * stderr, abs_tolerance).
  kMean,
  /// |value_i - theory_i| <= abs_tolerance for every trial.
  kEveryTrial,
  /// value <= abs_tolerance (mean is the statistic; theory is the target 0).
  kUpperBound,
};

struct MetricSpec {
  std::string name;
  CheckMode mode = CheckMode::kMean;
  double abs_tolerance = 0.0;
  bool checked = true;
};

struct Metric {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  std::optional<double> stderr_mean;  // empty for a single sample
  std::optional<double> theory;
  std::optional<double> abs_dev;
  std::optional<double> worst_dev;    // kEveryTrial only
  double tolerance = 0.0;
  bool checked = false;
  bool pass = true;
};

/// Mean, standard error (sample stddev / sqrt(count)) and the check
/// described by spec. theory is either empty, one value, or one per sample.
/// Throws kInvalidArgument on empty values.
Metric aggregate(std::span<const double> values, std::span<const double> theory,
                 const MetricSpec& spec, double sigma_multiple = kDefaultSigmaMultiple);

struct Summary {
  ResolvedConfig config;
  std::vector<Metric> metrics;
  std::vector<std::pair<std::string, double>> references;
  std::vector<TrialRecord> records;
  std::size_t annihilations = 0;

  bool all_pass() const;
  const Metric* find(std::string_view name) const;
  std::optional<double> reference(std::string_view name) const;
};

Summary run_experiment(const ExperimentConfig& cfg);
Summary run_experiment(const ResolvedConfig& cfg);

struct ClassicalOutcome {
  std::size_t symbol = 0;
  std::optional<std::size_t> decoded;  // empty when annihilated
  bool success = false;
  bool annihilated = false;
};

/// Encodes `symbol` as the matching matter Schmidt vector, sends it through
/// the channel and decodes by the most likely out Schmidt basis vector.
ClassicalOutcome classical_escape_trial(const projection::ProjectionChannel& ch, std::size_t symbol);
/// Same, with a uniformly random symbol.
ClassicalOutcome classical_escape_trial(const projection::ProjectionChannel& ch,
                                        randsrc::RngStream& rng);

struct FidelityAverage {
  double mean = 0.0;           // over non-annihilated inputs; NaN if none
  std::size_t used = 0;
  std::size_t annihilated = 0;
};

/// Mean escape_fidelity over n_inputs uniformly random input states.
FidelityAverage mean_exact_fidelity(const projection::ProjectionChannel& ch, std::size_t n_inputs,
                                    randsrc::RngStream& rng);
FidelityAverage mean_exact_fidelity(std::span<const double> lambdas, std::size_t n_inputs,
                                    randsrc::RngStream& rng);

}  // namespace finalstate::experiments
