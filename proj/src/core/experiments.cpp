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

#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "circuits.hpp"
#include "error.hpp"
#include "stats.hpp"

namespace finalstate::experiments {

using linalg::Complex;
using linalg::ComplexMatrix;
using projection::ProjectionChannel;
using randsrc::RngStream;

namespace {

constexpr std::size_t kDefaultInputsPerTrial = 32;
constexpr double kTraceNormTolerance = 0.01;
constexpr double kAsymptoticFidelityTolerance = 0.02;
constexpr double kAsymptoticFidelityToleranceLargeN = 0.01;
constexpr std::size_t kLargeN = 256;
constexpr double kExactTolerance = 1e-10;
constexpr double kCircuitEntropyTolerance = 0.05;
constexpr double kKsSignificance = 0.01;

template <class Enum>
struct NameTable {
  Enum value;
  std::string_view name;
};

constexpr NameTable<ExperimentKind> kExperimentNames[] = {
    {ExperimentKind::kSchmidtStats, "schmidt-stats"}, {ExperimentKind::kFidelity, "fidelity"},
    {ExperimentKind::kPage, "page"},                  {ExperimentKind::kClassical, "classical"},
    {ExperimentKind::kHmCheck, "hm-check"},           {ExperimentKind::kCircuitCompare, "circuit-compare"},
};
constexpr NameTable<FinalStateKind> kFinalStateNames[] = {
    {FinalStateKind::kHm, "hm"}, {FinalStateKind::kHaar, "haar"}, {FinalStateKind::kProduct, "product"}};
constexpr NameTable<InteractionKind> kInteractionNames[] = {
    {InteractionKind::kNone, "none"},
    {InteractionKind::kHaarUnitary, "haar-unitary"},
    {InteractionKind::kHaarState, "haar-state"},
    {InteractionKind::kCircuit, "circuit"},
};

template <class Enum, std::size_t K>
std::string_view lookup_name(const NameTable<Enum> (&table)[K], Enum value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  return "unknown";
}

template <class Enum, std::size_t K>
std::optional<Enum> lookup_value(const NameTable<Enum> (&table)[K], std::string_view name) {
  for (const auto& e : table)
    if (e.name == name) return e.value;
  return std::nullopt;
}

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

std::size_t default_dim(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSchmidtStats: return 16;
    case ExperimentKind::kFidelity: return 64;
    case ExperimentKind::kPage: return 8;
    case ExperimentKind::kClassical: return 16;
    case ExperimentKind::kHmCheck: return 8;
    case ExperimentKind::kCircuitCompare: return 32;
  }
  return 16;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) { return static_cast<std::size_t>(std::countr_zero(n)); }

}  // namespace

std::string_view to_string(ExperimentKind kind) { return lookup_name(kExperimentNames, kind); }
std::string_view to_string(FinalStateKind kind) { return lookup_name(kFinalStateNames, kind); }
std::string_view to_string(InteractionKind kind) { return lookup_name(kInteractionNames, kind); }

std::optional<ExperimentKind> parse_experiment(std::string_view name) {
  return lookup_value(kExperimentNames, name);
}
std::optional<FinalStateKind> parse_final_state(std::string_view name) {
  return lookup_value(kFinalStateNames, name);
}
std::optional<InteractionKind> parse_interaction(std::string_view name) {
  return lookup_value(kInteractionNames, name);
}

std::size_t default_trials(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSchmidtStats: return 500;
    case ExperimentKind::kFidelity: return 500;
    case ExperimentKind::kPage: return 2000;
    case ExperimentKind::kClassical: return 500;
    case ExperimentKind::kHmCheck: return 50;
    case ExperimentKind::kCircuitCompare: return 300;
  }
  return 500;
}

ResolvedConfig resolve(const ExperimentConfig& cfg) {
  ResolvedConfig out;
  out.experiment = cfg.experiment;
  out.seed = cfg.seed;

  if (cfg.dim && cfg.qubits) invalid("--dim and --qubits are mutually exclusive");
  if (cfg.qubits) {
    if (*cfg.qubits == 0) invalid("qubits must be at least 1");
    if (*cfg.qubits > 10) {
      throw Error(ErrorCode::kResourceCap, "qubits per side limited to 10 (N <= 1024)");
    }
    out.qubits = *cfg.qubits;
    out.dim = std::size_t{1} << *cfg.qubits;
  } else {
    out.dim = cfg.dim.value_or(default_dim(cfg.experiment));
  }
  if (out.dim == 0) invalid("dim must be at least 1");
  if (out.dim > kMaxDim) {
    std::ostringstream msg;
    msg << "dim limited to N <= " << kMaxDim << " (got " << out.dim << ")";
    throw Error(ErrorCode::kResourceCap, msg.str());
  }

  out.trials = cfg.trials.value_or(default_trials(cfg.experiment));
  if (out.trials == 0) invalid("trials must be at least 1");
  if (cfg.workers == 0) invalid("workers must be at least 1");
  out.workers = cfg.workers;
  out.inputs_per_trial = cfg.inputs_per_trial.value_or(kDefaultInputsPerTrial);
  if (out.inputs_per_trial == 0) invalid("inputs per trial must be at least 1");
  if (!(cfg.sigma_multiple > 0.0)) invalid("sigma multiple must be positive");
  out.sigma_multiple = cfg.sigma_multiple;

  const bool hm = cfg.experiment == ExperimentKind::kHmCheck;
  const bool compare = cfg.experiment == ExperimentKind::kCircuitCompare;
  out.final_state = cfg.final_state.value_or(hm ? FinalStateKind::kHm : FinalStateKind::kHaar);
  out.interaction = cfg.interaction.value_or(
      hm ? InteractionKind::kNone : (compare ? InteractionKind::kCircuit : InteractionKind::kHaarState));

  if (hm && (out.final_state != FinalStateKind::kHm || out.interaction != InteractionKind::kNone)) {
    invalid("hm-check requires --final-state hm and --interaction none");
  }
  if (compare && out.interaction != InteractionKind::kCircuit) {
    invalid("circuit-compare requires --interaction circuit");
  }
  if (out.interaction == InteractionKind::kHaarUnitary &&
      out.dim > projection::kExplicitInteractionMaxDim) {
    std::ostringstream msg;
    msg << "interaction haar-unitary materializes an N^2 x N^2 unitary and is limited to N <= "
        << projection::kExplicitInteractionMaxDim << " (got " << out.dim << ")";
    throw Error(ErrorCode::kResourceCap, msg.str());
  }
  if (out.interaction == InteractionKind::kCircuit) {
    if (!is_power_of_two(out.dim) || out.dim < 2) {
      invalid("circuit interaction needs N = 2^n with n >= 1");
    }
    const std::size_t n = log2_exact(out.dim);
    if (2 * n > circuits::kMaxTotalQubits) {
      throw Error(ErrorCode::kResourceCap, "circuit interaction limited to 10 qubits per side");
    }
    out.qubits = n;
    out.depth = cfg.depth.value_or(4 * n);
  } else if (cfg.depth) {
    invalid("--depth only applies to the circuit interaction");
  }
  return out;
}

Metric aggregate(std::span<const double> values, std::span<const double> theory,
                 const MetricSpec& spec, double sigma_multiple) {
  if (values.empty()) invalid("aggregate needs at least one value for metric " + spec.name);
  if (!theory.empty() && theory.size() != 1 && theory.size() != values.size()) {
    invalid("aggregate: theory must be empty, scalar or per-sample for metric " + spec.name);
  }
  Metric m;
  m.name = spec.name;
  m.count = values.size();
  m.checked = spec.checked;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    const double n = static_cast<double>(values.size());
    m.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  }

  if (!theory.empty()) {
    double tsum = 0.0;
    for (double t : theory) tsum += t;
    m.theory = tsum / static_cast<double>(theory.size());
    m.abs_dev = std::abs(m.mean - *m.theory);
    if (spec.mode == CheckMode::kEveryTrial) {
      double worst = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = theory.size() == 1 ? theory[0] : theory[i];
        const double dev = std::abs(values[i] - t);
        worst = std::isnan(dev) ? dev : std::max(worst, dev);
        if (std::isnan(worst)) break;
      }
      m.worst_dev = worst;
    }
  }

  switch (spec.mode) {
    case CheckMode::kMean:
      m.tolerance = std::max(sigma_multiple * m.stderr_mean.value_or(0.0), spec.abs_tolerance);
      break;
    case CheckMode::kEveryTrial:
    case CheckMode::kUpperBound:
      m.tolerance = spec.abs_tolerance;
      break;
  }

  if (!m.checked || (!m.theory && spec.mode != CheckMode::kUpperBound)) {
    m.pass = true;
  } else if (spec.mode == CheckMode::kMean) {
    m.pass = *m.abs_dev <= m.tolerance;
  } else if (spec.mode == CheckMode::kEveryTrial) {
    m.pass = *m.worst_dev <= m.tolerance;
  } else {
    m.pass = m.mean <= m.tolerance;
  }
  return m;
}

bool Summary::all_pass() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

const Metric* Summary::find(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}

std::optional<double> Summary::reference(std::string_view name) const {
  for (const auto& [key, value] : references)
    if (key == name) return value;
  return std::nullopt;
}

ClassicalOutcome classical_escape_trial(const ProjectionChannel& ch, std::size_t symbol) {
  ClassicalOutcome out;
  out.symbol = symbol;
  projection::ChannelOutput sent;
  try {
    sent = projection::apply_channel(ch, projection::InputState::basis(ch.dim(), symbol));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAnnihilated) throw;
    out.annihilated = true;
    return out;
  }
  const ComplexMatrix& basis = ch.out_basis();
  double best = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    Complex amp{};
    for (std::size_t i = 0; i < basis.rows(); ++i) amp += std::conj(basis(i, k)) * sent.state[i];
    const double p = std::norm(amp);
    if (p > best) {
      best = p;
      best_k = k;
    }
  }
  out.decoded = best_k;
  out.success = best_k == symbol;
  return out;
}

ClassicalOutcome classical_escape_trial(const ProjectionChannel& ch, RngStream& rng) {
  return classical_escape_trial(ch, rng.uniform_index(ch.dim()));
}

FidelityAverage mean_exact_fidelity(std::span<const double> lambdas, std::size_t n_inputs,
                                    RngStream& rng) {
  if (n_inputs == 0) invalid("mean_exact_fidelity needs at least one input");
  FidelityAverage avg;
  std::vector<double> weights(lambdas.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < n_inputs; ++k) {
    const auto mu = randsrc::random_unit_vector(lambdas.size(), rng);
    for (std::size_t l = 0; l < mu.size(); ++l) weights[l] = std::norm(mu[l]);
    try {
      sum += projection::exact_fidelity(lambdas, weights);
      ++avg.used;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAnnihilated) throw;
      ++avg.annihilated;
    }
  }
  avg.mean = avg.used > 0 ? sum / static_cast<double>(avg.used) : std::nan("");
  return avg;
}

FidelityAverage mean_exact_fidelity(const ProjectionChannel& ch, std::size_t n_inputs,
                                    RngStream& rng) {
  return mean_exact_fidelity(ch.spectrum().lambdas, n_inputs, rng);
}

namespace {

BipartitePureState sample_final_state(const ResolvedConfig& cfg, RngStream& rng) {
  switch (cfg.final_state) {
    case FinalStateKind::kHm:
      return projection::hm_final_state(randsrc::haar_unitary(cfg.dim, rng));
    case FinalStateKind::kHaar:
      return randsrc::random_pure_state(cfg.dim, cfg.dim, rng);
    case FinalStateKind::kProduct: {
      std::vector<Complex> e0(cfg.dim);
      e0[0] = 1.0;
      return projection::product_final_state(e0, e0);
    }
  }
  invalid("unknown final state");
}

circuits::CircuitSpec circuit_spec(const ResolvedConfig& cfg) {
  return {cfg.qubits.value_or(log2_exact(cfg.dim)), cfg.depth, circuits::Pairing::kBrickworkRing};
}

// The post-interaction state psi = U^dagger |final>; the channel is a function
// of psi alone.
BipartitePureState sample_post_interaction(const ResolvedConfig& cfg, RngStream& rng) {
  switch (cfg.interaction) {
    case InteractionKind::kNone:
      return sample_final_state(cfg, rng);
    case InteractionKind::kHaarUnitary: {
      const auto final_state = sample_final_state(cfg, rng);
      return projection::post_interaction_state(final_state,
                                                randsrc::haar_unitary(cfg.dim * cfg.dim, rng));
    }
    case InteractionKind::kHaarState:
      return randsrc::random_pure_state(cfg.dim, cfg.dim, rng);
    case InteractionKind::kCircuit:
      return circuits::pseudorandom_state(circuit_spec(cfg), rng);
  }
  invalid("unknown interaction");
}

ProjectionChannel sample_channel(const ResolvedConfig& cfg, RngStream& rng) {
  switch (cfg.interaction) {
    case InteractionKind::kNone:
      return projection::channel_from_final_state(sample_final_state(cfg, rng));
    case InteractionKind::kHaarUnitary: {
      const auto final_state = sample_final_state(cfg, rng);
      return projection::channel_from_final_state(final_state,
                                                  randsrc::haar_unitary(cfg.dim * cfg.dim, rng));
    }
    default:
      return projection::channel_from_random_state(sample_post_interaction(cfg, rng));
  }
}

bool haar_ensemble(const ResolvedConfig& cfg) {
  return cfg.interaction != InteractionKind::kNone || cfg.final_state == FinalStateKind::kHaar;
}

void fill_spectral(TrialRecord& rec, std::vector<double> lambdas, std::size_t n) {
  rec.trace_norm_sum = stats::trace_norm_sum(lambdas);
  rec.entropy_bits = stats::entanglement_entropy_bits(lambdas);
  rec.purity = stats::purity(lambdas);
  rec.banaszek_f = stats::banaszek_fidelity(lambdas, n);
  rec.lambdas = std::move(lambdas);
}

TrialRecord spectral_trial(const ResolvedConfig& cfg, RngStream& rng) {
  TrialRecord rec;
  fill_spectral(rec, stats::schmidt_coefficients(sample_post_interaction(cfg, rng)), cfg.dim);
  return rec;
}

TrialRecord fidelity_trial(const ResolvedConfig& cfg, RngStream& rng) {
  TrialRecord rec;
  // Escape fidelities depend only on the spectrum and the input weights in
  // the Schmidt basis, so the channel's bases are never formed.
  auto lambdas = stats::schmidt_coefficients(sample_post_interaction(cfg, rng));
  rec.typical_f = projection::typical_fidelity_estimate(lambdas, cfg.dim);
  const FidelityAverage avg = mean_exact_fidelity(lambdas, cfg.inputs_per_trial, rng);
  fill_spectral(rec, std::move(lambdas), cfg.dim);
  if (avg.used > 0) rec.mean_exact_f = avg.mean;
  rec.annihilations = avg.annihilated;
  rec.annihilation_flag = avg.annihilated > 0;
  return rec;
}

TrialRecord classical_trial(const ResolvedConfig& cfg, RngStream& rng) {
  TrialRecord rec;
  const ProjectionChannel ch = sample_channel(cfg, rng);
  fill_spectral(rec, ch.spectrum().lambdas, cfg.dim);
  std::size_t decoded = 0;
  for (std::size_t symbol = 0; symbol < cfg.dim; ++symbol) {
    const ClassicalOutcome o = classical_escape_trial(ch, symbol);
    if (o.success) ++decoded;
    if (o.annihilated) ++rec.annihilations;
  }
  rec.symbols_decoded = decoded;
  rec.classical_success = decoded == cfg.dim;
  rec.annihilation_flag = rec.annihilations > 0;
  return rec;
}

TrialRecord hm_trial(const ResolvedConfig& cfg, RngStream& rng) {
  TrialRecord rec;
  const ComplexMatrix s = randsrc::haar_unitary(cfg.dim, rng);
  const ProjectionChannel ch = projection::channel_from_final_state(projection::hm_final_state(s));
  fill_spectral(rec, ch.spectrum().lambdas, cfg.dim);
  const ComplexMatrix w = ch.normalized();
  rec.unitarity_defect = linalg::unitarity_defect(w);
  rec.process_fidelity = projection::process_fidelity(linalg::adjoint(s), w);
  return rec;
}

TrialRecord compare_trial(const ResolvedConfig& cfg, RngStream& rng) {
  TrialRecord rec;
  fill_spectral(rec, stats::schmidt_coefficients(circuits::pseudorandom_state(circuit_spec(cfg), rng)),
                cfg.dim);
  rec.reference_lambdas =
      stats::schmidt_coefficients(randsrc::random_pure_state(cfg.dim, cfg.dim, rng));
  rec.reference_entropy_bits = stats::entanglement_entropy_bits(rec.reference_lambdas);
  return rec;
}

template <class TrialFn>
std::vector<TrialRecord> run_trials(const ResolvedConfig& cfg, TrialFn trial) {
  std::vector<TrialRecord> records(cfg.trials);
  auto run_one = [&](std::size_t i) {
    RngStream rng(cfg.seed, i);
    records[i] = trial(cfg, rng);
    records[i].index = i;
  };

  const std::size_t workers = std::min(cfg.workers, cfg.trials);
  if (workers <= 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i) run_one(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = cfg.trials;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
        try {
          run_one(i);
        } catch (...) {
          // Report the lowest failing trial so errors are schedule-independent.
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return records;
}

template <class Getter>
std::vector<double> collect(const std::vector<TrialRecord>& records, Getter get) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const std::optional<double> v = get(r);
    if (v && !std::isnan(*v)) out.push_back(*v);
  }
  return out;
}

std::vector<double> scalar(double v) { return {v}; }

class SummaryBuilder {
 public:
  explicit SummaryBuilder(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
    summary_.config = cfg;
    summary_.records = std::move(records);
    for (const auto& r : summary_.records) summary_.annihilations += r.annihilations;
  }

  const std::vector<TrialRecord>& records() const { return summary_.records; }
  std::size_t annihilations() const { return summary_.annihilations; }

  void metric(const MetricSpec& spec, std::span<const double> values,
              std::span<const double> theory) {
    if (values.empty()) return;
    summary_.metrics.push_back(aggregate(values, theory, spec, summary_.config.sigma_multiple));
  }

  void reference(std::string name, double value) {
    summary_.references.emplace_back(std::move(name), value);
  }

  Summary finish() { return std::move(summary_); }

 private:
  Summary summary_;
};

double sqrt_n(std::size_t n) { return std::sqrt(static_cast<double>(n)); }

std::vector<double> trace_norm_ratios(const std::vector<TrialRecord>& records, std::size_t n) {
  return collect(records, [n](const TrialRecord& r) -> std::optional<double> {
    return r.trace_norm_sum / sqrt_n(n);
  });
}

Summary summarize_fidelity(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  const std::size_t n = cfg.dim;
  const bool haar = haar_ensemble(cfg);
  const double fidelity_tol =
      n >= kLargeN ? kAsymptoticFidelityToleranceLargeN : kAsymptoticFidelityTolerance;
  const double trace_constant = stats::asymptotic_mean_trace_norm(n) / sqrt_n(n);
  const double composed = (1.0 + std::pow(stats::asymptotic_mean_trace_norm(n), 2)) /
                          (static_cast<double>(n) + 1.0);

  b.metric({"trace_norm_ratio", CheckMode::kMean, kTraceNormTolerance, haar},
           trace_norm_ratios(b.records(), n), scalar(trace_constant));
  const auto banaszek = collect(b.records(), [](const TrialRecord& r) -> std::optional<double> {
    return r.banaszek_f;
  });
  b.metric({"banaszek_f", CheckMode::kMean, fidelity_tol, haar}, banaszek,
           scalar(stats::asymptotic_fidelity()));
  b.metric({"banaszek_f_finite_n", CheckMode::kMean, kAsymptoticFidelityTolerance, haar}, banaszek,
           scalar(composed));

  std::vector<double> exact;
  std::vector<double> exact_banaszek;
  for (const auto& r : b.records()) {
    if (!r.mean_exact_f || std::isnan(*r.mean_exact_f)) continue;
    exact.push_back(*r.mean_exact_f);
    exact_banaszek.push_back(r.banaszek_f);
  }
  b.metric({"mean_exact_f", CheckMode::kMean, 0.0, false}, exact, exact_banaszek);
  b.metric({"typical_f", CheckMode::kMean, 0.0, false},
           collect(b.records(), [](const TrialRecord& r) { return r.typical_f; }),
           scalar(stats::asymptotic_fidelity()));

  b.reference("fidelity_constant_squared", stats::asymptotic_fidelity());
  b.reference("fidelity_constant_unsquared", stats::asymptotic_mean_trace_norm(1));
  b.reference("mean_trace_norm_asymptotic", stats::asymptotic_mean_trace_norm(n));
  b.reference("banaszek_f_finite_n_estimate", composed);
  return b.finish();
}

void page_metrics(SummaryBuilder& b, const ResolvedConfig& cfg, bool check_entropy) {
  const std::size_t n = cfg.dim;
  b.metric({"entropy_bits", CheckMode::kMean, 0.0, check_entropy},
           collect(b.records(), [](const TrialRecord& r) -> std::optional<double> {
             return r.entropy_bits;
           }),
           scalar(stats::page_entropy_exact(n, n)));
  b.metric({"purity", CheckMode::kMean, 0.0, check_entropy},
           collect(b.records(), [](const TrialRecord& r) -> std::optional<double> {
             return r.purity;
           }),
           scalar(stats::lubkin_purity_exact(n, n)));
}

Summary summarize_page(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  const std::size_t n = cfg.dim;
  const bool haar = haar_ensemble(cfg);
  page_metrics(b, cfg, haar);
  b.metric({"trace_norm_ratio", CheckMode::kMean, 0.0, false}, trace_norm_ratios(b.records(), n),
           scalar(stats::asymptotic_mean_trace_norm(n) / sqrt_n(n)));

  const double max_bits = std::log2(static_cast<double>(n));
  double mean_entropy = 0.0;
  for (const auto& r : b.records()) mean_entropy += r.entropy_bits;
  mean_entropy /= static_cast<double>(b.records().size());

  b.reference("max_entropy_bits", max_bits);
  b.reference("page_deficit_bits", max_bits - stats::page_entropy_exact(n, n));
  b.reference("page_deficit_nats",
              std::log(static_cast<double>(n)) - stats::page_entropy_exact_nats(n, n));
  b.reference("measured_deficit_bits", max_bits - mean_entropy);
  b.reference("asymptotic_deficit_bits", stats::page_asymptotic_deficit_bits());
  b.reference("asymptotic_deficit_nats", stats::page_asymptotic_deficit_nats());
  return b.finish();
}

Summary summarize_schmidt(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  const std::size_t n = cfg.dim;
  b.metric({"trace_norm_ratio", CheckMode::kMean, kTraceNormTolerance, false},
           trace_norm_ratios(b.records(), n),
           scalar(stats::asymptotic_mean_trace_norm(n) / sqrt_n(n)));
  page_metrics(b, cfg, haar_ensemble(cfg));
  return b.finish();
}

Summary summarize_classical(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  std::vector<double> rate;
  std::vector<double> predicted;
  std::size_t decoded = 0;
  for (const auto& r : b.records()) {
    rate.push_back(static_cast<double>(r.symbols_decoded.value_or(0)) / static_cast<double>(cfg.dim));
    predicted.push_back(stats::classical_escape_probability(r.lambdas));
    decoded += r.symbols_decoded.value_or(0);
  }
  b.metric({"success_rate", CheckMode::kEveryTrial, 0.0, true}, rate, predicted);
  b.reference("symbols_tested", static_cast<double>(cfg.dim * cfg.trials));
  b.reference("symbols_decoded", static_cast<double>(decoded));
  b.reference("annihilation_events", static_cast<double>(b.annihilations()));
  return b.finish();
}

Summary summarize_hm(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  b.metric({"unitarity_defect", CheckMode::kEveryTrial, kExactTolerance, true},
           collect(b.records(), [](const TrialRecord& r) { return r.unitarity_defect; }), scalar(0.0));
  // A flat spectrum teleports perfectly; the Banaszek bound of each trial's
  // spectrum is the expected process fidelity.
  b.metric({"process_fidelity", CheckMode::kEveryTrial, kExactTolerance, true},
           collect(b.records(), [](const TrialRecord& r) { return r.process_fidelity; }),
           collect(b.records(), [](const TrialRecord& r) -> std::optional<double> {
             return r.banaszek_f;
           }));
  return b.finish();
}

Summary summarize_compare(const ResolvedConfig& cfg, std::vector<TrialRecord> records) {
  SummaryBuilder b(cfg, std::move(records));
  const std::size_t n = cfg.dim;
  std::vector<std::vector<double>> circuit_spectra;
  std::vector<std::vector<double>> haar_spectra;
  for (const auto& r : b.records()) {
    circuit_spectra.push_back(r.lambdas);
    haar_spectra.push_back(r.reference_lambdas);
  }
  const double ks = circuits::ensemble_distance(circuit_spectra, haar_spectra);
  const double critical =
      circuits::ks_critical_value(kKsSignificance, circuit_spectra.size() * n, haar_spectra.size() * n);
  b.metric({"ks_distance", CheckMode::kUpperBound, critical, true}, scalar(ks), scalar(0.0));
  b.metric({"entropy_bits", CheckMode::kMean, kCircuitEntropyTolerance, true},
           collect(b.records(), [](const TrialRecord& r) -> std::optional<double> {
             return r.entropy_bits;
           }),
           scalar(stats::page_entropy_exact(n, n)));
  b.metric({"reference_entropy_bits", CheckMode::kMean, 0.0, true},
           collect(b.records(), [](const TrialRecord& r) { return r.reference_entropy_bits; }),
           scalar(stats::page_entropy_exact(n, n)));

  const circuits::CircuitSpec spec = circuit_spec(cfg);
  b.reference("ks_critical_value", critical);
  b.reference("ks_significance", kKsSignificance);
  b.reference("qubits_per_side", static_cast<double>(spec.qubits_per_side));
  b.reference("depth", static_cast<double>(spec.depth));
  b.reference("gates_per_sample", static_cast<double>(circuits::gate_count(spec)));
  return b.finish();
}

}  // namespace

Summary run_experiment(const ResolvedConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::kSchmidtStats:
      return summarize_schmidt(cfg, run_trials(cfg, spectral_trial));
    case ExperimentKind::kFidelity:
      return summarize_fidelity(cfg, run_trials(cfg, fidelity_trial));
    case ExperimentKind::kPage:
      return summarize_page(cfg, run_trials(cfg, spectral_trial));
    case ExperimentKind::kClassical:
      return summarize_classical(cfg, run_trials(cfg, classical_trial));
    case ExperimentKind::kHmCheck:
      return summarize_hm(cfg, run_trials(cfg, hm_trial));
    case ExperimentKind::kCircuitCompare:
      return summarize_compare(cfg, run_trials(cfg, compare_trial));
  }
  invalid("unknown experiment");
}

Summary run_experiment(const ExperimentConfig& cfg) { return run_experiment(resolve(cfg)); }

}  // namespace finalstate::experiments
