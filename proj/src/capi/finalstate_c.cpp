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

#include "finalstate/finalstate.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "core/error.hpp"
#include "core/experiments.hpp"
#include "core/output.hpp"
#include "core/projection.hpp"
#include "core/stats.hpp"

struct fs_config {
  finalstate::experiments::ExperimentConfig config;
  bool per_trial = false;
};

struct fs_result {
  finalstate::experiments::Summary summary;
  bool per_trial = false;
  double wall_seconds = 0.0;
};

struct fs_channel {
  finalstate::projection::ProjectionChannel channel;
};

namespace {

using finalstate::Error;
using finalstate::ErrorCode;

thread_local std::string g_last_error;

fs_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return FS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return FS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNotUnitary: return FS_ERR_NOT_UNITARY;
    case ErrorCode::kNonFinite: return FS_ERR_NON_FINITE;
    case ErrorCode::kNoConvergence: return FS_ERR_NO_CONVERGENCE;
    case ErrorCode::kRankDeficient: return FS_ERR_RANK_DEFICIENT;
    case ErrorCode::kAnnihilated: return FS_ERR_ANNIHILATED;
    case ErrorCode::kResourceCap: return FS_ERR_RESOURCE_CAP;
    case ErrorCode::kIo: return FS_ERR_IO;
  }
  return FS_ERR_INTERNAL;
}

fs_status fail(fs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
fs_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FS_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FS_ERR_RESOURCE_CAP, "out of memory");
  } catch (const std::exception& e) {
    return fail(FS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FS_ERR_INTERNAL, "unknown error");
  }
}

#define FS_REQUIRE(ptr)                                                       \
  do {                                                                        \
    if ((ptr) == nullptr) return fail(FS_ERR_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

finalstate::output::OutputDocument document(const fs_result* r) {
  return {r->summary, r->per_trial, r->wall_seconds};
}

}  // namespace

extern "C" {

const char* fs_version(void) { return "1.0.0"; }

const char* fs_status_name(fs_status status) {
  switch (status) {
    case FS_OK: return "ok";
    case FS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case FS_ERR_NOT_UNITARY: return "not unitary";
    case FS_ERR_NON_FINITE: return "non-finite value";
    case FS_ERR_NO_CONVERGENCE: return "no convergence";
    case FS_ERR_RANK_DEFICIENT: return "rank deficient";
    case FS_ERR_ANNIHILATED: return "annihilated by projection";
    case FS_ERR_RESOURCE_CAP: return "resource cap exceeded";
    case FS_ERR_IO: return "i/o error";
    case FS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fs_last_error(void) { return g_last_error.c_str(); }

void fs_string_free(char* text) { std::free(text); }

fs_status fs_config_create(fs_config** out) {
  FS_REQUIRE(out);
  return guarded([&] { *out = new fs_config(); });
}

void fs_config_destroy(fs_config* cfg) { delete cfg; }

fs_status fs_config_set_experiment(fs_config* cfg, const char* name) {
  FS_REQUIRE(cfg);
  FS_REQUIRE(name);
  const auto kind = finalstate::experiments::parse_experiment(name);
  if (!kind) return fail(FS_ERR_INVALID_ARGUMENT, std::string("unknown experiment: ") + name);
  cfg->config.experiment = *kind;
  return FS_OK;
}

fs_status fs_config_set_dim(fs_config* cfg, uint64_t dim) {
  FS_REQUIRE(cfg);
  cfg->config.dim = static_cast<std::size_t>(dim);
  return FS_OK;
}

fs_status fs_config_set_qubits(fs_config* cfg, uint64_t qubits_per_side) {
  FS_REQUIRE(cfg);
  cfg->config.qubits = static_cast<std::size_t>(qubits_per_side);
  return FS_OK;
}

fs_status fs_config_set_trials(fs_config* cfg, uint64_t trials) {
  FS_REQUIRE(cfg);
  cfg->config.trials = static_cast<std::size_t>(trials);
  return FS_OK;
}

fs_status fs_config_set_seed(fs_config* cfg, uint64_t seed) {
  FS_REQUIRE(cfg);
  cfg->config.seed = seed;
  return FS_OK;
}

fs_status fs_config_set_final_state(fs_config* cfg, const char* name) {
  FS_REQUIRE(cfg);
  FS_REQUIRE(name);
  const auto kind = finalstate::experiments::parse_final_state(name);
  if (!kind) return fail(FS_ERR_INVALID_ARGUMENT, std::string("unknown final state: ") + name);
  cfg->config.final_state = *kind;
  return FS_OK;
}

fs_status fs_config_set_interaction(fs_config* cfg, const char* name) {
  FS_REQUIRE(cfg);
  FS_REQUIRE(name);
  const auto kind = finalstate::experiments::parse_interaction(name);
  if (!kind) return fail(FS_ERR_INVALID_ARGUMENT, std::string("unknown interaction: ") + name);
  cfg->config.interaction = *kind;
  return FS_OK;
}

fs_status fs_config_set_depth(fs_config* cfg, uint64_t depth) {
  FS_REQUIRE(cfg);
  cfg->config.depth = static_cast<std::size_t>(depth);
  return FS_OK;
}

fs_status fs_config_set_workers(fs_config* cfg, uint64_t workers) {
  FS_REQUIRE(cfg);
  cfg->config.workers = static_cast<std::size_t>(workers);
  return FS_OK;
}

fs_status fs_config_set_inputs_per_trial(fs_config* cfg, uint64_t inputs) {
  FS_REQUIRE(cfg);
  cfg->config.inputs_per_trial = static_cast<std::size_t>(inputs);
  return FS_OK;
}

fs_status fs_config_set_per_trial(fs_config* cfg, int enabled) {
  FS_REQUIRE(cfg);
  cfg->per_trial = enabled != 0;
  return FS_OK;
}

fs_status fs_config_validate(const fs_config* cfg) {
  FS_REQUIRE(cfg);
  return guarded([&] { (void)finalstate::experiments::resolve(cfg->config); });
}

fs_status fs_run_experiment(const fs_config* cfg, fs_result** out) {
  FS_REQUIRE(cfg);
  FS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    auto summary = finalstate::experiments::run_experiment(cfg->config);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    *out = new fs_result{std::move(summary), cfg->per_trial, elapsed.count()};
  });
}

void fs_result_destroy(fs_result* result) { delete result; }

int fs_result_all_pass(const fs_result* result) {
  return result != nullptr && result->summary.all_pass() ? 1 : 0;
}

fs_status fs_result_metric(const fs_result* result, const char* name, double* mean, double* theory,
                           int* pass) {
  FS_REQUIRE(result);
  FS_REQUIRE(name);
  const auto* m = result->summary.find(name);
  if (m == nullptr) return fail(FS_ERR_INVALID_ARGUMENT, std::string("no metric named ") + name);
  if (mean) *mean = m->mean;
  if (theory) *theory = m->theory.value_or(std::numeric_limits<double>::quiet_NaN());
  if (pass) *pass = m->pass ? 1 : 0;
  return FS_OK;
}

fs_status fs_result_reference(const fs_result* result, const char* name, double* value) {
  FS_REQUIRE(result);
  FS_REQUIRE(name);
  FS_REQUIRE(value);
  const auto v = result->summary.reference(name);
  if (!v) return fail(FS_ERR_INVALID_ARGUMENT, std::string("no reference value named ") + name);
  *value = *v;
  return FS_OK;
}

uint64_t fs_result_trial_count(const fs_result* result) {
  return result == nullptr ? 0 : result->summary.records.size();
}

uint64_t fs_result_annihilations(const fs_result* result) {
  return result == nullptr ? 0 : result->summary.annihilations;
}

double fs_result_wall_seconds(const fs_result* result) {
  return result == nullptr ? 0.0 : result->wall_seconds;
}

fs_status fs_result_render(const fs_result* result, fs_format format, char** out_text) {
  FS_REQUIRE(result);
  FS_REQUIRE(out_text);
  return guarded([&] {
    const auto fmt = format == FS_FORMAT_CSV ? finalstate::output::Format::kCsv
                                             : finalstate::output::Format::kJson;
    *out_text = copy_string(finalstate::output::render(document(result), fmt));
  });
}

fs_status fs_result_write(const fs_result* result, fs_format format, const char* path) {
  FS_REQUIRE(result);
  return guarded([&] {
    const auto fmt = format == FS_FORMAT_CSV ? finalstate::output::Format::kCsv
                                             : finalstate::output::Format::kJson;
    finalstate::output::emit(document(result), fmt, path == nullptr ? std::string() : path);
  });
}

fs_status fs_channel_create_random(uint64_t dim, uint64_t seed, uint64_t stream_id,
                                   fs_channel** out) {
  FS_REQUIRE(out);
  return guarded([&] {
    if (dim == 0 || dim > finalstate::experiments::kMaxDim) {
      throw Error(ErrorCode::kResourceCap, "channel dimension must be in [1, 1024]");
    }
    finalstate::randsrc::RngStream rng(seed, stream_id);
    const auto n = static_cast<std::size_t>(dim);
    *out = new fs_channel{finalstate::projection::channel_from_random_state(
        finalstate::randsrc::random_pure_state(n, n, rng))};
  });
}

fs_status fs_channel_create_diagonal(const double* lambdas, size_t dim, fs_channel** out) {
  FS_REQUIRE(lambdas);
  FS_REQUIRE(out);
  return guarded([&] {
    if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "dim must be positive");
    std::vector<double> values(lambdas, lambdas + dim);
    auto c = finalstate::linalg::ComplexMatrix::diagonal(std::span<const double>(values));
    *out = new fs_channel{finalstate::projection::channel_from_random_state(
        finalstate::BipartitePureState::normalized(std::move(c)))};
  });
}

void fs_channel_destroy(fs_channel* ch) { delete ch; }

uint64_t fs_channel_dim(const fs_channel* ch) { return ch == nullptr ? 0 : ch->channel.dim(); }

fs_status fs_channel_schmidt(const fs_channel* ch, double* lambdas, size_t len) {
  FS_REQUIRE(ch);
  FS_REQUIRE(lambdas);
  const auto& l = ch->channel.spectrum().lambdas;
  if (len < l.size()) return fail(FS_ERR_DIMENSION_MISMATCH, "output buffer shorter than dim");
  std::copy(l.begin(), l.end(), lambdas);
  return FS_OK;
}

fs_status fs_channel_escape_fidelity(const fs_channel* ch, const double* mu, size_t dim,
                                     double* fidelity) {
  FS_REQUIRE(ch);
  FS_REQUIRE(mu);
  FS_REQUIRE(fidelity);
  return guarded([&] {
    std::vector<finalstate::linalg::Complex> amps(dim);
    for (size_t i = 0; i < dim; ++i) amps[i] = {mu[2 * i], mu[2 * i + 1]};
    *fidelity = finalstate::projection::escape_fidelity(
        ch->channel, finalstate::projection::InputState::normalized(std::move(amps)));
  });
}

fs_status fs_channel_classical_decode(const fs_channel* ch, uint64_t symbol, uint64_t* decoded) {
  FS_REQUIRE(ch);
  FS_REQUIRE(decoded);
  return guarded([&] {
    if (symbol >= ch->channel.dim()) throw Error(ErrorCode::kInvalidArgument, "symbol out of range");
    const auto o = finalstate::experiments::classical_escape_trial(ch->channel,
                                                                   static_cast<std::size_t>(symbol));
    if (o.annihilated) throw Error(ErrorCode::kAnnihilated, "state annihilated by projection");
    *decoded = *o.decoded;
  });
}

double fs_page_entropy_bits(uint64_t m, uint64_t n) {
  double v = std::numeric_limits<double>::quiet_NaN();
  guarded([&] { v = finalstate::stats::page_entropy_exact(m, n); });
  return v;
}

double fs_lubkin_purity(uint64_t m, uint64_t n) {
  double v = std::numeric_limits<double>::quiet_NaN();
  guarded([&] { v = finalstate::stats::lubkin_purity_exact(m, n); });
  return v;
}

double fs_asymptotic_mean_trace_norm(uint64_t n) {
  return finalstate::stats::asymptotic_mean_trace_norm(static_cast<std::size_t>(n));
}

double fs_asymptotic_fidelity(void) { return finalstate::stats::asymptotic_fidelity(); }

}  // extern "C"
