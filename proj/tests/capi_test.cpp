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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "finalstate/finalstate.h"
#include "json.hpp"

namespace {

struct ConfigGuard {
  fs_config* cfg = nullptr;
  ConfigGuard() { EXPECT_EQ(fs_config_create(&cfg), FS_OK); }
  ~ConfigGuard() { fs_config_destroy(cfg); }
};

struct ResultGuard {
  fs_result* result = nullptr;
  ~ResultGuard() { fs_result_destroy(result); }
};

TEST(CApi, VersionAndStatusNames) {
  EXPECT_GT(std::strlen(fs_version()), 0u);
  EXPECT_STREQ(fs_status_name(FS_OK), "ok");
  EXPECT_STRNE(fs_status_name(FS_ERR_RESOURCE_CAP), fs_status_name(FS_ERR_IO));
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(fs_config_create(nullptr), FS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fs_config_set_dim(nullptr, 4), FS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fs_run_experiment(nullptr, nullptr), FS_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(fs_last_error()), 0u);
  fs_config_destroy(nullptr);
  fs_result_destroy(nullptr);
  fs_channel_destroy(nullptr);
  fs_string_free(nullptr);
}

TEST(CApi, ConfigValidation) {
  ConfigGuard g;
  EXPECT_EQ(fs_config_set_experiment(g.cfg, "bogus"), FS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fs_config_set_experiment(g.cfg, "fidelity"), FS_OK);
  EXPECT_EQ(fs_config_set_interaction(g.cfg, "haar-unitary"), FS_OK);
  EXPECT_EQ(fs_config_set_dim(g.cfg, 128), FS_OK);
  EXPECT_EQ(fs_config_validate(g.cfg), FS_ERR_RESOURCE_CAP);
  EXPECT_NE(std::string(fs_last_error()).find("64"), std::string::npos);
  EXPECT_EQ(fs_config_set_dim(g.cfg, 16), FS_OK);
  EXPECT_EQ(fs_config_validate(g.cfg), FS_OK);
  EXPECT_EQ(fs_config_set_qubits(g.cfg, 2), FS_OK);
  EXPECT_EQ(fs_config_validate(g.cfg), FS_ERR_INVALID_ARGUMENT);
}

TEST(CApi, RunAndQuery) {
  ConfigGuard g;
  ASSERT_EQ(fs_config_set_experiment(g.cfg, "hm-check"), FS_OK);
  ASSERT_EQ(fs_config_set_dim(g.cfg, 4), FS_OK);
  ASSERT_EQ(fs_config_set_trials(g.cfg, 5), FS_OK);
  ASSERT_EQ(fs_config_set_per_trial(g.cfg, 1), FS_OK);
  ResultGuard r;
  ASSERT_EQ(fs_run_experiment(g.cfg, &r.result), FS_OK);
  EXPECT_EQ(fs_result_all_pass(r.result), 1);
  EXPECT_EQ(fs_result_trial_count(r.result), 5u);
  EXPECT_EQ(fs_result_annihilations(r.result), 0u);
  EXPECT_GE(fs_result_wall_seconds(r.result), 0.0);
  double mean = 0.0;
  double theory = 0.0;
  int pass = 0;
  ASSERT_EQ(fs_result_metric(r.result, "process_fidelity", &mean, &theory, &pass), FS_OK);
  EXPECT_NEAR(mean, 1.0, 1e-10);
  EXPECT_EQ(pass, 1);
  EXPECT_EQ(fs_result_metric(r.result, "missing", &mean, &theory, &pass), FS_ERR_INVALID_ARGUMENT);

  char* text = nullptr;
  ASSERT_EQ(fs_result_render(r.result, FS_FORMAT_JSON, &text), FS_OK);
  const auto j = nlohmann::json::parse(text);
  fs_string_free(text);
  EXPECT_EQ(j["per_trial"].size(), 5u);
  ASSERT_EQ(fs_result_render(r.result, FS_FORMAT_CSV, &text), FS_OK);
  EXPECT_EQ(std::string(text).rfind("trial,", 0), 0u);
  fs_string_free(text);
  EXPECT_EQ(fs_result_write(r.result, FS_FORMAT_JSON, "/nonexistent-dir/x.json"), FS_ERR_IO);
}

TEST(CApi, FidelityReferencesShowBothConstants) {
  ConfigGuard g;
  ASSERT_EQ(fs_config_set_experiment(g.cfg, "fidelity"), FS_OK);
  ASSERT_EQ(fs_config_set_dim(g.cfg, 8), FS_OK);
  ASSERT_EQ(fs_config_set_trials(g.cfg, 3), FS_OK);
  ResultGuard r;
  ASSERT_EQ(fs_run_experiment(g.cfg, &r.result), FS_OK);
  double squared = 0.0;
  double unsquared = 0.0;
  ASSERT_EQ(fs_result_reference(r.result, "fidelity_constant_squared", &squared), FS_OK);
  ASSERT_EQ(fs_result_reference(r.result, "fidelity_constant_unsquared", &unsquared), FS_OK);
  EXPECT_NEAR(squared, 0.72048, 5e-5);
  EXPECT_NEAR(unsquared, 0.84883, 5e-6);
}

TEST(CApi, DiagonalChannel) {
  const double lambdas[] = {1.0, 0.0};
  fs_channel* ch = nullptr;
  ASSERT_EQ(fs_channel_create_diagonal(lambdas, 2, &ch), FS_OK);
  EXPECT_EQ(fs_channel_dim(ch), 2u);
  double out[2] = {};
  ASSERT_EQ(fs_channel_schmidt(ch, out, 2), FS_OK);
  EXPECT_NEAR(out[0], 1.0, 1e-15);
  const double mu[] = {1.0, 0.0, 1.0, 0.0};
  double f = 0.0;
  ASSERT_EQ(fs_channel_escape_fidelity(ch, mu, 2, &f), FS_OK);
  EXPECT_NEAR(f, 0.5, 1e-15);
  const double dead[] = {0.0, 0.0, 1.0, 0.0};
  EXPECT_EQ(fs_channel_escape_fidelity(ch, dead, 2, &f), FS_ERR_ANNIHILATED);
  std::uint64_t decoded = 99;
  ASSERT_EQ(fs_channel_classical_decode(ch, 0, &decoded), FS_OK);
  EXPECT_EQ(decoded, 0u);
  EXPECT_EQ(fs_channel_classical_decode(ch, 1, &decoded), FS_ERR_ANNIHILATED);
  fs_channel_destroy(ch);
}

TEST(CApi, RandomChannelIsDeterministic) {
  fs_channel* a = nullptr;
  fs_channel* b = nullptr;
  ASSERT_EQ(fs_channel_create_random(6, 10, 3, &a), FS_OK);
  ASSERT_EQ(fs_channel_create_random(6, 10, 3, &b), FS_OK);
  std::vector<double> la(6);
  std::vector<double> lb(6);
  ASSERT_EQ(fs_channel_schmidt(a, la.data(), la.size()), FS_OK);
  ASSERT_EQ(fs_channel_schmidt(b, lb.data(), lb.size()), FS_OK);
  EXPECT_EQ(la, lb);
  double sq = 0.0;
  for (double l : la) sq += l * l;
  EXPECT_NEAR(sq, 1.0, 1e-12);
  for (std::uint64_t s = 0; s < 6; ++s) {
    std::uint64_t d = 99;
    ASSERT_EQ(fs_channel_classical_decode(a, s, &d), FS_OK);
    EXPECT_EQ(d, s);
  }
  EXPECT_EQ(fs_channel_schmidt(a, la.data(), 3), FS_ERR_DIMENSION_MISMATCH);
  fs_channel_destroy(a);
  fs_channel_destroy(b);
}

TEST(CApi, ClosedForms) {
  EXPECT_NEAR(fs_page_entropy_bits(2, 2), 0.48090, 5e-6);
  EXPECT_NEAR(fs_lubkin_purity(2, 4), 6.0 / 9.0, 1e-15);
  EXPECT_NEAR(fs_asymptotic_mean_trace_norm(64), 6.7907, 1e-4);
  EXPECT_NEAR(fs_asymptotic_fidelity(), 0.72048, 5e-5);
}

}  // namespace
