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
#include <random>
#include <string>

#include "core/error.hpp"
#include "core/projection.hpp"
#include "core/randsrc.hpp"
#include "core/stats.hpp"
#include "support/oracles.hpp"

namespace finalstate {
namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using projection::InputState;
using randsrc::RngStream;
using testing::max_abs_diff;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

projection::ProjectionChannel diagonal_channel(std::vector<double> lambdas) {
  return projection::channel_from_random_state(
      BipartitePureState::normalized(ComplexMatrix::diagonal(std::span<const double>(lambdas))));
}

// T_raw[j, m] = <phi| U (|m> (x) |j>) / sqrt(N) evaluated by explicit summation
// over the composite index a * N + b.
ComplexMatrix contraction_oracle(const BipartitePureState& phi, const ComplexMatrix& u) {
  const std::size_t n = phi.dim_a();
  ComplexMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) {
      Complex s{};
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += std::conj(phi.coeffs()(a, b)) * u(a * n + b, m * n + j);
      t(j, m) = s / std::sqrt(static_cast<double>(n));
    }
  return t;
}

double ray_overlap(std::span<const Complex> x, std::span<const Complex> y) {
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return std::norm(s);
}

TEST(FinalStates, MaximallyEntangled) {
  EXPECT_EQ(projection::maximally_entangled(1).coeffs(), (ComplexMatrix{{1.0}}));
  const auto two = projection::maximally_entangled(2).coeffs();
  EXPECT_LT(max_abs_diff(two, ComplexMatrix{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}}), 1e-15);
  EXPECT_THROW((void)projection::maximally_entangled(0), Error);
  for (double l : stats::schmidt_spectrum(projection::maximally_entangled(6)).lambdas) {
    EXPECT_NEAR(l, 1.0 / std::sqrt(6.0), 1e-15);
  }
}

TEST(FinalStates, HmState) {
  EXPECT_LT(max_abs_diff(projection::hm_final_state(ComplexMatrix::identity(2)).coeffs(),
                         projection::maximally_entangled(2).coeffs()),
            1e-15);
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_LT(max_abs_diff(projection::hm_final_state(x).coeffs(),
                         ComplexMatrix{{0.0, kInvSqrt2}, {kInvSqrt2, 0.0}}),
            1e-15);
  RngStream rng(5, 5);
  const auto s = randsrc::haar_unitary(7, rng);
  for (double l : stats::schmidt_spectrum(projection::hm_final_state(s)).lambdas) {
    EXPECT_NEAR(l, 1.0 / std::sqrt(7.0), 1e-12);
  }
}

TEST(FinalStates, HmRejectsNonUnitary) {
  try {
    (void)projection::hm_final_state(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}});
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
  }
}

TEST(FinalStates, ProductState) {
  const Complex e0[] = {1.0, 0.0, 0.0};
  const auto st = projection::product_final_state(e0, e0);
  ComplexMatrix expected(3, 3);
  expected(0, 0) = 1.0;
  EXPECT_EQ(st.coeffs(), expected);
  const auto sp = stats::schmidt_spectrum(st);
  EXPECT_NEAR(sp.lambdas[0], 1.0, 1e-15);
  EXPECT_NEAR(sp.lambdas[1], 0.0, 1e-15);
  const auto ch = projection::channel_from_final_state(st);
  const auto sv = linalg::singular_values(ch.t_tilde());
  EXPECT_NEAR(sv[0], 1.0, 1e-14);
  EXPECT_LT(sv[1], 1e-14);
  const Complex zero[] = {0.0, 0.0, 0.0};
  EXPECT_THROW((void)projection::product_final_state(zero, e0), Error);
}

TEST(Channel, MaximallyEntangledIsScaledIdentity) {
  const auto ch = projection::channel_from_final_state(projection::maximally_entangled(4));
  auto t_raw = ComplexMatrix::identity(4);
  t_raw *= 0.25;
  auto t_tilde = ComplexMatrix::identity(4);
  t_tilde *= 0.5;
  EXPECT_LT(max_abs_diff(ch.t_raw(), t_raw), 1e-15);
  EXPECT_LT(max_abs_diff(ch.t_tilde(), t_tilde), 1e-15);
  ASSERT_TRUE(ch.t_prime().has_value());
  EXPECT_LT(max_abs_diff(*ch.t_prime(), ComplexMatrix::identity(4)), 1e-14);
}

TEST(Channel, HmNoInteractionRealizesAdjointOfS) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 1);
    const std::size_t n = 2 + seed;
    const auto s = randsrc::haar_unitary(n, rng);
    const auto ch = projection::channel_from_final_state(projection::hm_final_state(s));
    const auto w = ch.normalized();
    EXPECT_LT(linalg::unitarity_defect(w), 1e-10);
    // Documented convention: N T_raw = S^dagger.
    auto scaled = ch.t_raw();
    scaled *= static_cast<double>(n);
    EXPECT_LT(max_abs_diff(scaled, testing::naive_adjoint(s)), 1e-12);
    EXPECT_NEAR(projection::process_fidelity(testing::naive_adjoint(s), w), 1.0, 1e-10);
    const auto gram = testing::naive_matmul(testing::naive_adjoint(ch.t_tilde()), ch.t_tilde());
    auto scaled_gram = gram;
    scaled_gram *= static_cast<double>(n);
    EXPECT_LT(max_abs_diff(scaled_gram, ComplexMatrix::identity(n)), 1e-10);
  }
}

TEST(Channel, ProductFinalStateCollapsesEveryInput) {
  const Complex a[] = {0.6, Complex(0.0, 0.8)};
  const Complex b[] = {kInvSqrt2, -kInvSqrt2};
  const auto phi = projection::product_final_state(a, b);
  const auto ch = projection::channel_from_final_state(phi);
  EXPECT_LT(max_abs_diff(ch.t_raw(), contraction_oracle(phi, ComplexMatrix::identity(4))), 1e-15);
  // Every matter state goes to the same output ray.
  std::mt19937_64 eng(1);
  std::vector<Complex> first;
  for (int rep = 0; rep < 5; ++rep) {
    auto m = testing::random_matrix(2, 1, eng).column(0);
    auto out = linalg::matvec(ch.t_raw(), m);
    double n2 = 0.0;
    for (const auto& z : out) n2 += std::norm(z);
    for (auto& z : out) z /= std::sqrt(n2);
    if (first.empty()) {
      first = out;
    } else {
      EXPECT_NEAR(ray_overlap(first, out), 1.0, 1e-12);
    }
  }
}

TEST(Channel, ExplicitInteractionMatchesContraction) {
  RngStream rng(12, 0);
  const auto phi = randsrc::random_pure_state(3, 3, rng);
  const auto u = randsrc::haar_unitary(9, rng);
  const auto ch = projection::channel_from_final_state(phi, u);
  EXPECT_LT(max_abs_diff(ch.t_raw(), contraction_oracle(phi, u)), 1e-13);
}

TEST(Channel, CrossPathAgreement) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 0);
    const auto phi = projection::hm_final_state(ComplexMatrix::identity(4));
    const auto u = randsrc::haar_unitary(16, rng);
    const auto explicit_ch = projection::channel_from_final_state(phi, u);
    // U^dagger |phi> formed independently.
    const auto psi_vec = testing::naive_matmul(testing::naive_adjoint(u),
                                               ComplexMatrix(16, 1, phi.amplitudes()));
    ComplexMatrix psi(4, 4, std::vector<Complex>(psi_vec.entries().begin(), psi_vec.entries().end()));
    const auto random_ch = projection::channel_from_random_state(BipartitePureState::normalized(psi));
    ASSERT_LT(max_abs_diff(explicit_ch.t_raw(), random_ch.t_raw()), 1e-12) << "seed " << seed;
  }
}

TEST(Channel, ExplicitInteractionCap) {
  try {
    (void)projection::post_interaction_state(projection::maximally_entangled(65), ComplexMatrix::identity(1));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceCap);
  }
}

TEST(Channel, RejectsNonUnitaryInteraction) {
  auto u = ComplexMatrix::identity(4);
  u(0, 0) = 2.0;
  EXPECT_THROW((void)projection::channel_from_final_state(projection::maximally_entangled(2), u), Error);
}

TEST(Channel, RankOneSpectrum) {
  const auto ch = diagonal_channel({1.0, 0.0});
  EXPECT_FALSE(ch.t_prime().has_value());
  const auto sv = linalg::singular_values(ch.t_tilde());
  EXPECT_NEAR(sv[0], 1.0, 1e-15);
  EXPECT_NEAR(sv[1], 0.0, 1e-15);
}

TEST(ApplyChannel, MaximallyEntangledActsAsPolarUnitary) {
  RngStream rng(3, 0);
  const auto ch = projection::channel_from_random_state(projection::maximally_entangled(4));
  for (int rep = 0; rep < 5; ++rep) {
    const auto mu = InputState::random(4, rng);
    const auto out = projection::apply_channel(ch, mu);
    const auto expected = linalg::matvec(*ch.t_prime(), projection::matter_vector(ch, mu));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(out.state[i] - expected[i]), 1e-14);
    // (1/sqrt(N)) * lambda with lambda = 1/sqrt(N).
    EXPECT_NEAR(out.pre_norm, 0.25, 1e-15);
  }
}

TEST(ApplyChannel, RankOneSurvivingInput) {
  const auto ch = diagonal_channel({1.0, 0.0});
  const auto out = projection::apply_channel(ch, InputState::basis(2, 0));
  EXPECT_NEAR(out.pre_norm, kInvSqrt2, 1e-15);
  const auto target = ch.out_basis().column(0);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(std::abs(out.state[i] - target[i]), 1e-15);
}

TEST(ApplyChannel, RankOneAnnihilatedInput) {
  const auto ch = diagonal_channel({1.0, 0.0});
  try {
    (void)projection::apply_channel(ch, InputState::basis(2, 1));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAnnihilated);
    EXPECT_NE(std::string(e.what()).find("state annihilated by projection"), std::string::npos);
  }
  EXPECT_THROW((void)projection::escape_fidelity(ch, InputState::basis(2, 1)), Error);
}

TEST(ApplyChannel, OutputRayIgnoresGlobalPhase) {
  RngStream rng(4, 0);
  const auto ch = projection::channel_from_random_state(randsrc::random_pure_state(5, 5, rng));
  const auto mu = InputState::random(5, rng);
  std::vector<Complex> rotated(mu.amplitudes().begin(), mu.amplitudes().end());
  for (auto& z : rotated) z *= std::polar(1.0, 1.234);
  const auto a = projection::apply_channel(ch, mu);
  const auto b = projection::apply_channel(ch, InputState::normalized(rotated));
  EXPECT_NEAR(ray_overlap(a.state, b.state), 1.0, 1e-13);
  EXPECT_NEAR(a.pre_norm, b.pre_norm, 1e-15);
}

TEST(EscapeFidelity, FlatSpectrumIsPerfect) {
  RngStream rng(5, 0);
  const auto ch = projection::channel_from_random_state(projection::maximally_entangled(6));
  for (int rep = 0; rep < 10; ++rep) {
    EXPECT_NEAR(projection::escape_fidelity(ch, InputState::random(6, rng)), 1.0, 1e-12);
  }
}

TEST(EscapeFidelity, RankOneExamples) {
  const auto ch = diagonal_channel({1.0, 0.0});
  const auto mu = InputState::normalized({kInvSqrt2, kInvSqrt2});
  EXPECT_NEAR(projection::escape_fidelity(ch, mu), 0.5, 1e-15);
  EXPECT_NEAR(projection::escape_fidelity(ch, InputState::basis(2, 0)), 1.0, 1e-15);
  // Brute force: renormalized output against the ideal image out_basis * mu.
  const auto out = projection::apply_channel(ch, mu);
  const auto ideal = linalg::matvec(ch.out_basis(), mu.amplitudes());
  EXPECT_NEAR(ray_overlap(out.state, ideal), 0.5, 1e-15);
}

TEST(EscapeFidelity, ClosedFormMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 6);
    const auto ch = projection::channel_from_random_state(randsrc::random_pure_state(6, 6, rng));
    const auto mu = InputState::random(6, rng);
    const auto out = projection::apply_channel(ch, mu);
    const auto ideal = linalg::matvec(*ch.t_prime(), projection::matter_vector(ch, mu));
    const double f = projection::escape_fidelity(ch, mu);
    EXPECT_NEAR(f, ray_overlap(out.state, ideal), 1e-12);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(EscapeFidelity, NonFlatSpectrumHasImperfectInput) {
  const auto ch = diagonal_channel({0.9, 0.3, 0.3});
  EXPECT_LT(projection::escape_fidelity(ch, InputState::normalized({1.0, 1.0, 0.0})), 1.0 - 1e-3);
}

TEST(TypicalFidelity, Examples) {
  EXPECT_NEAR(projection::typical_fidelity_estimate(
                  projection::channel_from_random_state(projection::maximally_entangled(5))),
              1.0, 1e-14);
  EXPECT_NEAR(projection::typical_fidelity_estimate(diagonal_channel({1.0, 0.0})), 0.5, 1e-15);
  double s = 0.0;
  for (int i = 0; i < 200; ++i) {
    RngStream rng(99, static_cast<std::uint64_t>(i));
    s += projection::typical_fidelity_estimate(
        stats::schmidt_coefficients(randsrc::random_pure_state(64, 64, rng)), 64);
  }
  EXPECT_NEAR(s / 200.0, 0.7205, 0.02);
}

TEST(TypicalFidelity, LiteralOverlapCanExceedOne) {
  // For lambda = (1, 0) and mu = (1, 0) the typical-norm expression gives 2.
  const auto ch = diagonal_channel({1.0, 0.0});
  EXPECT_NEAR(projection::typical_norm_fidelity(ch, InputState::basis(2, 0)), 2.0, 1e-14);
}

TEST(ChannelProperties, NormAndSpectrumAcrossConstructions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RngStream rng(seed, 8);
    const std::size_t n = 2 + seed % 4;
    std::vector<projection::ProjectionChannel> channels;
    channels.push_back(projection::channel_from_final_state(randsrc::random_pure_state(n, n, rng)));
    channels.push_back(projection::channel_from_final_state(randsrc::random_pure_state(n, n, rng),
                                                            randsrc::haar_unitary(n * n, rng)));
    channels.push_back(projection::channel_from_final_state(
        projection::hm_final_state(randsrc::haar_unitary(n, rng)), randsrc::haar_unitary(n * n, rng)));
    const auto psi = randsrc::random_pure_state(n, n, rng);
    channels.push_back(projection::channel_from_random_state(psi));
    for (const auto& ch : channels) {
      EXPECT_NEAR(linalg::frobenius_norm(ch.t_tilde()), 1.0, 1e-10);
      const auto sv = linalg::singular_values(ch.t_tilde());
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(sv[k], ch.spectrum().lambdas[k], 1e-10);
    }
    const auto direct = stats::schmidt_coefficients(psi);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(linalg::singular_values(channels.back().t_tilde())[k], direct[k], 1e-10);
    }
  }
}

}  // namespace
}  // namespace finalstate
