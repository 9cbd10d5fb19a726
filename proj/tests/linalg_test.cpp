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
#include <limits>
#include <random>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/randsrc.hpp"
#include "support/oracles.hpp"

namespace finalstate {
namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using testing::max_abs_diff;

constexpr Complex kI{0.0, 1.0};

TEST(Matmul, IdentityLeavesMatrixUnchanged) {
  const ComplexMatrix a{{1.0, 2.0 + kI}, {-3.0 * kI, 4.0}};
  EXPECT_EQ(linalg::matmul(ComplexMatrix::identity(2), a), a);
}

TEST(Matmul, DiagonalProduct) {
  const double d1[] = {2.0, 3.0};
  const double d2[] = {5.0, 7.0};
  const double expected[] = {10.0, 21.0};
  EXPECT_EQ(linalg::matmul(ComplexMatrix::diagonal(std::span<const double>(d1)),
                           ComplexMatrix::diagonal(std::span<const double>(d2))),
            ComplexMatrix::diagonal(std::span<const double>(expected)));
}

TEST(Matmul, MatchesTripleLoopOracle) {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = testing::random_matrix(3, 3, eng);
    const auto b = testing::random_matrix(3, 3, eng);
    EXPECT_LT(max_abs_diff(linalg::matmul(a, b), testing::naive_matmul(a, b)), 1e-13);
  }
  const auto a = testing::random_matrix(2, 5, eng);
  const auto b = testing::random_matrix(5, 3, eng);
  EXPECT_LT(max_abs_diff(linalg::matmul(a, b), testing::naive_matmul(a, b)), 1e-13);
}

TEST(Matmul, DimensionMismatchThrows) {
  try {
    (void)linalg::matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Adjoint, ConjugatesScalar) {
  const ComplexMatrix a{{kI}};
  EXPECT_EQ(linalg::adjoint(a), (ComplexMatrix{{-kI}}));
}

TEST(Adjoint, RealSymmetricIsFixed) {
  const ComplexMatrix a{{1.0, 2.0}, {2.0, -5.0}};
  EXPECT_EQ(linalg::adjoint(a), a);
}

TEST(Adjoint, SwapsShapeAndIndices) {
  std::mt19937_64 eng(3);
  const auto a = testing::random_matrix(2, 3, eng);
  const auto t = linalg::adjoint(a);
  ASSERT_EQ(t.rows(), 3u);
  ASSERT_EQ(t.cols(), 2u);
  EXPECT_EQ(t, testing::naive_adjoint(a));
}

TEST(Adjoint, ProductRule) {
  std::mt19937_64 eng(5);
  const auto a = testing::random_matrix(4, 3, eng);
  const auto b = testing::random_matrix(3, 5, eng);
  EXPECT_LT(max_abs_diff(linalg::adjoint(linalg::matmul(a, b)),
                         linalg::matmul(linalg::adjoint(b), linalg::adjoint(a))),
            1e-13);
}

TEST(Trace, CyclicIdentity) {
  std::mt19937_64 eng(8);
  const auto a = testing::random_matrix(4, 4, eng);
  const auto b = testing::random_matrix(4, 4, eng);
  EXPECT_LT(std::abs(linalg::trace(linalg::matmul(a, b)) - linalg::trace(linalg::matmul(b, a))),
            1e-12);
}

TEST(Qr, IdentityGivesIdentityFactors) {
  const auto qr = linalg::qr_decompose(ComplexMatrix::identity(3));
  EXPECT_LT(max_abs_diff(qr.q, ComplexMatrix::identity(3)), 1e-15);
  EXPECT_LT(max_abs_diff(qr.r, ComplexMatrix::identity(3)), 1e-15);
}

TEST(Qr, DiagonalInput) {
  const double d[] = {2.0, 3.0};
  const auto qr = linalg::qr_decompose(ComplexMatrix::diagonal(std::span<const double>(d)));
  EXPECT_LT(linalg::unitarity_defect(qr.q), 1e-14);
  EXPECT_NEAR(std::abs(qr.q(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(qr.q(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(qr.r(0, 0)), 2.0, 1e-14);
  EXPECT_NEAR(std::abs(qr.r(1, 1)), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(qr.r(1, 0)), 0.0, 1e-15);
}

TEST(Qr, ReconstructsGinibreDraws) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    randsrc::RngStream rng(s, 0);
    const auto a = randsrc::ginibre(4, 4, rng);
    const auto qr = linalg::qr_decompose(a);
    EXPECT_LT(linalg::unitarity_defect(qr.q), 1e-12);
    EXPECT_LT(max_abs_diff(testing::naive_matmul(qr.q, qr.r), a), 1e-10);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(qr.r(i, j), Complex{});
  }
}

TEST(Qr, RejectsNaN) {
  ComplexMatrix a = ComplexMatrix::identity(2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)linalg::qr_decompose(a);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(Svd, ScaledIdentity) {
  auto a = ComplexMatrix::identity(2);
  a *= 1.0 / std::sqrt(2.0);
  const auto sv = linalg::svd(a).singular_values;
  ASSERT_EQ(sv.size(), 2u);
  EXPECT_NEAR(sv[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sv[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Svd, RankOne) {
  const ComplexMatrix a{{1.0, 0.0}, {0.0, 0.0}};
  const auto r = linalg::svd(a);
  EXPECT_NEAR(r.singular_values[0], 1.0, 1e-15);
  EXPECT_NEAR(r.singular_values[1], 0.0, 1e-15);
  // The completed left basis is still unitary.
  EXPECT_LT(linalg::unitarity_defect(r.left), 1e-14);
}

TEST(Svd, SquaredValuesMatchEigenvaluesOfGram) {
  std::mt19937_64 eng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = testing::random_matrix(5, 5, eng);
    const auto eig = testing::hermitian_eigenvalues(testing::naive_matmul(testing::naive_adjoint(a), a));
    const auto sv = linalg::singular_values(a);
    ASSERT_EQ(sv.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(sv[k] * sv[k], eig[4 - k], 1e-8);
  }
}

TEST(Svd, ReconstructsRectangular) {
  std::mt19937_64 eng(23);
  for (auto [rows, cols] : {std::pair{3, 6}, std::pair{6, 3}, std::pair{7, 7}}) {
    const auto a = testing::random_matrix(rows, cols, eng);
    const auto r = linalg::svd(a);
    const std::size_t k = std::min(rows, cols);
    ASSERT_EQ(r.singular_values.size(), k);
    for (std::size_t i = 1; i < k; ++i) EXPECT_GE(r.singular_values[i - 1], r.singular_values[i]);
    const auto rebuilt = testing::naive_matmul(
        testing::naive_matmul(r.left, ComplexMatrix::diagonal(std::span<const double>(r.singular_values))),
        r.right_adjoint);
    EXPECT_LT(max_abs_diff(rebuilt, a), 1e-12);
    EXPECT_LT(max_abs_diff(testing::naive_matmul(testing::naive_adjoint(r.left), r.left),
                           ComplexMatrix::identity(k)),
              1e-12);
    EXPECT_LT(max_abs_diff(testing::naive_matmul(r.right_adjoint, testing::naive_adjoint(r.right_adjoint)),
                           ComplexMatrix::identity(k)),
              1e-12);
  }
}

TEST(Svd, ValuesOnlyPathAgreesWithFullPath) {
  randsrc::RngStream rng(4, 4);
  const auto a = randsrc::ginibre(12, 12, rng);
  const auto full = linalg::svd(a).singular_values;
  const auto fast = linalg::singular_values(a);
  for (std::size_t k = 0; k < full.size(); ++k) EXPECT_NEAR(full[k], fast[k], 1e-12);
}

TEST(Polar, UnitaryInputIsFixed) {
  randsrc::RngStream rng(1, 9);
  const auto u = randsrc::haar_unitary(5, rng);
  EXPECT_LT(max_abs_diff(linalg::polar_unitary(u), u), 1e-12);
}

TEST(Polar, PositiveDiagonalGivesIdentity) {
  const double d[] = {2.0, 3.0};
  EXPECT_LT(max_abs_diff(linalg::polar_unitary(ComplexMatrix::diagonal(std::span<const double>(d))),
                         ComplexMatrix::identity(2)),
            1e-14);
}

TEST(Polar, ScalingInvariance) {
  randsrc::RngStream rng(2, 9);
  const auto u = randsrc::haar_unitary(4, rng);
  EXPECT_LT(max_abs_diff(linalg::polar_unitary(0.5 * u), u), 1e-10);
}

TEST(Polar, RankDeficientThrows) {
  const ComplexMatrix a{{1.0, 0.0}, {0.0, 0.0}};
  try {
    (void)linalg::polar_unitary(a);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
    EXPECT_NE(std::string(e.what()).find("polar unitary undefined at given tolerance"),
              std::string::npos);
  }
}

TEST(Polar, FactorReconstructsInput) {
  std::mt19937_64 eng(29);
  const auto a = testing::random_matrix(4, 4, eng);
  const auto u = linalg::polar_unitary(a);
  EXPECT_LT(linalg::unitarity_defect(u), 1e-12);
  // P = U^dagger A must be Hermitian positive semidefinite.
  const auto p = testing::naive_matmul(testing::naive_adjoint(u), a);
  EXPECT_LT(max_abs_diff(p, testing::naive_adjoint(p)), 1e-12);
  for (double ev : testing::hermitian_eigenvalues(p)) EXPECT_GT(ev, -1e-12);
}

}  // namespace
}  // namespace finalstate
