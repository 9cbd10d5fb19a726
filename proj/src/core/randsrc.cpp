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
#include "randsrc.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace finalstate::randsrc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Exact r_kk == 0 has probability zero; nudge it so the phase is defined.
constexpr double kDegeneratePivotNudge = 1e-300;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(mix64(seed ^ mix64(stream_id + 0x632be59bd9b4e019ULL))) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open_below() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_index needs n > 0");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return static_cast<std::size_t>(x % bound);
}

linalg::Complex RngStream::complex_normal() {
  const double u1 = uniform_open_below();
  const double u2 = uniform();
  const double radius = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

linalg::ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RngStream& rng) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "ginibre dimensions must be positive");
  }
  linalg::ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) z = rng.complex_normal();
  return m;
}

linalg::ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng) {
  auto [q, r] = linalg::qr_decompose(ginibre(dim, dim, rng));
  for (std::size_t k = 0; k < dim; ++k) {
    linalg::Complex pivot = r(k, k);
    if (std::abs(pivot) == 0.0) pivot += kDegeneratePivotNudge;
    const linalg::Complex phase = pivot / std::abs(pivot);
    for (std::size_t i = 0; i < dim; ++i) q(i, k) *= phase;
  }
  return q;
}

BipartitePureState random_pure_state(std::size_t dim_a, std::size_t dim_b, RngStream& rng) {
  return BipartitePureState::normalized(ginibre(dim_a, dim_b, rng));
}

std::vector<linalg::Complex> random_unit_vector(std::size_t dim, RngStream& rng) {
  auto g = ginibre(dim, 1, rng);
  const double norm = linalg::frobenius_norm(g);
  std::vector<linalg::Complex> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = g(i, 0) / norm;
  return out;
}

}  // namespace finalstate::randsrc
