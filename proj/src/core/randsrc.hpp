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

#include <cstddef>
#include <cstdint>

#include "linalg.hpp"
#include "state.hpp"

namespace finalstate::randsrc {

/// Counter-based random stream. The n-th output is a fixed function of
/// (seed, stream_id, n), so trial i can build its stream from (seed, i) with
/// no dependence on any other trial.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_below();
  /// Uniform on {0, ..., n - 1}; n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Complex standard normal: Re, Im independent N(0, 1/2), Box-Muller.
  linalg::Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// rows x cols matrix of i.i.d. complex standard normals (E|z|^2 = 1).
linalg::ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RngStream& rng);

/// Haar-distributed dim x dim unitary: QR of a Ginibre draw with column k of
/// Q multiplied by r_kk / |r_kk|, which makes the factorization the unique one
/// with positive diagonal R and the law of Q exactly Haar.
linalg::ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng);

/// Hilbert-Schmidt random pure state: Ginibre coefficients over their norm.
BipartitePureState random_pure_state(std::size_t dim_a, std::size_t dim_b, RngStream& rng);

/// Uniformly random unit vector in C^dim.
std::vector<linalg::Complex> random_unit_vector(std::size_t dim, RngStream& rng);

}  // namespace finalstate::randsrc
