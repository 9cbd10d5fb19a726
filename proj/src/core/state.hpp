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
#include <vector>

#include "linalg.hpp"

namespace finalstate {

inline constexpr double kStateNormTolerance = 1e-12;

/// Normalized pure state on H_A (x) H_B held as its dim_a x dim_b coefficient
/// matrix: entry (a, b) is the amplitude on |a>_A |b>_B.
class BipartitePureState {
 public:
  /// Throws kInvalidArgument unless ||coeffs||_F = 1 within kStateNormTolerance.
  explicit BipartitePureState(linalg::ComplexMatrix coeffs);

  /// Rescales coeffs to unit norm. Throws kInvalidArgument on a zero matrix.
  static BipartitePureState normalized(linalg::ComplexMatrix coeffs);

  std::size_t dim_a() const noexcept { return coeffs_.rows(); }
  std::size_t dim_b() const noexcept { return coeffs_.cols(); }
  const linalg::ComplexMatrix& coeffs() const noexcept { return coeffs_; }

  /// Amplitudes in the product basis, index a * dim_b + b.
  std::vector<linalg::Complex> amplitudes() const;

 private:
  linalg::ComplexMatrix coeffs_;
};

}  // namespace finalstate
