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
#include "state.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace finalstate {

BipartitePureState::BipartitePureState(linalg::ComplexMatrix coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bipartite state needs nonzero dimensions");
  }
  if (!coeffs_.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "bipartite state has non-finite amplitudes");
  }
  const double norm = linalg::frobenius_norm(coeffs_);
  if (std::abs(norm - 1.0) > kStateNormTolerance) {
    std::ostringstream msg;
    msg << "bipartite state is not normalized (norm " << norm << ")";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

BipartitePureState BipartitePureState::normalized(linalg::ComplexMatrix coeffs) {
  const double norm = linalg::frobenius_norm(coeffs);
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero state");
  }
  coeffs *= 1.0 / norm;
  return BipartitePureState(std::move(coeffs));
}

std::vector<linalg::Complex> BipartitePureState::amplitudes() const {
  auto e = coeffs_.entries();
  return {e.begin(), e.end()};
}

}  // namespace finalstate
