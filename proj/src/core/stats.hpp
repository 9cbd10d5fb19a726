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

// Schmidt spectra, entanglement measures and the closed-form ensemble
// averages that Monte Carlo results are judged against. Entropies are in bits
// unless a name says otherwise.

#include <cstddef>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "state.hpp"

namespace finalstate::stats {

/// Schmidt coefficients at or below this are exact zeros.
inline constexpr double kZeroSchmidtCoefficient = 1e-14;

struct SchmidtSpectrum {
  std::vector<double> lambdas;   // descending, sum of squares 1
  linalg::ComplexMatrix basis_a; // column l is |l>'_A
  linalg::ComplexMatrix basis_b; // column l is |l>'_B

  std::size_t rank() const;
};

/// state = sum_l lambda_l |l>'_A (x) |l>'_B, from the SVD of the coefficient
/// matrix C = W S V^dagger: basis_a = W, basis_b = conj(V).
SchmidtSpectrum schmidt_spectrum(const BipartitePureState& state);

/// Schmidt coefficients without the bases; same values as schmidt_spectrum.
std::vector<double> schmidt_coefficients(const BipartitePureState& state);

double entanglement_entropy_bits(std::span<const double> lambdas);
double entanglement_entropy_bits(const SchmidtSpectrum& s);

/// sum_l lambda_l^4, the purity of either reduced state.
double purity(std::span<const double> lambdas);

double trace_norm_sum(std::span<const double> lambdas);
double trace_norm_sum(const SchmidtSpectrum& s);

/// (1 + (sum lambda)^2) / (N + 1): best mean teleportation fidelity with this
/// resource. Throws kInvalidArgument if the spectrum is longer than N.
double banaszek_fidelity(std::span<const double> lambdas, std::size_t n);
double banaszek_fidelity(const SchmidtSpectrum& s, std::size_t n);

/// Fraction of Schmidt coefficients above kZeroSchmidtCoefficient: the
/// probability that a uniformly chosen Schmidt-basis symbol survives the
/// projection and is decoded.
double classical_escape_probability(std::span<const double> lambdas);

/// Mean entanglement entropy of a random m x n pure state, in nats:
/// sum_{k=n+1}^{mn} 1/k - (m-1)/(2n) for m <= n (arguments are symmetric).
double page_entropy_exact_nats(std::size_t m, std::size_t n);
double page_entropy_exact(std::size_t m, std::size_t n);

/// Large-N gap between log N and the Page entropy of a square bipartition.
double page_asymptotic_deficit_nats();
double page_asymptotic_deficit_bits();

/// Mean purity of a random m x n pure state, (m + n) / (mn + 1).
double lubkin_purity_exact(std::size_t m, std::size_t n);

/// Gamma(2) / (Gamma(3/2) Gamma(5/2)) * sqrt(N) = (8 / 3 pi) sqrt(N).
double asymptotic_mean_trace_norm(std::size_t n);

/// (8 / 3 pi)^2 = 64 / (9 pi^2).
double asymptotic_fidelity();

}  // namespace finalstate::stats
