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

// Pseudorandom bipartite states from brickwork circuits of Haar-random
// two-qubit gates, and the ensemble comparison against Haar states.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "randsrc.hpp"
#include "state.hpp"

namespace finalstate::circuits {

/// Largest total qubit count (both sides) simulated densely.
inline constexpr std::size_t kMaxTotalQubits = 20;

enum class Pairing {
  /// Qubits 0..2n-1 on a ring, A side first. Even layers couple (0,1),
  /// (2,3), ...; odd layers couple (1,2), (3,4), ..., and (2n-1, 0).
  kBrickworkRing,
  /// As kBrickworkRing without the wrap-around gate.
  kBrickworkOpen,
};

struct CircuitSpec {
  std::size_t qubits_per_side = 1;
  std::size_t depth = 0;
  Pairing pairing = Pairing::kBrickworkRing;
};

/// Qubit pairs coupled in layer `layer` (0-based).
std::vector<std::pair<std::size_t, std::size_t>> layer_pairs(const CircuitSpec& spec,
                                                             std::size_t layer);

/// Total two-qubit gates in the circuit; depth * n for the ring pairing.
std::size_t gate_count(const CircuitSpec& spec);

/// Applies a 4x4 gate to qubits (first, second) of a 2^total state vector.
/// Qubit q is bit (total - 1 - q) of the basis index; the gate's basis index
/// is 2 * bit(first) + bit(second).
void apply_two_qubit_gate(std::span<linalg::Complex> state, std::size_t total_qubits,
                          const linalg::ComplexMatrix& gate, std::size_t first,
                          std::size_t second);

/// Runs the circuit on |0...0> with gates drawn in layer order from rng and
/// splits the result into the first n qubits (A) and the last n (B).
BipartitePureState pseudorandom_state(const CircuitSpec& spec, randsrc::RngStream& rng);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample KS critical value at significance alpha.
double ks_critical_value(double alpha, std::size_t n1, std::size_t n2);

/// KS statistic between the pooled squared Schmidt coefficients of two sample
/// sets. Throws kInvalidArgument on an empty set and kDimensionMismatch when
/// spectra differ in length.
double ensemble_distance(std::span<const std::vector<double>> circuit_samples,
                         std::span<const std::vector<double>> haar_samples);

/// Pooled squared coefficients, the sample size ensemble_distance compares.
std::vector<double> pooled_squares(std::span<const std::vector<double>> samples);

}  // namespace finalstate::circuits
