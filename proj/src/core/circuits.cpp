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

#include "circuits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace finalstate::circuits {

using linalg::Complex;

std::vector<std::pair<std::size_t, std::size_t>> layer_pairs(const CircuitSpec& spec,
                                                             std::size_t layer) {
  const std::size_t total = 2 * spec.qubits_per_side;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (layer % 2 == 0) {
    for (std::size_t q = 0; q + 1 < total; q += 2) pairs.emplace_back(q, q + 1);
  } else {
    for (std::size_t q = 1; q + 1 < total; q += 2) pairs.emplace_back(q, q + 1);
    if (spec.pairing == Pairing::kBrickworkRing) pairs.emplace_back(total - 1, 0);
  }
  return pairs;
}

std::size_t gate_count(const CircuitSpec& spec) {
  std::size_t count = 0;
  for (std::size_t layer = 0; layer < spec.depth; ++layer) count += layer_pairs(spec, layer).size();
  return count;
}

void apply_two_qubit_gate(std::span<Complex> state, std::size_t total_qubits,
                          const linalg::ComplexMatrix& gate, std::size_t first,
                          std::size_t second) {
  if (gate.rows() != 4 || gate.cols() != 4) {
    throw Error(ErrorCode::kDimensionMismatch, "two-qubit gate must be 4x4");
  }
  if (first == second || first >= total_qubits || second >= total_qubits ||
      state.size() != (std::size_t{1} << total_qubits)) {
    throw Error(ErrorCode::kInvalidArgument, "bad qubit indices for two-qubit gate");
  }
  const std::size_t bit_first = std::size_t{1} << (total_qubits - 1 - first);
  const std::size_t bit_second = std::size_t{1} << (total_qubits - 1 - second);
  for (std::size_t base = 0; base < state.size(); ++base) {
    if ((base & bit_first) || (base & bit_second)) continue;
    const std::size_t idx[4] = {base, base | bit_second, base | bit_first,
                                base | bit_first | bit_second};
    Complex in[4];
    for (int k = 0; k < 4; ++k) in[k] = state[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc{};
      for (int c = 0; c < 4; ++c) acc += gate(r, c) * in[c];
      state[idx[r]] = acc;
    }
  }
}

BipartitePureState pseudorandom_state(const CircuitSpec& spec, randsrc::RngStream& rng) {
  const std::size_t n = spec.qubits_per_side;
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "circuit needs at least one qubit per side");
  if (2 * n > kMaxTotalQubits) {
    std::ostringstream msg;
    msg << "circuit simulation limited to " << kMaxTotalQubits << " total qubits (got " << 2 * n
        << ")";
    throw Error(ErrorCode::kResourceCap, msg.str());
  }
  const std::size_t total = 2 * n;
  std::vector<Complex> state(std::size_t{1} << total);
  state[0] = 1.0;
  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    for (const auto& [a, b] : layer_pairs(spec, layer)) {
      apply_two_qubit_gate(state, total, randsrc::haar_unitary(4, rng), a, b);
    }
  }
  const std::size_t side = std::size_t{1} << n;
  return BipartitePureState::normalized(linalg::ComplexMatrix(side, side, std::move(state)));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kInvalidArgument, "KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t n1, std::size_t n2) {
  if (!(alpha > 0.0 && alpha < 1.0) || n1 == 0 || n2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bad KS critical value arguments");
  }
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c * std::sqrt((a + b) / (a * b));
}

std::vector<double> pooled_squares(std::span<const std::vector<double>> samples) {
  std::vector<double> pooled;
  for (const auto& s : samples)
    for (double l : s) pooled.push_back(l * l);
  return pooled;
}

double ensemble_distance(std::span<const std::vector<double>> circuit_samples,
                         std::span<const std::vector<double>> haar_samples) {
  if (circuit_samples.empty() || haar_samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ensemble_distance needs nonempty sample sets");
  }
  const std::size_t dim = circuit_samples.front().size();
  auto check = [dim](std::span<const std::vector<double>> set) {
    for (const auto& s : set) {
      if (s.size() != dim) {
        throw Error(ErrorCode::kDimensionMismatch, "spectra in ensemble comparison differ in length");
      }
    }
  };
  check(circuit_samples);
  check(haar_samples);
  return ks_statistic(pooled_squares(circuit_samples), pooled_squares(haar_samples));
}

}  // namespace finalstate::circuits
