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
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace finalstate::stats {

namespace {

// Kahan-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::size_t SchmidtSpectrum::rank() const {
  return static_cast<std::size_t>(std::count_if(
      lambdas.begin(), lambdas.end(), [](double l) { return l > kZeroSchmidtCoefficient; }));
}

SchmidtSpectrum schmidt_spectrum(const BipartitePureState& state) {
  auto s = linalg::svd(state.coeffs());
  SchmidtSpectrum out;
  out.lambdas = std::move(s.singular_values);
  out.basis_a = std::move(s.left);
  out.basis_b = linalg::transpose(s.right_adjoint);
  return out;
}

std::vector<double> schmidt_coefficients(const BipartitePureState& state) {
  return linalg::singular_values(state.coeffs());
}

double entanglement_entropy_bits(std::span<const double> lambdas) {
  double h = 0.0;
  for (double l : lambdas) {
    if (l <= kZeroSchmidtCoefficient) continue;
    const double p = l * l;
    h -= p * std::log2(p);
  }
  return h;
}

double entanglement_entropy_bits(const SchmidtSpectrum& s) {
  return entanglement_entropy_bits(s.lambdas);
}

double purity(std::span<const double> lambdas) {
  double sum = 0.0;
  for (double l : lambdas) sum += l * l * l * l;
  return sum;
}

double trace_norm_sum(std::span<const double> lambdas) {
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  return sum;
}

double trace_norm_sum(const SchmidtSpectrum& s) { return trace_norm_sum(s.lambdas); }

double banaszek_fidelity(std::span<const double> lambdas, std::size_t n) {
  if (lambdas.size() > n) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum longer than the teleported dimension");
  }
  const double sum = trace_norm_sum(lambdas);
  return (1.0 + sum * sum) / (static_cast<double>(n) + 1.0);
}

double banaszek_fidelity(const SchmidtSpectrum& s, std::size_t n) {
  return banaszek_fidelity(s.lambdas, n);
}

double classical_escape_probability(std::span<const double> lambdas) {
  if (lambdas.empty()) return 0.0;
  const auto alive = std::count_if(lambdas.begin(), lambdas.end(),
                                   [](double l) { return l > kZeroSchmidtCoefficient; });
  return static_cast<double>(alive) / static_cast<double>(lambdas.size());
}

double page_entropy_exact_nats(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "page entropy needs positive dimensions");
  }
  if (m > n) std::swap(m, n);
  CompensatedSum harmonic;
  // Sum from the small terms up so the compensation has the least to fix.
  for (std::size_t k = m * n; k > n; --k) harmonic.add(1.0 / static_cast<double>(k));
  return harmonic.value() - static_cast<double>(m - 1) / (2.0 * static_cast<double>(n));
}

double page_entropy_exact(std::size_t m, std::size_t n) {
  return page_entropy_exact_nats(m, n) / std::numbers::ln2;
}

double page_asymptotic_deficit_nats() { return 0.5; }

double page_asymptotic_deficit_bits() { return page_asymptotic_deficit_nats() / std::numbers::ln2; }

double lubkin_purity_exact(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "lubkin purity needs positive dimensions");
  }
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return (dm + dn) / (dm * dn + 1.0);
}

double asymptotic_mean_trace_norm(std::size_t n) {
  const double gamma_ratio = std::tgamma(2.0) / (std::tgamma(1.5) * std::tgamma(2.5));
  return gamma_ratio * std::sqrt(static_cast<double>(n));
}

double asymptotic_fidelity() {
  const double c = asymptotic_mean_trace_norm(1);
  return c * c;
}

}  // namespace finalstate::stats
