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

#include "projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace finalstate::projection {

using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

void require_square_state(const BipartitePureState& s, const char* what) {
  if (s.dim_a() != s.dim_b()) {
    std::ostringstream msg;
    msg << what << ": state must be N x N, got " << s.dim_a() << " x " << s.dim_b();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

// Exact check for small U; above that, U^dagger U x = x on fixed probe
// vectors, which costs O(dim^2) per probe instead of O(dim^3).
void require_unitary_interaction(const ComplexMatrix& u) {
  constexpr std::size_t kExactCheckMaxDim = 256;
  constexpr int kProbes = 3;
  if (u.rows() <= kExactCheckMaxDim) {
    const double defect = linalg::unitarity_defect(u);
    if (!(defect <= kUnitarityTolerance)) {
      std::ostringstream msg;
      msg << "interaction is not unitary (||U^dagger U - I||_F = " << defect << ")";
      throw Error(ErrorCode::kNotUnitary, msg.str());
    }
    return;
  }
  const std::size_t d = u.rows();
  for (int probe = 0; probe < kProbes; ++probe) {
    randsrc::RngStream rng(0x5eedf00dULL, static_cast<std::uint64_t>(probe));
    const auto x = randsrc::random_unit_vector(d, rng);
    const auto y = linalg::matvec(u, x);
    std::vector<Complex> z(d);
    for (std::size_t s = 0; s < d; ++s) {
      const Complex ys = y[s];
      for (std::size_t r = 0; r < d; ++r) z[r] += std::conj(u(s, r)) * ys;
    }
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) err += std::norm(z[i] - x[i]);
    if (!(std::sqrt(err) <= kUnitarityTolerance)) {
      throw Error(ErrorCode::kNotUnitary, "interaction is not unitary (probe check failed)");
    }
  }
}

}  // namespace

BipartitePureState maximally_entangled(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "maximally_entangled needs N >= 1");
  ComplexMatrix c = ComplexMatrix::identity(n);
  c *= 1.0 / std::sqrt(static_cast<double>(n));
  return BipartitePureState::normalized(std::move(c));
}

BipartitePureState hm_final_state(const ComplexMatrix& s) {
  if (s.rows() != s.cols() || s.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "hm_final_state needs a square S");
  }
  const double defect = linalg::unitarity_defect(s);
  if (!(defect <= kUnitarityTolerance)) {
    std::ostringstream msg;
    msg << "hm_final_state: S is not unitary (||S^dagger S - I||_F = " << defect << ")";
    throw Error(ErrorCode::kNotUnitary, msg.str());
  }
  ComplexMatrix c = s;
  c *= 1.0 / std::sqrt(static_cast<double>(s.rows()));
  return BipartitePureState::normalized(std::move(c));
}

BipartitePureState product_final_state(std::span<const Complex> a, std::span<const Complex> b) {
  auto unit = [](std::span<const Complex> v, const char* name) {
    double n2 = 0.0;
    for (const auto& z : v) n2 += std::norm(z);
    if (v.empty() || n2 == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, std::string("product_final_state: zero vector ") + name);
    }
    if (std::abs(std::sqrt(n2) - 1.0) > kStateNormTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("product_final_state: vector not unit norm ") + name);
    }
  };
  unit(a, "a");
  unit(b, "b");
  ComplexMatrix c(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c(i, j) = a[i] * b[j];
  return BipartitePureState(std::move(c));
}

BipartitePureState post_interaction_state(const BipartitePureState& final_state,
                                          const ComplexMatrix& interaction) {
  require_square_state(final_state, "post_interaction_state");
  const std::size_t n = final_state.dim_a();
  if (n > kExplicitInteractionMaxDim) {
    std::ostringstream msg;
    msg << "explicit interaction limited to N <= " << kExplicitInteractionMaxDim << " (got N = " << n
        << ")";
    throw Error(ErrorCode::kResourceCap, msg.str());
  }
  if (interaction.rows() != n * n || interaction.cols() != n * n) {
    throw Error(ErrorCode::kDimensionMismatch, "interaction must be N^2 x N^2");
  }
  require_unitary_interaction(interaction);

  const auto phi = final_state.coeffs().entries();
  ComplexMatrix psi(n, n);
  auto out = psi.entries();
  for (std::size_t s = 0; s < n * n; ++s) {
    const Complex amp = phi[s];
    if (amp == Complex{}) continue;
    for (std::size_t r = 0; r < n * n; ++r) out[r] += std::conj(interaction(s, r)) * amp;
  }
  return BipartitePureState::normalized(std::move(psi));
}

ComplexMatrix ProjectionChannel::normalized() const {
  ComplexMatrix w = t_tilde_;
  w *= std::sqrt(static_cast<double>(dim_));
  return w;
}

ProjectionChannel channel_from_final_state(const BipartitePureState& final_state) {
  require_square_state(final_state, "channel_from_final_state");
  return channel_from_random_state(final_state);
}

ProjectionChannel channel_from_final_state(const BipartitePureState& final_state,
                                           const ComplexMatrix& interaction) {
  return channel_from_random_state(post_interaction_state(final_state, interaction));
}

ProjectionChannel channel_from_random_state(const BipartitePureState& psi) {
  require_square_state(psi, "channel_from_random_state");
  ProjectionChannel ch;
  ch.dim_ = psi.dim_a();
  ch.t_tilde_ = linalg::adjoint(psi.coeffs());
  ch.t_raw_ = ch.t_tilde_;
  ch.t_raw_ *= 1.0 / std::sqrt(static_cast<double>(ch.dim_));
  ch.spectrum_ = stats::schmidt_spectrum(psi);
  ch.out_basis_ = linalg::conjugate(ch.spectrum_.basis_b);

  // T_tilde = out_basis diag(lambda) basis_a^dagger is an SVD of T_tilde, so
  // its polar factor is out_basis basis_a^dagger when the rank is full.
  const auto& l = ch.spectrum_.lambdas;
  if (l.front() > 0.0 && l.back() > linalg::kPolarRankTolerance * l.front()) {
    ch.t_prime_ = linalg::matmul(ch.out_basis_, linalg::adjoint(ch.spectrum_.basis_a));
  }
  return ch;
}

InputState::InputState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  double n2 = 0.0;
  for (const auto& z : amplitudes_) n2 += std::norm(z);
  if (amplitudes_.empty() || std::abs(n2 - 1.0) > kStateNormTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "input state must be a unit vector");
  }
}

InputState InputState::normalized(std::vector<Complex> amplitudes) {
  double n2 = 0.0;
  for (const auto& z : amplitudes) n2 += std::norm(z);
  if (!(n2 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero input state");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : amplitudes) z *= inv;
  return InputState(std::move(amplitudes));
}

InputState InputState::random(std::size_t dim, randsrc::RngStream& rng) {
  return normalized(randsrc::random_unit_vector(dim, rng));
}

InputState InputState::basis(std::size_t dim, std::size_t l) {
  if (l >= dim) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  std::vector<Complex> v(dim);
  v[l] = 1.0;
  return InputState(std::move(v));
}

namespace {

void require_input_dim(const ProjectionChannel& ch, const InputState& mu) {
  if (mu.dim() != ch.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "input state dimension does not match channel");
  }
}

[[noreturn]] void throw_annihilated(double pre_norm) {
  std::ostringstream msg;
  msg << "state annihilated by projection (output norm " << pre_norm << ")";
  throw Error(ErrorCode::kAnnihilated, msg.str());
}

}  // namespace

std::vector<Complex> matter_vector(const ProjectionChannel& ch, const InputState& mu) {
  require_input_dim(ch, mu);
  return linalg::matvec(ch.spectrum().basis_a, mu.amplitudes());
}

ChannelOutput apply_channel(const ProjectionChannel& ch, const InputState& mu) {
  const auto matter = matter_vector(ch, mu);
  ChannelOutput out;
  out.state = linalg::matvec(ch.t_raw(), matter);
  double n2 = 0.0;
  for (const auto& z : out.state) n2 += std::norm(z);
  out.pre_norm = std::sqrt(n2);
  if (out.pre_norm < kAnnihilationNorm) throw_annihilated(out.pre_norm);
  for (auto& z : out.state) z /= out.pre_norm;
  return out;
}

double exact_fidelity(std::span<const double> lambdas, std::span<const double> weights) {
  if (lambdas.size() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "spectrum and weights differ in length");
  }
  double overlap = 0.0;
  double norm2 = 0.0;
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    overlap += lambdas[l] * weights[l];
    norm2 += lambdas[l] * lambdas[l] * weights[l];
  }
  const double pre_norm = std::sqrt(norm2 / static_cast<double>(lambdas.size()));
  if (pre_norm < kAnnihilationNorm) throw_annihilated(pre_norm);
  return std::clamp(overlap * overlap / norm2, 0.0, 1.0);
}

double escape_fidelity(const ProjectionChannel& ch, const InputState& mu) {
  require_input_dim(ch, mu);
  std::vector<double> weights(mu.dim());
  for (std::size_t l = 0; l < mu.dim(); ++l) weights[l] = std::norm(mu.amplitudes()[l]);
  return exact_fidelity(ch.spectrum().lambdas, weights);
}

double typical_norm_fidelity(const ProjectionChannel& ch, const InputState& mu) {
  require_input_dim(ch, mu);
  double overlap = 0.0;
  for (std::size_t l = 0; l < mu.dim(); ++l) {
    overlap += ch.spectrum().lambdas[l] * std::norm(mu.amplitudes()[l]);
  }
  const double scaled = std::sqrt(static_cast<double>(ch.dim())) * overlap;
  return scaled * scaled;
}

double typical_fidelity_estimate(std::span<const double> lambdas, std::size_t n) {
  const double mean = stats::trace_norm_sum(lambdas) / std::sqrt(static_cast<double>(n));
  return mean * mean;
}

double typical_fidelity_estimate(const ProjectionChannel& ch) {
  return typical_fidelity_estimate(ch.spectrum().lambdas, ch.dim());
}

double process_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual) {
  if (target.rows() != actual.rows() || target.cols() != actual.cols() ||
      target.rows() != target.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "process_fidelity needs equal square matrices");
  }
  Complex overlap{};
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j) overlap += std::conj(target(i, j)) * actual(i, j);
  const double n = static_cast<double>(target.rows());
  return std::norm(overlap) / (n * n);
}

}  // namespace finalstate::projection
