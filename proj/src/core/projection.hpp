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

// Final states, the matter -> outgoing-radiation map induced by projecting
// matter and infalling radiation onto a final state, and the fidelity with
// which that (renormalized, hence nonlinear) map transfers matter states.
//
// Conventions. Matter index m, infalling index j, outgoing index j'. The
// infalling/outgoing pair starts in sum_j |j>_in |j>_out / sqrt(N). With
// interaction U on matter (x) in and final state |phi>,
//
//   T_raw[j, m] = <phi| U (|m> (x) |j>) / sqrt(N) = conj(psi[m, j]) / sqrt(N),
//   psi = U^dagger |phi>,
//
// so the channel only depends on the post-interaction state psi and
// T_raw = psi^dagger / sqrt(N). T_tilde = sqrt(N) T_raw has unit Frobenius
// norm and singular values equal to the Schmidt coefficients of psi. For the
// final state with coefficients S / sqrt(N) and no interaction, N T_raw is
// S^dagger: the renormalized channel is the unitary S^dagger.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "randsrc.hpp"
#include "state.hpp"
#include "stats.hpp"

namespace finalstate::projection {

/// Largest N for which an explicit N^2 x N^2 interaction is accepted.
inline constexpr std::size_t kExplicitInteractionMaxDim = 64;
/// Tolerance on unitarity of supplied S and U.
inline constexpr double kUnitarityTolerance = 1e-10;
/// Below this output norm the projected state counts as annihilated.
inline constexpr double kAnnihilationNorm = 1e-14;

/// sum_j |j> |j> / sqrt(N).
BipartitePureState maximally_entangled(std::size_t n);

/// Final state with coefficients (m, k) = S[m, k] / sqrt(N). Throws
/// kNotUnitary when S is not unitary within kUnitarityTolerance.
BipartitePureState hm_final_state(const linalg::ComplexMatrix& s);

/// a (x) b for unit vectors a, b.
BipartitePureState product_final_state(std::span<const linalg::Complex> a,
                                       std::span<const linalg::Complex> b);

/// psi = U^dagger |phi>, computed without forming U^dagger. U acts on the
/// product index m * N + j. Throws kResourceCap above
/// kExplicitInteractionMaxDim and kNotUnitary for non-unitary U.
BipartitePureState post_interaction_state(const BipartitePureState& final_state,
                                          const linalg::ComplexMatrix& interaction);

class ProjectionChannel {
 public:
  std::size_t dim() const noexcept { return dim_; }
  const linalg::ComplexMatrix& t_raw() const noexcept { return t_raw_; }
  const linalg::ComplexMatrix& t_tilde() const noexcept { return t_tilde_; }
  /// Schmidt decomposition of the post-interaction state. basis_a holds the
  /// matter vectors |l>'_matter.
  const stats::SchmidtSpectrum& spectrum() const noexcept { return spectrum_; }
  /// Columns |l>'_out with T_tilde |l>'_matter = lambda_l |l>'_out.
  const linalg::ComplexMatrix& out_basis() const noexcept { return out_basis_; }
  /// Polar unitary of T_tilde; empty when T_tilde is rank deficient.
  const std::optional<linalg::ComplexMatrix>& t_prime() const noexcept { return t_prime_; }
  /// sqrt(N) T_tilde, which is unitary exactly when the spectrum is flat.
  linalg::ComplexMatrix normalized() const;

  friend ProjectionChannel channel_from_random_state(const BipartitePureState& psi);

 private:
  ProjectionChannel() = default;

  std::size_t dim_ = 0;
  linalg::ComplexMatrix t_raw_;
  linalg::ComplexMatrix t_tilde_;
  stats::SchmidtSpectrum spectrum_;
  linalg::ComplexMatrix out_basis_;
  std::optional<linalg::ComplexMatrix> t_prime_;
};

/// Channel for final_state with no interaction.
ProjectionChannel channel_from_final_state(const BipartitePureState& final_state);

/// Channel for final_state and explicit interaction U.
ProjectionChannel channel_from_final_state(const BipartitePureState& final_state,
                                           const linalg::ComplexMatrix& interaction);

/// Channel whose post-interaction state is psi (N x N, unit norm).
ProjectionChannel channel_from_random_state(const BipartitePureState& psi);

/// Matter state given by its amplitudes in the channel's matter Schmidt basis.
class InputState {
 public:
  /// Throws kInvalidArgument unless sum |mu|^2 = 1 within kStateNormTolerance.
  explicit InputState(std::vector<linalg::Complex> amplitudes);
  static InputState normalized(std::vector<linalg::Complex> amplitudes);
  /// Uniformly random on the unit sphere.
  static InputState random(std::size_t dim, randsrc::RngStream& rng);
  /// The l-th Schmidt basis vector.
  static InputState basis(std::size_t dim, std::size_t l);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const linalg::Complex> amplitudes() const noexcept { return amplitudes_; }

 private:
  std::vector<linalg::Complex> amplitudes_;
};

struct ChannelOutput {
  std::vector<linalg::Complex> state;  // unit vector, computational out basis
  double pre_norm = 0.0;               // norm of T_raw applied to the input
};

/// Matter vector of mu in the computational basis.
std::vector<linalg::Complex> matter_vector(const ProjectionChannel& ch, const InputState& mu);

/// Renormalized output. Throws kAnnihilated ("state annihilated by
/// projection") when pre_norm < kAnnihilationNorm.
ChannelOutput apply_channel(const ProjectionChannel& ch, const InputState& mu);

/// |<out| T' mu>|^2 for the renormalized output, in closed form
///   (sum_l lambda_l |mu_l|^2)^2 / sum_l lambda_l^2 |mu_l|^2.
double escape_fidelity(const ProjectionChannel& ch, const InputState& mu);

/// Same closed form from Schmidt coefficients and weights |mu_l|^2.
double exact_fidelity(std::span<const double> lambdas, std::span<const double> weights);

/// (sqrt(N) sum_l lambda_l |mu_l|^2)^2: the escape fidelity with the output
/// norm replaced by its typical-input value 1/N. Can exceed 1 off that regime.
double typical_norm_fidelity(const ProjectionChannel& ch, const InputState& mu);

/// ((1 / sqrt(N)) sum_l lambda_l)^2.
double typical_fidelity_estimate(const ProjectionChannel& ch);
double typical_fidelity_estimate(std::span<const double> lambdas, std::size_t n);

/// |Tr(target^dagger actual)|^2 / N^2 for N x N unitaries.
double process_fidelity(const linalg::ComplexMatrix& target, const linalg::ComplexMatrix& actual);

}  // namespace finalstate::projection
