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

// Dense complex linear algebra used throughout the simulator. Every routine is
// a pure function of its arguments; matrices are plain values.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace finalstate::linalg {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  std::vector<Complex> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);

  bool all_finite() const noexcept;

  ComplexMatrix& operator*=(Complex scale);
  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

/// Throws kDimensionMismatch unless a.cols() == b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

/// ||a^dagger a - I||_F for square or tall a.
double unitarity_defect(const ComplexMatrix& a);

struct QrResult {
  ComplexMatrix q;
  ComplexMatrix r;
};

/// Householder QR of a square matrix without pivoting. The diagonal of r
/// carries whatever phases the reflections produce; callers that need a
/// canonical form fix them up themselves.
QrResult qr_decompose(const ComplexMatrix& a);

struct SvdResult {
  ComplexMatrix left;                  // rows x k, orthonormal columns
  std::vector<double> singular_values; // k = min(rows, cols), descending
  ComplexMatrix right_adjoint;         // k x cols, orthonormal rows
};

inline constexpr int kSvdMaxSweeps = 60;
inline constexpr double kSvdTolerance = 1e-12;

/// Thin SVD by one-sided (Hestenes) Jacobi rotations.
///
/// A pair of columns is rotated while |<a_p, a_q>| exceeds kSvdTolerance
/// times ||a_p|| ||a_q||. Fails with kNoConvergence, reporting the remaining
/// off-diagonal residual, if that is still the case after kSvdMaxSweeps.
SvdResult svd(const ComplexMatrix& a);

/// Singular values only (no singular vectors accumulated), descending.
std::vector<double> singular_values(const ComplexMatrix& a);

inline constexpr double kPolarRankTolerance = 1e-12;

/// Unitary factor left * right_adjoint of a square matrix. Fails with
/// kRankDeficient when the smallest singular value is not above
/// kPolarRankTolerance times the largest.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

}  // namespace finalstate::linalg
