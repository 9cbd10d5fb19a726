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
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace finalstate::linalg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix entry count does not equal rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> values) {
  if (values.size() != rows_) {
    throw Error(ErrorCode::kDimensionMismatch, "column length mismatch");
  }
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix difference shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul dimension mismatch: " << a.rows() << "x" << a.cols() << " times "
        << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matvec dimension mismatch");
  }
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * x[k];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& z : out.entries()) z = std::conj(z);
  return out;
}

Complex trace(const ComplexMatrix& a) {
  Complex acc{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) acc += a(i, i);
  return acc;
}

double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix gram = matmul(adjoint(a), a);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  return frobenius_norm(gram);
}

namespace {

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.all_finite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + ": non-finite input entry");
  }
}

}  // namespace

QrResult qr_decompose(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "qr_decompose requires a nonempty square matrix");
  }
  require_finite(a, "qr_decompose");
  const std::size_t n = a.rows();
  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<Complex> v(n);
  std::vector<Complex> w(n);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    double below2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) below2 += std::norm(r(i, k));
    // Column already reduced: no reflection, so r_kk keeps its value.
    if (below2 == 0.0) continue;
    const double xnorm = std::sqrt(below2 + std::norm(r(k, k)));
    const Complex x0 = r(k, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    // v = x - alpha e_k, normalized; H = I - 2 v v^dagger maps x to alpha e_k.
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k; i < n; ++i) v[i] *= inv;

    std::fill(w.begin() + static_cast<std::ptrdiff_t>(k), w.end(), Complex{});
    for (std::size_t i = k; i < n; ++i) {
      const Complex cv = std::conj(v[i]);
      for (std::size_t j = k; j < n; ++j) w[j] += cv * r(i, j);
    }
    for (std::size_t i = k; i < n; ++i) {
      const Complex two_v = 2.0 * v[i];
      for (std::size_t j = k; j < n; ++j) r(i, j) -= two_v * w[j];
    }
    for (std::size_t row = 0; row < n; ++row) {
      Complex s{};
      for (std::size_t i = k; i < n; ++i) s += q(row, i) * v[i];
      s *= 2.0;
      for (std::size_t i = k; i < n; ++i) q(row, i) -= s * std::conj(v[i]);
    }
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) = Complex{};
  }
  return {std::move(q), std::move(r)};
}

namespace {

// conj(x) . y over len complex entries, written out in reals so the hot loop
// avoids the NaN-recovery path of std::complex multiplication.
inline Complex dot_conj(const Complex* x, const Complex* y, std::size_t len) {
  const double* a = reinterpret_cast<const double*>(x);
  const double* b = reinterpret_cast<const double*>(y);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < 2 * len; i += 2) {
    re += a[i] * b[i] + a[i + 1] * b[i + 1];
    im += a[i] * b[i + 1] - a[i + 1] * b[i];
  }
  return {re, im};
}

inline double norm2(const Complex* x, std::size_t len) {
  const double* a = reinterpret_cast<const double*>(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < 2 * len; ++i) sum += a[i] * a[i];
  return sum;
}

// x <- c x - s conj(ph) y,  y <- s ph x + c y
inline void rotate(Complex* x, Complex* y, std::size_t len, double c, double s, Complex ph) {
  double* a = reinterpret_cast<double*>(x);
  double* b = reinterpret_cast<double*>(y);
  const double pr = ph.real();
  const double pi = ph.imag();
  for (std::size_t i = 0; i < 2 * len; i += 2) {
    const double xr = a[i];
    const double xi = a[i + 1];
    const double yr = b[i];
    const double yi = b[i + 1];
    a[i] = c * xr - s * (pr * yr + pi * yi);
    a[i + 1] = c * xi - s * (pr * yi - pi * yr);
    b[i] = c * yr + s * (pr * xr - pi * xi);
    b[i + 1] = c * yi + s * (pr * xi + pi * xr);
  }
}

// Column-major working copy of a tall matrix, orthogonalized in place.
struct JacobiWork {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Complex> cols;   // column j at [j*m, (j+1)*m)
  std::vector<Complex> right;  // n x n, column-major; empty when not requested
};

void jacobi_orthogonalize(JacobiWork& work) {
  const std::size_t m = work.m;
  const std::size_t n = work.n;
  const bool track = !work.right.empty();
  std::vector<double> d(n);
  double residual = 0.0;

  for (int sweep = 0; sweep < kSvdMaxSweeps; ++sweep) {
    for (std::size_t j = 0; j < n; ++j) d[j] = norm2(&work.cols[j * m], m);
    bool rotated = false;
    residual = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex* cp = &work.cols[p * m];
        Complex* cq = &work.cols[q * m];
        const Complex g = dot_conj(cp, cq, m);
        const double ag = std::abs(g);
        if (ag == 0.0) continue;
        const double scale = std::sqrt(d[p]) * std::sqrt(d[q]);
        residual = std::max(residual, ag / scale);
        if (ag <= kSvdTolerance * scale) continue;
        rotated = true;
        const double zeta = (d[q] - d[p]) / (2.0 * ag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Complex ph = g / ag;
        rotate(cp, cq, m, c, s, ph);
        if (track) rotate(&work.right[p * n], &work.right[q * n], n, c, s, ph);
        d[p] -= t * ag;
        d[q] += t * ag;
      }
    }
    if (!rotated) return;
  }
  std::ostringstream msg;
  msg << "svd did not converge after " << kSvdMaxSweeps
      << " sweeps; relative off-diagonal residual " << residual;
  throw Error(ErrorCode::kNoConvergence, msg.str());
}

JacobiWork make_work(const ComplexMatrix& a, bool track) {
  JacobiWork work;
  work.m = a.rows();
  work.n = a.cols();
  work.cols.resize(work.m * work.n);
  for (std::size_t i = 0; i < work.m; ++i)
    for (std::size_t j = 0; j < work.n; ++j) work.cols[j * work.m + i] = a(i, j);
  if (track) {
    work.right.assign(work.n * work.n, Complex{});
    for (std::size_t j = 0; j < work.n; ++j) work.right[j * work.n + j] = 1.0;
  }
  return work;
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  return order;
}

SvdResult svd_tall(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  JacobiWork work = make_work(a, true);
  jacobi_orthogonalize(work);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(norm2(&work.cols[j * m], m));
  const auto order = descending_order(sigma);
  const double sigma_max = sigma[order.front()];

  SvdResult out;
  out.left = ComplexMatrix(m, n);
  out.singular_values.resize(n);
  out.right_adjoint = ComplexMatrix(n, n);
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = sigma[j];
    for (std::size_t c = 0; c < n; ++c) out.right_adjoint(k, c) = std::conj(work.right[j * n + c]);
    if (sigma[j] > 0.0 && sigma[j] > sigma_max * 1e-100) {
      const double inv = 1.0 / sigma[j];
      for (std::size_t i = 0; i < m; ++i) out.left(i, k) = work.cols[j * m + i] * inv;
      filled[k] = true;
    }
  }

  // Null directions carry no information about a; complete them to an
  // orthonormal set by Gram-Schmidt over the standard basis.
  std::vector<Complex> cand(m);
  std::size_t next_basis = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    while (next_basis < m) {
      std::fill(cand.begin(), cand.end(), Complex{});
      cand[next_basis++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t other = 0; other < n; ++other) {
          if (!filled[other]) continue;
          Complex proj{};
          for (std::size_t i = 0; i < m; ++i) proj += std::conj(out.left(i, other)) * cand[i];
          for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * out.left(i, other);
        }
      }
      const double len = std::sqrt(norm2(cand.data(), m));
      if (len > 0.5) {
        for (std::size_t i = 0; i < m; ++i) out.left(i, k) = cand[i] / len;
        filled[k] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  if (a.empty()) return {};
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(adjoint(a));
  return {adjoint(t.right_adjoint), std::move(t.singular_values), adjoint(t.left)};
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  if (a.empty()) return {};
  JacobiWork work = make_work(a.rows() >= a.cols() ? a : adjoint(a), false);
  jacobi_orthogonalize(work);
  std::vector<double> sigma(work.n);
  for (std::size_t j = 0; j < work.n; ++j) sigma[j] = std::sqrt(norm2(&work.cols[j * work.m], work.m));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "polar_unitary requires a nonempty square matrix");
  }
  const SvdResult s = svd(a);
  const double largest = s.singular_values.front();
  const double smallest = s.singular_values.back();
  if (largest == 0.0 || smallest <= kPolarRankTolerance * largest) {
    std::ostringstream msg;
    msg << "polar unitary undefined at given tolerance (smallest/largest singular value "
        << (largest == 0.0 ? 0.0 : smallest / largest) << ")";
    throw Error(ErrorCode::kRankDeficient, msg.str());
  }
  return matmul(s.left, s.right_adjoint);
}

}  // namespace finalstate::linalg
