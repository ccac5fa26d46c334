// Copyright 2026 The kickdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal dense complex linear algebra for 2x2 and 4x4 matrices.
//
// Two-qubit operators use the fixed basis (|11>, |10>, |01>, |00>), i.e.
// single-qubit basis (|1>, |0>) with |1> the sigma_z = +1 state. Amplitude
// index 0..3 corresponds to a1..a4.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "kickdyn/error.hpp"
#include "kickdyn/tolerances.hpp"

namespace kickdyn {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

/// Column vector of N complex entries.
template <std::size_t N>
struct Vector {
  std::array<Complex, N> v{};

  constexpr Complex& operator[](std::size_t i) { return v[i]; }
  constexpr const Complex& operator[](std::size_t i) const { return v[i]; }
  static constexpr std::size_t size() { return N; }

  Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vector& operator*=(Complex s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Complex s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, Complex s) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;
};

template <std::size_t N>
double norm_squared(const Vector<N>& x) {
  double s = 0.0;
  for (const auto& c : x.v) s += std::norm(c);
  return s;
}

template <std::size_t N>
double max_abs(const Vector<N>& x) {
  double m = 0.0;
  for (const auto& c : x.v) m = std::max(m, std::abs(c));
  return m;
}

template <std::size_t N>
bool is_finite(const Vector<N>& x) {
  return std::all_of(x.v.begin(), x.v.end(), [](Complex c) { return is_finite(c); });
}

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
class SquareMatrix {
 public:
  constexpr SquareMatrix() = default;

  /// Row-major list of N*N entries.
  SquareMatrix(std::initializer_list<Complex> entries) {
    std::size_t i = 0;
    for (auto e : entries) {
      if (i < N * N) a_[i] = e;
      ++i;
    }
  }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(const std::array<Complex, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  static constexpr std::size_t rows() { return N; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  const std::array<Complex, N * N>& data() const { return a_; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector<N> operator*(const SquareMatrix& a, const Vector<N>& x) {
    Vector<N> y;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<Complex, N * N> a_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& m) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

template <std::size_t N>
SquareMatrix<N> conjugate(const SquareMatrix<N>& m) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(i, j));
  return r;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Largest entry modulus.
template <std::size_t N>
double max_norm(const SquareMatrix<N>& m) {
  double r = 0.0;
  for (const auto& c : m.data()) r = std::max(r, std::abs(c));
  return r;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return max_norm(a - b);
}

template <std::size_t N>
bool is_finite(const SquareMatrix<N>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](Complex c) { return is_finite(c); });
}

template <std::size_t N>
SquareMatrix<N> commutator(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b - b * a;
}

template <std::size_t N>
double hermiticity_defect(const SquareMatrix<N>& m) {
  return max_norm(m - adjoint(m));
}

/// Max-norm of (M^dagger M - I). Zero iff M is unitary.
template <std::size_t N>
double unitarity_defect(const SquareMatrix<N>& m) {
  if (!is_finite(m)) throw NumericalError("unitarity_defect: matrix has non-finite entries");
  return max_norm(adjoint(m) * m - SquareMatrix<N>::identity());
}

/// Kronecker product of two 2x2 operators, qubit 1 on the left.
inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

namespace pauli {
inline Matrix2 identity() { return Matrix2::identity(); }
inline Matrix2 x() { return Matrix2{0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 y() { return Matrix2{0.0, -kI, kI, 0.0}; }
inline Matrix2 z() { return Matrix2{1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

/// Coefficients c[0..N] of det(lambda I - M) = sum_k c[k] lambda^(N-k), c[0] = 1,
/// from traces of powers via Newton's identities.
template <std::size_t N>
std::array<Complex, N + 1> characteristic_polynomial(const SquareMatrix<N>& m) {
  std::array<Complex, N + 1> power_traces{};
  SquareMatrix<N> p = m;
  for (std::size_t k = 1; k <= N; ++k) {
    power_traces[k] = trace(p);
    if (k < N) p = p * m;
  }
  std::array<Complex, N + 1> c{};
  c[0] = 1.0;
  for (std::size_t k = 1; k <= N; ++k) {
    Complex s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += c[k - j] * power_traces[j];
    c[k] = -s / static_cast<double>(k);
  }
  return c;
}

template <std::size_t K>
Complex evaluate_polynomial(const std::array<Complex, K>& c, Complex x) {
  Complex r = 0.0;
  for (const auto& ck : c) r = r * x + ck;
  return r;
}

namespace detail {

// Reduce to upper Hessenberg form by Householder reflections (similarity).
template <std::size_t N>
void hessenberg_reduce(SquareMatrix<N>& h) {
  for (std::size_t k = 0; k + 2 < N; ++k) {
    double alpha_norm = 0.0;
    for (std::size_t i = k + 1; i < N; ++i) alpha_norm += std::norm(h(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    std::array<Complex, N> v{};
    v[k + 1] = x0 + phase * alpha_norm;
    for (std::size_t i = k + 2; i < N; ++i) v[i] = h(i, k);
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < N; ++i) vnorm += std::norm(v[i]);
    if (vnorm == 0.0) continue;
    // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
    for (std::size_t j = 0; j < N; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < N; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm;
      for (std::size_t i = k + 1; i < N; ++i) h(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < N; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < N; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm;
      for (std::size_t j = k + 1; j < N; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < N; ++i) h(i, k) = 0.0;
  }
}

}  // namespace detail

/// All N eigenvalues of a general complex matrix (with multiplicity).
///
/// Hessenberg reduction followed by shifted QR with Wilkinson shifts. Every
/// eigenvalue is then checked against the characteristic polynomial built
/// from traces of powers; a failed check or a QR sweep that does not deflate
/// within the iteration cap raises NumericalError carrying the residuals.
template <std::size_t N>
std::array<Complex, N> eigenvalues(const SquareMatrix<N>& m) {
  if (!is_finite(m)) throw NumericalError("eigenvalues: matrix has non-finite entries");
  std::array<Complex, N> ev{};
  SquareMatrix<N> h = m;
  detail::hessenberg_reduce(h);

  const double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (const auto& c : h.data()) scale = std::max(scale, std::abs(c));

  std::size_t hi = N - 1;
  int iter = 0;
  while (hi > 0) {
    // Find the start of the trailing unreduced block.
    std::size_t lo = hi;
    while (lo > 0) {
      const double off = std::abs(h(lo, lo - 1));
      double ref = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (ref == 0.0) ref = scale;
      if (off <= eps * ref || off <= eps * eps * scale) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      ev[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > tol::kEigenIterations) {
      std::ostringstream os;
      os << "eigenvalues: QR iteration did not converge; subdiagonal residuals:";
      for (std::size_t i = 1; i < N; ++i) os << ' ' << std::abs(h(i, i - 1));
      throw NumericalError(os.str());
    }

    // Wilkinson shift from the trailing 2x2 block.
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    const Complex half_diff = 0.5 * (a - d);
    const Complex disc = std::sqrt(half_diff * half_diff + b * c);
    const Complex mu1 = 0.5 * (a + d) + disc;
    const Complex mu2 = 0.5 * (a + d) - disc;
    Complex shift = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    if (iter % 11 == 10) shift = d + Complex{std::abs(c), 0.0};  // exceptional shift

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    std::array<Complex, N> cs{}, sn{};
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cs[k] = r == 0.0 ? Complex{1.0} : x / r;
      sn[k] = r == 0.0 ? Complex{0.0} : y / r;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex p = h(k, j), q = h(k + 1, j);
        h(k, j) = std::conj(cs[k]) * p + std::conj(sn[k]) * q;
        h(k + 1, j) = -sn[k] * p + cs[k] * q;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex p = h(i, k), q = h(i, k + 1);
        h(i, k) = p * cs[k] + q * sn[k];
        h(i, k + 1) = -p * std::conj(sn[k]) + q * std::conj(cs[k]);
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  ev[0] = h(0, 0);

  const auto poly = characteristic_polynomial(m);
  for (const auto& lambda : ev) {
    double ref = 0.0;
    const double radius = std::max(1.0, std::abs(lambda));
    double power = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
      ref += std::abs(poly[N - k]) * power;
      power *= radius;
    }
    const double residual = std::abs(evaluate_polynomial(poly, lambda));
    if (!(residual <= tol::kCharPolyResidual * ref)) {
      std::ostringstream os;
      os << "eigenvalues: characteristic polynomial residual " << residual << " at lambda = " << lambda
         << " exceeds " << tol::kCharPolyResidual * ref;
      throw NumericalError(os.str());
    }
  }
  return ev;
}

inline std::array<Complex, 4> eigenvalues4(const Matrix4& m) { return eigenvalues(m); }

}  // namespace kickdyn
