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

// Wootters concurrence: the pure-state formula used on every hot path, the
// R-matrix definition kept as an independent oracle, and the closed forms
// after a single kick.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "kickdyn/error.hpp"
#include "kickdyn/qmat.hpp"
#include "kickdyn/state.hpp"
#include "kickdyn/tolerances.hpp"

namespace kickdyn {

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix4& rho) : rho_(rho) {
    if (!is_finite(rho_)) throw ConfigError("DensityMatrix: non-finite entries");
    if (hermiticity_defect(rho_) > tol::kDensityHermitian) throw ConfigError("DensityMatrix: not Hermitian");
    if (std::abs(trace(rho_) - 1.0) > tol::kDensityTrace) throw ConfigError("DensityMatrix: trace is not 1");
    for (const Complex& e : eigenvalues4(rho_))
      if (e.real() < -tol::kEigenClamp) throw ConfigError("DensityMatrix: not positive semidefinite");
  }

  static DensityMatrix pure(const StateVector& s) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = s[i] * std::conj(s[j]);
    // exact Hermiticity
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = m(i, i).real();
    return DensityMatrix(m);
  }

  const Matrix4& matrix() const { return rho_; }

 private:
  Matrix4 rho_;
};

struct ConcurrenceValue {
  double value = 0.0;
  bool excess = false;  // pre-clamp value exceeded 1 + 1e-9
};

inline ConcurrenceValue clamp_concurrence(double raw) {
  ConcurrenceValue c;
  c.excess = raw > 1.0 + tol::kConcurrenceExcess;
  c.value = std::clamp(raw, 0.0, 1.0);
  return c;
}

/// C = max{0, 2 |a1 a4 - a2 a3|}, with health flag.
inline ConcurrenceValue concurrence_pure_checked(const StateVector& s) {
  const double n2 = norm_squared(s);
  if (!(std::abs(n2 - 1.0) <= tol::kStateNorm)) {
    std::ostringstream os;
    os << "concurrence_pure: state is not normalized (norm^2 = " << n2 << ")";
    throw ConfigError(os.str());
  }
  return clamp_concurrence(2.0 * std::abs(s[0] * s[3] - s[1] * s[2]));
}

inline double concurrence_pure(const StateVector& s) { return concurrence_pure_checked(s).value; }

struct WoottersResult {
  double concurrence = 0.0;
  std::array<double, 4> lambda{};  // descending
};

/// sigma_y (x) sigma_y.
inline Matrix4 spin_flip() { return kron(pauli::y(), pauli::y()); }

/// Builds R = rho (sy sy) rho* (sy sy) and returns
/// max{0, l1 - l2 - l3 - l4} over the descending square roots of its eigenvalues.
inline WoottersResult wootters(const DensityMatrix& rho) {
  const Matrix4 flip = spin_flip();
  const Matrix4& m = rho.matrix();
  const Matrix4 r = m * flip * conjugate(m) * flip;
  const auto ev = eigenvalues4(r);
  WoottersResult res;
  for (std::size_t i = 0; i < 4; ++i) {
    double mu = ev[i].real();
    if (mu < tol::kInvalidEigen) {
      std::ostringstream os;
      os << "wootters_concurrence: R has eigenvalue " << ev[i] << "; input is not a valid density matrix";
      throw NumericalError(os.str());
    }
    if (std::abs(ev[i]) < tol::kEigenNoiseFloor || mu < 0.0) mu = 0.0;
    res.lambda[i] = std::sqrt(mu);
  }
  std::sort(res.lambda.begin(), res.lambda.end(), std::greater<>());
  res.concurrence = clamp_concurrence(res.lambda[0] - res.lambda[1] - res.lambda[2] - res.lambda[3]).value;
  return res;
}

inline double wootters_concurrence(const DensityMatrix& rho) { return wootters(rho).concurrence; }

/// |cos^2 D + exp(8iJ(t - T1)) sin^2 D| after one kick, Bell initial (|10> + |01>)/sqrt2.
inline double bell_kick_concurrence(double delta, double J, double t, double t1) {
  const double c = std::cos(delta), s = std::sin(delta);
  const double phi = 8.0 * J * (t - t1);
  const Complex val = c * c + Complex{std::cos(phi), std::sin(phi)} * (s * s);
  return clamp_concurrence(std::abs(val)).value;
}

/// Lambda = (cos2Jt cosD - i cos(zeta) sinD)(i cosD sin2Jt + sin(zeta) sinD), zeta = 2J(t - 2T1).
inline Complex separable_kick_lambda(double delta, double J, double t, double t1) {
  const double zeta = 2.0 * J * (t - 2.0 * t1);
  const double cd = std::cos(delta), sd = std::sin(delta);
  const double c2 = std::cos(2.0 * J * t), s2 = std::sin(2.0 * J * t);
  return Complex{c2 * cd, -std::cos(zeta) * sd} * Complex{std::sin(zeta) * sd, cd * s2};
}

/// 2 max{0, |Lambda|} after one kick, initial |01>.
inline double separable_kick_concurrence(double delta, double J, double t, double t1) {
  return clamp_concurrence(2.0 * std::abs(separable_kick_lambda(delta, J, t, t1))).value;
}

/// Sampled C(t), with optional oracle-mode eigenvalue roots and closed-form intermediates.
struct ConcurrenceSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<std::vector<std::array<double, 4>>> lambda;
  // (t, Lambda) after the kick, for single-kick runs from |01>
  std::optional<std::vector<std::pair<double, Complex>>> Lambda;
  std::size_t health_warnings = 0;
};

}  // namespace kickdyn
