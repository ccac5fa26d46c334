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

// Closed-form propagators of the kicked two-qubit system.
//
// Every propagator in scope has the parity-block form
//
//   [ y1 y*       0              0          0     ]
//   [   0     y (u + iv)    y (-w + iz)     0     ]
//   [   0     y (w + iz)    y (u - iv)      0     ]
//   [   0         0              0       y1* y*   ]
//
// and the set is closed under multiplication, so sequenced kicks are composed
// directly in parameter space.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kickdyn/error.hpp"
#include "kickdyn/fields.hpp"
#include "kickdyn/qmat.hpp"
#include "kickdyn/state.hpp"
#include "kickdyn/tolerances.hpp"

namespace kickdyn {

struct BlockPropagator {
  Complex y{1.0, 0.0};
  Complex y1{1.0, 0.0};
  double u = 1.0;
  double v = 0.0;
  double w = 0.0;
  double z = 0.0;

  static BlockPropagator identity() { return {}; }

  /// Unit-determinant middle block without the y phase.
  Matrix2 middle() const { return Matrix2{Complex{u, v}, Complex{-w, z}, Complex{w, z}, Complex{u, -v}}; }

  Matrix4 matrix() const {
    Matrix4 m;
    const Complex yc = std::conj(y);
    m(0, 0) = y1 * yc;
    m(3, 3) = std::conj(y1) * yc;
    m(1, 1) = y * Complex{u, v};
    m(1, 2) = y * Complex{-w, z};
    m(2, 1) = y * Complex{w, z};
    m(2, 2) = y * Complex{u, -v};
    return m;
  }

  double block_norm_defect() const { return std::abs(u * u + v * v + w * w + z * z - 1.0); }
  double phase_defect() const { return std::max(std::abs(std::abs(y) - 1.0), std::abs(std::abs(y1) - 1.0)); }

  bool satisfies_invariants() const {
    return block_norm_defect() <= tol::kBlockNorm && phase_defect() <= tol::kPhaseModulus;
  }

  /// later * earlier.
  friend BlockPropagator operator*(const BlockPropagator& later, const BlockPropagator& earlier) {
    const Matrix2 m = later.middle() * earlier.middle();
    BlockPropagator r;
    r.y = later.y * earlier.y;
    r.y1 = later.y1 * earlier.y1;
    r.u = m(0, 0).real();
    r.v = m(0, 0).imag();
    r.w = m(1, 0).real();
    r.z = m(1, 0).imag();
    return r;
  }
};

inline Complex unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

/// exp(-i H0 t).
inline BlockPropagator free_propagator(CouplingConstants c, double t) {
  if (!(t >= 0.0)) throw ConfigError("free_propagator: t must be >= 0");
  const double phase = 2.0 * c.J * t;
  BlockPropagator p;
  p.y = unit_phase(c.J * t);
  p.y1 = 1.0;
  p.u = std::cos(phase);
  p.z = -std::sin(phase);
  return p;
}

/// exp(-i int H_int) across one kick of the given sign.
inline BlockPropagator kick_unitary(const FieldStrengths& s, Sign sign) {
  const double sg = value(sign);
  BlockPropagator p;
  p.y = 1.0;
  p.y1 = unit_phase(sg * s.sigma());
  p.u = std::cos(sg * s.delta());
  p.v = std::sin(sg * s.delta());
  return p;
}

/// Gamma and the per-kick phases zeta_i = 2J (t - 2 T_i).
struct PropagatorDerivation {
  double gamma = 0.0;
  std::vector<double> zeta;
};

inline double no_ordering_gamma(CouplingConstants c, double t, double alpha_bar, double beta_bar) {
  return std::hypot(2.0 * c.J * t, alpha_bar - beta_bar);
}

inline PropagatorDerivation derive(const KickTrain& train, CouplingConstants c, double t, double alpha_bar,
                                   double beta_bar) {
  PropagatorDerivation d;
  d.gamma = no_ordering_gamma(c, t, alpha_bar, beta_bar);
  for (const auto& e : train.events()) d.zeta.push_back(2.0 * c.J * (t - 2.0 * e.time));
  return d;
}

/// exp(-i (H0 t + int_0^t H_int)) with integrated strengths (alpha_bar, beta_bar).
inline BlockPropagator no_ordering_propagator(CouplingConstants c, double t, double alpha_bar, double beta_bar) {
  if (!(t >= 0.0)) throw ConfigError("no_ordering_propagator: t must be >= 0");
  const double gamma = no_ordering_gamma(c, t, alpha_bar, beta_bar);
  // sin(Gamma)/Gamma with its removable singularity
  const double sinc = gamma < tol::kSincSeries ? 1.0 - gamma * gamma / 6.0 : std::sin(gamma) / gamma;
  BlockPropagator p;
  p.y = unit_phase(c.J * t);
  p.y1 = unit_phase(alpha_bar + beta_bar);
  p.u = std::cos(gamma);
  p.v = (alpha_bar - beta_bar) * sinc;
  p.w = 0.0;
  p.z = -2.0 * c.J * t * sinc;
  return p;
}

/// No-ordering propagator using the profile's integrated strengths up to t.
inline BlockPropagator no_ordering_propagator(const FieldProfile& profile, CouplingConstants c, double t) {
  const auto [a, b] = integrated_strengths(profile, t);
  return no_ordering_propagator(c, t, a, b);
}

/// Exact time-ordered propagator exp(-iH0(t - T_n)) K_n ... exp(-iH0(T2 - T1)) K_1 exp(-iH0 T1).
/// Kicks with T_i <= t are applied.
inline BlockPropagator kick_sequence_propagator(const KickTrain& train, const FieldStrengths& s,
                                                CouplingConstants c, double t) {
  if (!(t >= 0.0)) throw ConfigError("kick_sequence_propagator: t must be >= 0");
  BlockPropagator u = BlockPropagator::identity();
  double last = 0.0;
  for (const auto& e : train.events()) {
    if (e.time > t) break;
    u = kick_unitary(s, e.sign) * free_propagator(c, e.time - last) * u;
    last = e.time;
  }
  return free_propagator(c, t - last) * u;
}

/// Supported shapes of the explicit parameter sets.
enum class KickShape { single, plus_minus, plus_plus, triple_plus, quadruple_plus };

inline std::string_view to_string(KickShape s) {
  switch (s) {
    case KickShape::single: return "1";
    case KickShape::plus_minus: return "+-";
    case KickShape::plus_plus: return "++";
    case KickShape::triple_plus: return "+++";
    case KickShape::quadruple_plus: return "++++";
  }
  return "?";
}

inline std::optional<KickShape> classify(const KickTrain& train) {
  const auto& e = train.events();
  auto all_plus = [&] {
    for (const auto& x : e)
      if (x.sign != Sign::plus) return false;
    return true;
  };
  switch (e.size()) {
    case 1: return KickShape::single;
    case 2:
      if (e[0].sign == Sign::plus && e[1].sign == Sign::minus) return KickShape::plus_minus;
      if (all_plus()) return KickShape::plus_plus;
      return std::nullopt;
    case 3: return all_plus() ? std::optional{KickShape::triple_plus} : std::nullopt;
    case 4: return all_plus() ? std::optional{KickShape::quadruple_plus} : std::nullopt;
    default: return std::nullopt;
  }
}

/// Explicit (y, y1, u, v, w, z) for 1, +-, ++, +++ and ++++ kick trains with
/// equal per-event strengths, valid for t at or past the last kick.
inline BlockPropagator closed_form_kick_params(const KickTrain& train, const FieldStrengths& s,
                                               CouplingConstants c, double t) {
  const auto shape = classify(train);
  if (!shape)
    throw UnsupportedError(
        "closed_form_kick_params: unsupported train shape; use kick_sequence_propagator for general trains");
  const auto& ev = train.events();
  if (!(t >= ev.back().time))
    throw ConfigError("closed_form_kick_params: t must not precede the last kick");

  const double J = c.J;
  const double sign0 = value(ev[0].sign);
  const double delta = sign0 * s.delta();
  const double cd = std::cos(delta), sd = std::sin(delta);
  const double c2 = std::cos(2.0 * J * t), s2 = std::sin(2.0 * J * t);
  std::vector<double> zeta;
  for (const auto& e : ev) zeta.push_back(2.0 * J * (t - 2.0 * e.time));
  // 2J(t + 2(T_i - T_j)) over pairs i < j
  auto pair_phases = [&] {
    std::vector<double> out;
    for (std::size_t i = 0; i < ev.size(); ++i)
      for (std::size_t j = i + 1; j < ev.size(); ++j) out.push_back(2.0 * J * (t + 2.0 * (ev[i].time - ev[j].time)));
    return out;
  };
  auto sum_cos = [](const std::vector<double>& xs) {
    double a = 0.0;
    for (double x : xs) a += std::cos(x);
    return a;
  };
  auto sum_sin = [](const std::vector<double>& xs) {
    double a = 0.0;
    for (double x : xs) a += std::sin(x);
    return a;
  };

  BlockPropagator p;
  p.y = unit_phase(J * t);
  switch (*shape) {
    case KickShape::single:
      p.y1 = unit_phase(sign0 * s.sigma());
      p.u = c2 * cd;
      p.v = std::cos(zeta[0]) * sd;
      p.w = std::sin(zeta[0]) * sd;
      p.z = -s2 * cd;
      break;
    case KickShape::plus_minus: {
      const double ts = train.separation();
      p.y1 = 1.0;
      p.u = c2 * cd * cd + std::cos(2.0 * J * (t - 2.0 * ts)) * sd * sd;
      p.v = (std::cos(zeta[0]) - std::cos(zeta[1])) * sd * cd;
      p.w = (std::sin(zeta[0]) - std::sin(zeta[1])) * sd * cd;
      p.z = -s2 * cd * cd - std::sin(2.0 * J * (t - 2.0 * ts)) * sd * sd;
      break;
    }
    case KickShape::plus_plus: {
      const double ts = train.separation();
      p.y1 = unit_phase(2.0 * s.sigma());
      p.u = c2 * cd * cd - std::cos(2.0 * J * (t - 2.0 * ts)) * sd * sd;
      p.v = (std::cos(zeta[0]) + std::cos(zeta[1])) * sd * cd;
      p.w = (std::sin(zeta[0]) + std::sin(zeta[1])) * sd * cd;
      p.z = -s2 * cd * cd + std::sin(2.0 * J * (t - 2.0 * ts)) * sd * sd;
      break;
    }
    case KickShape::triple_plus: {
      const auto pairs = pair_phases();
      const double t123 = ev[0].time - ev[1].time + ev[2].time;
      const double phi = 2.0 * J * (t - 2.0 * t123);
      p.y1 = unit_phase(3.0 * s.sigma());
      p.u = c2 * cd * cd * cd - sum_cos(pairs) * cd * sd * sd;
      p.v = sum_cos(zeta) * sd * cd * cd - std::cos(phi) * sd * sd * sd;
      p.w = sum_sin(zeta) * sd * cd * cd - std::sin(phi) * sd * sd * sd;
      p.z = -s2 * cd * cd * cd + sum_sin(pairs) * cd * sd * sd;
      break;
    }
    case KickShape::quadruple_plus: {
      const auto pairs = pair_phases();
      std::vector<double> triples;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          for (std::size_t k = j + 1; k < 4; ++k)
            triples.push_back(2.0 * J * (t - 2.0 * (ev[i].time - ev[j].time + ev[k].time)));
      const double phi = 2.0 * J * (t + 2.0 * train.alternating_sum());
      const double c4 = cd * cd * cd * cd, s4 = sd * sd * sd * sd;
      p.y1 = unit_phase(4.0 * s.sigma());
      p.u = c2 * c4 - sum_cos(pairs) * cd * cd * sd * sd + std::cos(phi) * s4;
      p.v = sum_cos(zeta) * sd * cd * cd * cd - sum_cos(triples) * cd * sd * sd * sd;
      p.w = sum_sin(zeta) * sd * cd * cd * cd - sum_sin(triples) * cd * sd * sd * sd;
      p.z = -s2 * c4 + sum_sin(pairs) * cd * cd * sd * sd - std::sin(phi) * s4;
      break;
    }
  }
  return p;
}

/// a(t) = U a(0).
inline StateVector evolve(const StateVector& state0, const BlockPropagator& u) {
  const double n = norm_squared(state0);
  if (!is_finite(state0) || std::abs(std::sqrt(n) - 1.0) > tol::kEvolveNorm) {
    std::ostringstream os;
    os << "evolve: initial state is not normalized (norm = " << std::sqrt(n) << ")";
    throw ConfigError(os.str());
  }
  const Complex yc = std::conj(u.y);
  StateVector out;
  out[0] = u.y1 * yc * state0[0];
  out[1] = u.y * (Complex{u.u, u.v} * state0[1] + Complex{-u.w, u.z} * state0[2]);
  out[2] = u.y * (Complex{u.w, u.z} * state0[1] + Complex{u.u, -u.v} * state0[2]);
  out[3] = std::conj(u.y1) * yc * state0[3];
  return out;
}

}  // namespace kickdyn
