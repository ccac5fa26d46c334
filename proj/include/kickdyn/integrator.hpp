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

// Fixed-step fourth-order Runge-Kutta for i da/dt = H(t) a with Gaussian
// pulse trains, in the full four-amplitude form and in the reduced form on
// the exchange sector span{|10>, |01>}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "kickdyn/error.hpp"
#include "kickdyn/fields.hpp"
#include "kickdyn/qmat.hpp"
#include "kickdyn/state.hpp"
#include "kickdyn/tolerances.hpp"

namespace kickdyn {

/// Uniform time grid [t0, t1] with step dt; every sample_stride-th step is emitted.
/// The number of steps is a multiple of the stride, so t1 is always sampled.
class SimGrid {
 public:
  /// dt_request is shrunk so that an integer number of strides spans [t0, t1].
  SimGrid(double t0, double t1, double dt_request, std::size_t sample_stride = 1) : t0_(t0), t1_(t1), stride_(sample_stride) {
    if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) throw ConfigError("SimGrid: need finite t0 < t1");
    if (!(dt_request > 0.0) || !std::isfinite(dt_request)) throw ConfigError("SimGrid: dt must be positive");
    if (stride_ == 0) throw ConfigError("SimGrid: sample stride must be >= 1");
    const double span = t1 - t0;
    const double per_sample = dt_request * static_cast<double>(stride_);
    const auto samples = static_cast<std::size_t>(std::ceil(span / per_sample * (1.0 - 1e-12)));
    intervals_ = std::max<std::size_t>(1, samples);
    steps_ = intervals_ * stride_;
    dt_ = span / static_cast<double>(steps_);
  }

  /// n_samples equally spaced sample times with integration step <= dt_max.
  static SimGrid from_samples(double t0, double t1, std::size_t n_samples, double dt_max) {
    if (n_samples < 2) throw ConfigError("SimGrid: need at least two samples");
    if (!(dt_max > 0.0)) throw ConfigError("SimGrid: dt must be positive");
    const double spacing = (t1 - t0) / static_cast<double>(n_samples - 1);
    const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spacing / dt_max * (1.0 - 1e-12))));
    return SimGrid(t0, t1, spacing / static_cast<double>(stride), stride);
  }

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double dt() const { return dt_; }
  std::size_t sample_stride() const { return stride_; }
  std::size_t steps() const { return steps_; }
  std::size_t samples() const { return intervals_ + 1; }

  double step_time(std::size_t step) const {
    return step == steps_ ? t1_ : t0_ + (t1_ - t0_) * static_cast<double>(step) / static_cast<double>(steps_);
  }
  double sample_time(std::size_t k) const { return step_time(k * stride_); }

  std::vector<double> sample_times() const {
    std::vector<double> out(samples());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = sample_time(k);
    return out;
  }

 private:
  double t0_, t1_;
  std::size_t stride_;
  std::size_t intervals_ = 1;
  std::size_t steps_ = 1;
  double dt_ = 0.0;
};

/// Largest RK4 step resolving the pulses, the exchange frequency and the
/// peak field: dt <= min(tau/20, 1e-3/J, 0.03/max|H|).
inline double default_step(const FieldProfile& profile, CouplingConstants c) {
  double dt = c.J != 0.0 ? tol::kStepTimesJ / std::abs(c.J) : tol::kStepTimesJ;
  if (auto p = profile.pulse_train()) {
    dt = std::min(dt, p->tau() / tol::kStepsPerTau);
    double peak = 0.0;
    for (const auto& e : p->events()) peak = std::max(peak, std::abs(p->envelope(e.time)));
    const auto& s = profile.strengths();
    const double energy = 3.0 * std::abs(c.J) + (std::abs(s.alpha) + std::abs(s.beta)) * peak;
    dt = std::min(dt, tol::kStepTimesEnergy / energy);
  }
  return dt;
}

struct TrajectoryInfo {
  FieldProfile profile;
  CouplingConstants coupling;
  SimGrid grid;
  double max_norm_drift = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  TrajectoryInfo info;
};

/// One classic RK4 step of dy/dt = rhs(t, y).
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& y, double t, double dt) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * dt, y + Complex{0.5 * dt} * k1);
  const State k3 = rhs(t + 0.5 * dt, y + Complex{0.5 * dt} * k2);
  const State k4 = rhs(t + dt, y + Complex{dt} * k3);
  State out = y + Complex{dt / 6.0} * (k1 + Complex{2.0} * k2 + Complex{2.0} * k3 + k4);
  if (!is_finite(out)) {
    std::ostringstream os;
    os << "rk4_step: non-finite state at t = " << t;
    throw NumericalError(os.str());
  }
  return out;
}

namespace detail {

inline void require_samplable(const FieldProfile& profile, const char* who) {
  if (profile.kick_train())
    throw UnsupportedError(std::string(who) + ": delta kicks cannot be integrated numerically; use the kick propagators");
}

inline void require_resolved(const FieldProfile& profile, const SimGrid& grid, const char* who) {
  if (auto p = profile.pulse_train()) {
    if (grid.dt() > p->tau() / tol::kStepsPerTau * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << who << ": dt = " << grid.dt() << " exceeds tau/20 = " << p->tau() / tol::kStepsPerTau;
      throw ConfigError(os.str());
    }
  }
}

inline void require_normalized(double norm2, const char* who) {
  if (!(std::abs(norm2 - 1.0) <= tol::kStateNorm)) {
    std::ostringstream os;
    os << who << ": initial state is not normalized (norm^2 = " << norm2 << ")";
    throw ConfigError(os.str());
  }
}

// da/dt = -i H(t) a on the full space.
struct FullRhs {
  const FieldProfile& profile;
  double J;
  StateVector operator()(double t, const StateVector& a) const {
    const FieldSample f = sample_fields(profile, t);
    StateVector d;
    d[0] = -kI * ((J - f.bT) * a[0]);
    d[1] = -kI * ((-J + f.deltaB) * a[1] + 2.0 * J * a[2]);
    d[2] = -kI * (2.0 * J * a[1] + (-J - f.deltaB) * a[2]);
    d[3] = -kI * ((J + f.bT) * a[3]);
    return d;
  }
};

// i da2/dt = (-J - (alpha - beta) f(t)) a2 + 2J a3
// i da3/dt = (-J + (alpha - beta) f(t)) a3 + 2J a2
struct SectorRhs {
  const FieldProfile& profile;
  double J;
  Vector<2> operator()(double t, const Vector<2>& a) const {
    double df = 0.0;
    if (auto p = profile.pulse_train()) df = profile.strengths().delta() * p->envelope(t);
    Vector<2> d;
    d[0] = -kI * ((-J - df) * a[0] + 2.0 * J * a[1]);
    d[1] = -kI * ((-J + df) * a[1] + 2.0 * J * a[0]);
    return d;
  }
};

template <std::size_t N, class Rhs, class Embed>
Trajectory integrate(Rhs rhs, const FieldProfile& profile, CouplingConstants c, const SimGrid& grid,
                     Vector<N> y, Embed embed) {
  Trajectory tr{{}, {}, TrajectoryInfo{profile, c, grid, 0.0}};
  tr.times.reserve(grid.samples());
  tr.states.reserve(grid.samples());
  const double n0 = norm_squared(y);
  tr.times.push_back(grid.t0());
  tr.states.push_back(embed(y));
  for (std::size_t step = 0; step < grid.steps(); ++step) {
    const double t = grid.step_time(step);
    y = rk4_step(rhs, y, t, grid.step_time(step + 1) - t);
    if ((step + 1) % grid.sample_stride() == 0) {
      const double drift = std::abs(norm_squared(y) - n0);
      tr.info.max_norm_drift = std::max(tr.info.max_norm_drift, drift);
      if (drift > tol::kNormDrift) {
        std::ostringstream os;
        os << "integrate: norm drift " << drift << " exceeds " << tol::kNormDrift << " at t = " << grid.step_time(step + 1)
           << " (reduce dt)";
        throw NumericalError(os.str());
      }
      tr.times.push_back(grid.step_time(step + 1));
      tr.states.push_back(embed(y));
    }
  }
  return tr;
}

}  // namespace detail

/// One RK4 step of the full four-amplitude system.
inline StateVector rk4_step(const FieldProfile& profile, CouplingConstants c, const StateVector& state, double t,
                            double dt) {
  detail::require_samplable(profile, "rk4_step");
  return rk4_step(detail::FullRhs{profile, c.J}, state, t, dt);
}

inline Trajectory integrate_full(const FieldProfile& profile, CouplingConstants c, const SimGrid& grid,
                                 const StateVector& state0) {
  detail::require_samplable(profile, "integrate_full");
  detail::require_resolved(profile, grid, "integrate_full");
  detail::require_normalized(norm_squared(state0), "integrate_full");
  return detail::integrate<4>(detail::FullRhs{profile, c.J}, profile, c, grid, state0,
                              [](const StateVector& s) { return s; });
}

/// Reduced two-amplitude integration; the result is embedded with a1 = a4 = 0.
inline Trajectory integrate_sector(const FieldProfile& profile, CouplingConstants c, const SimGrid& grid, Complex a2_0,
                                   Complex a3_0) {
  detail::require_samplable(profile, "integrate_sector");
  detail::require_resolved(profile, grid, "integrate_sector");
  detail::require_normalized(std::norm(a2_0) + std::norm(a3_0), "integrate_sector");
  return detail::integrate<2>(detail::SectorRhs{profile, c.J}, profile, c, grid, Vector<2>{{a2_0, a3_0}},
                              [](const Vector<2>& s) { return StateVector{{0.0, s[0], s[1], 0.0}}; });
}

struct ConvergencePoint {
  double dt;
  double error;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;  // coarse to fine
  double order = 0.0;                    // least-squares slope of log(error) vs log(dt)
  std::vector<double> ratios;            // error(dt) / error(dt/2)
};

/// Runs integrate_full at dt, dt/2, ..., dt/2^levels and measures the final-state
/// error of all but the finest run against the Richardson extrapolation of the
/// two finest runs.
inline ConvergenceReport convergence_study(const FieldProfile& profile, CouplingConstants c, const SimGrid& grid,
                                           const StateVector& state0, int levels) {
  if (levels < 3) throw ConfigError("convergence_study: need at least 3 halvings");
  std::vector<StateVector> finals;
  std::vector<double> steps;
  for (int k = 0; k <= levels; ++k) {
    const SimGrid g(grid.t0(), grid.t1(), grid.dt() / std::ldexp(1.0, k), grid.steps() << k);
    const Trajectory tr = integrate_full(profile, c, g, state0);
    finals.push_back(tr.states.back());
    steps.push_back(g.dt());
  }
  const StateVector& fine = finals[levels];
  const StateVector reference = fine + Complex{1.0 / 15.0} * (fine - finals[levels - 1]);

  ConvergenceReport rep;
  for (int k = 0; k < levels; ++k) rep.points.push_back({steps[k], max_abs(finals[k] - reference)});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rep.points.size());
  for (const auto& p : rep.points) {
    const double x = std::log(p.dt), y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t k = 0; k + 1 < rep.points.size(); ++k) rep.ratios.push_back(rep.points[k].error / rep.points[k + 1].error);
  return rep;
}

}  // namespace kickdyn
