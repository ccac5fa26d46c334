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

// Driving-field profiles and the time-dependent Hamiltonian
//
//   H(t) = J (sx sx + sy sy + sz sz) - B1(t) sz(1) - B2(t) sz(2)
//
// with B1 = alpha f(t), B2 = beta f(t) for a common envelope f built from a
// train of signed events. Kick trains are delta functions and are consumed
// analytically by the propagators; pulse trains are Gaussians of width tau.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kickdyn/error.hpp"
#include "kickdyn/qmat.hpp"
#include "kickdyn/quadrature.hpp"
#include "kickdyn/tolerances.hpp"

namespace kickdyn {

struct CouplingConstants {
  double J = 1.0;
};

/// Integrated strengths of one field event on qubit 1 (alpha) and qubit 2 (beta).
struct FieldStrengths {
  double alpha = 0.0;
  double beta = 0.0;

  double delta() const { return alpha - beta; }
  double sigma() const { return alpha + beta; }
};

enum class Sign : int { plus = 1, minus = -1 };

inline double value(Sign s) { return static_cast<double>(static_cast<int>(s)); }
inline char symbol(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct FieldEvent {
  double time = 0.0;
  Sign sign = Sign::plus;

  friend bool operator==(const FieldEvent&, const FieldEvent&) = default;
};

namespace detail {
inline void check_increasing(const std::vector<FieldEvent>& events, const char* what) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!std::isfinite(events[i].time))
      throw ConfigError(std::string(what) + ": event time is not finite");
    if (i > 0 && !(events[i].time > events[i - 1].time))
      throw ConfigError(std::string(what) + ": event times must be strictly increasing");
  }
}
}  // namespace detail

/// Ordered delta kicks.
class KickTrain {
 public:
  KickTrain() = default;
  explicit KickTrain(std::vector<FieldEvent> events) : events_(std::move(events)) {
    detail::check_increasing(events_, "KickTrain");
    for (const auto& e : events_)
      if (!(e.time > 0.0)) throw ConfigError("KickTrain: kick times must be > 0");
  }

  const std::vector<FieldEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// T2 - T1 for two-event trains.
  double separation() const {
    if (events_.size() != 2) throw UnsupportedError("KickTrain::separation needs exactly two kicks");
    return events_[1].time - events_[0].time;
  }
  /// T1 - T2 + T3 - T4 for four-event trains.
  double alternating_sum() const {
    if (events_.size() != 4) throw UnsupportedError("KickTrain::alternating_sum needs exactly four kicks");
    return events_[0].time - events_[1].time + events_[2].time - events_[3].time;
  }

 private:
  std::vector<FieldEvent> events_;
};

/// Gaussian pulses exp(-(t - T_k)^2 / tau^2) / (sqrt(pi) tau), each with unit area.
class PulseTrain {
 public:
  PulseTrain(std::vector<FieldEvent> events, double tau) : events_(std::move(events)), tau_(tau) {
    if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw ConfigError("PulseTrain: tau must be positive and finite");
    detail::check_increasing(events_, "PulseTrain");
  }

  const std::vector<FieldEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  double tau() const { return tau_; }

  /// Signed unit-area envelope f(t).
  double envelope(double t) const {
    const double norm = 1.0 / (std::sqrt(std::numbers::pi) * tau_);
    double f = 0.0;
    for (const auto& e : events_) {
      const double x = (t - e.time) / tau_;
      f += value(e.sign) * norm * std::exp(-x * x);
    }
    return f;
  }

  double support_half_width() const { return tol::kGaussianSupport * tau_; }

  /// Warnings for pulses whose truncated support leaves [t0, t1].
  std::vector<std::string> support_warnings(double t0, double t1) const {
    std::vector<std::string> out;
    for (const auto& e : events_) {
      if (e.time - support_half_width() <= t0 || e.time + support_half_width() >= t1) {
        std::ostringstream os;
        os << "pulse at T=" << e.time << " (tau=" << tau_ << ") is not inside (" << t0 << ", " << t1
           << ") to within 6 tau";
        out.push_back(os.str());
      }
    }
    return out;
  }

 private:
  std::vector<FieldEvent> events_;
  double tau_ = 0.0;
};

/// No driving field.
struct FreeEvolution {};

using FieldTrain = std::variant<FreeEvolution, KickTrain, PulseTrain>;

/// Field strengths plus exactly one train kind.
class FieldProfile {
 public:
  FieldProfile() = default;
  FieldProfile(FieldStrengths strengths, FieldTrain train) : strengths_(strengths), train_(std::move(train)) {
    if (!std::isfinite(strengths_.alpha) || !std::isfinite(strengths_.beta))
      throw ConfigError("FieldProfile: field strengths must be finite");
  }

  static FieldProfile free() { return {}; }
  static FieldProfile kicks(FieldStrengths s, std::vector<FieldEvent> events) {
    return {s, KickTrain(std::move(events))};
  }
  static FieldProfile pulses(FieldStrengths s, std::vector<FieldEvent> events, double tau) {
    return {s, PulseTrain(std::move(events), tau)};
  }

  const FieldStrengths& strengths() const { return strengths_; }
  const FieldTrain& train() const { return train_; }

  bool is_free() const { return std::holds_alternative<FreeEvolution>(train_); }
  const KickTrain* kick_train() const { return std::get_if<KickTrain>(&train_); }
  const PulseTrain* pulse_train() const { return std::get_if<PulseTrain>(&train_); }

  /// Events of whichever train is present (empty for free evolution).
  std::vector<FieldEvent> events() const {
    if (auto k = kick_train()) return k->events();
    if (auto p = pulse_train()) return p->events();
    return {};
  }

 private:
  FieldStrengths strengths_{};
  FieldTrain train_{FreeEvolution{}};
};

struct FieldSample {
  double b1 = 0.0;
  double b2 = 0.0;
  double deltaB = 0.0;  // b2 - b1
  double bT = 0.0;      // b1 + b2
};

inline FieldSample make_sample(double b1, double b2) { return {b1, b2, b2 - b1, b1 + b2}; }

inline FieldSample sample_fields(const FieldProfile& profile, double t) {
  if (profile.kick_train())
    throw UnsupportedError("sample_fields: delta kicks have no pointwise field value");
  if (auto p = profile.pulse_train()) {
    const double f = p->envelope(t);
    return make_sample(profile.strengths().alpha * f, profile.strengths().beta * f);
  }
  return {};
}

/// H0 = J (sx sx + sy sy + sz sz) in the (|11>, |10>, |01>, |00>) basis.
inline Matrix4 exchange_hamiltonian(double J) {
  Matrix4 h;
  h(0, 0) = J;
  h(1, 1) = -J;
  h(2, 2) = -J;
  h(3, 3) = J;
  h(1, 2) = 2.0 * J;
  h(2, 1) = 2.0 * J;
  return h;
}

/// Diagonal field term for instantaneous fields (b1, b2).
inline Matrix4 field_hamiltonian(const FieldSample& s) {
  return Matrix4::diagonal({-s.bT, s.deltaB, -s.deltaB, s.bT});
}

inline Matrix4 hamiltonian_at(const FieldProfile& profile, CouplingConstants c, double t) {
  return exchange_hamiltonian(c.J) + field_hamiltonian(sample_fields(profile, t));
}

/// sy(1) sx(2) - sx(1) sy(2).
inline Matrix4 exchange_twist_operator() {
  return kron(pauli::y(), pauli::x()) - kron(pauli::x(), pauli::y());
}

/// [H(t2), H(t1)] from the closed form
///   2iJ ((B1 - B2)(t1) - (B1 - B2)(t2)) (sy sx - sx sy),
/// which agrees with direct commutation of hamiltonian_at.
inline Matrix4 hamiltonian_commutator(const FieldProfile& profile, CouplingConstants c, double t1, double t2) {
  const FieldSample s1 = sample_fields(profile, t1);
  const FieldSample s2 = sample_fields(profile, t2);
  const double diff = (s1.b1 - s1.b2) - (s2.b1 - s2.b2);
  return Complex{0.0, 2.0 * c.J * diff} * exchange_twist_operator();
}

/// Scalar weight  int_0^t (t - 2t') f(t') dt'  of the leading ordering term.
template <class Envelope>
double ordering_weight(Envelope&& f, double t, double max_step) {
  return simpson([&](double tp) { return (t - 2.0 * tp) * f(tp); }, 0.0, t, max_step);
}

namespace detail {

inline double quadrature_step(const PulseTrain& p, double t) {
  double h = p.tau() / tol::kQuadPerTau;
  if (t > 0.0) h = std::min(h, t / tol::kQuadPerSpan);
  return h;
}

// int_0^t g(t') f(t') dt' where f is the pulse envelope, restricted to the
// truncated supports.
template <class Weight>
double pulse_integral(const PulseTrain& p, double t, Weight&& g, double h) {
  const double norm = 1.0 / (std::sqrt(std::numbers::pi) * p.tau());
  double total = 0.0;
  for (const auto& e : p.events()) {
    const double a = std::max(0.0, e.time - p.support_half_width());
    const double b = std::min(t, e.time + p.support_half_width());
    if (!(b > a)) continue;
    auto integrand = [&](double tp) {
      const double x = (tp - e.time) / p.tau();
      return g(tp) * norm * std::exp(-x * x);
    };
    total += value(e.sign) * simpson(integrand, a, b, h);
  }
  return total;
}

}  // namespace detail

/// Leading-order time-ordering correction  -1/2 [H0, H_int0] int_0^t (t - 2t') f(t') dt'
/// for a pulse train, with H_int0 = -(alpha sz(1) + beta sz(2)).
inline Matrix4 leading_ordering_term(const FieldProfile& profile, CouplingConstants c, double t) {
  const PulseTrain* p = profile.pulse_train();
  if (!p) throw UnsupportedError("leading_ordering_term: requires a pulse train");
  const double h = detail::quadrature_step(*p, t);
  auto weight = [t](double tp) { return t - 2.0 * tp; };
  const double coarse = detail::pulse_integral(*p, t, weight, h);
  const double fine = detail::pulse_integral(*p, t, weight, 0.5 * h);
  if (std::abs(coarse - fine) > tol::kQuadAgreement * std::max(1.0, std::abs(fine))) {
    std::ostringstream os;
    os << "leading_ordering_term: quadrature did not converge (" << coarse << " vs " << fine << ")";
    throw NumericalError(os.str());
  }
  const auto& s = profile.strengths();
  const Matrix4 h_int0 = Matrix4::diagonal({-(s.alpha + s.beta), -(s.alpha - s.beta), s.alpha - s.beta, s.alpha + s.beta});
  return Complex{-0.5 * fine, 0.0} * commutator(exchange_hamiltonian(c.J), h_int0);
}

/// (int_0^t B1, int_0^t B2). Kicks at T_i <= t count (right-continuous).
inline std::pair<double, double> integrated_strengths(const FieldProfile& profile, double t) {
  const auto& s = profile.strengths();
  double weight = 0.0;
  if (auto k = profile.kick_train()) {
    for (const auto& e : k->events())
      if (e.time <= t) weight += value(e.sign);
  } else if (auto p = profile.pulse_train()) {
    if (t > 0.0) weight = detail::pulse_integral(*p, t, [](double) { return 1.0; }, detail::quadrature_step(*p, t));
  }
  return {weight * s.alpha, weight * s.beta};
}

inline std::string describe(const FieldProfile& profile) {
  std::ostringstream os;
  if (profile.is_free()) return "free";
  os << (profile.kick_train() ? "kicks" : "pulses") << '[';
  bool first = true;
  for (const auto& e : profile.events()) {
    if (!first) os << ',';
    os << e.time << ':' << symbol(e.sign);
    first = false;
  }
  os << ']';
  if (auto p = profile.pulse_train()) os << " tau=" << p->tau();
  return os.str();
}

}  // namespace kickdyn
