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

// Scenario orchestration: concurrence time series, (alpha/beta, Jt) contour
// sweeps, method comparisons, and the named presets fig1a ... fig9h.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "kickdyn/entanglement.hpp"
#include "kickdyn/error.hpp"
#include "kickdyn/fields.hpp"
#include "kickdyn/integrator.hpp"
#include "kickdyn/propagators.hpp"
#include "kickdyn/state.hpp"

namespace kickdyn {

enum class Method { analytic_kick, rk4_pulse, no_ordering };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::analytic_kick: return "analytic-kick";
    case Method::rk4_pulse: return "rk4-pulse";
    case Method::no_ordering: return "no-ordering";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::analytic_kick, Method::rk4_pulse, Method::no_ordering})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

struct Scenario {
  NamedState initial = NamedState::ket01;
  FieldProfile profile;
  CouplingConstants coupling{1.0};
  SimGrid grid{0.0, 25.0, 0.01};
  Method method = Method::analytic_kick;
  bool oracle = false;  // attach Wootters lambda per sample
};

/// Throws ConfigError unless the method can evaluate the profile.
inline void validate(const Scenario& s) {
  if (!std::isfinite(s.coupling.J)) throw ConfigError("scenario: J must be finite");
  const auto& st = s.profile.strengths();
  if (!std::isfinite(st.alpha) || !std::isfinite(st.beta)) throw ConfigError("scenario: alpha and beta must be finite");
  if (s.grid.t0() < 0.0) throw ConfigError("scenario: time grid must start at t >= 0");
  if (s.method == Method::analytic_kick && s.profile.pulse_train())
    throw ConfigError("scenario: method analytic-kick requires a kick train, got pulses");
  if (s.method == Method::rk4_pulse && s.profile.kick_train())
    throw ConfigError("scenario: method rk4-pulse requires a pulse train, got kicks");
  if (s.method == Method::rk4_pulse && s.profile.pulse_train() && s.grid.dt() > s.profile.pulse_train()->tau() / tol::kStepsPerTau)
    throw ConfigError("scenario: dt exceeds tau/20");
}

struct RunMetadata {
  Method method = Method::analytic_kick;
  NamedState initial = NamedState::ket01;
  std::optional<double> alpha;  // absent for ratio sweeps
  double beta = 0.0, J = 0.0;
  std::optional<double> tau;
  std::optional<double> dt;  // RK4 step; analytic methods have none
  double t0 = 0.0, t1 = 0.0;
  std::size_t samples = 0;
  std::string train;
  double max_norm_drift = 0.0;
  std::vector<std::string> warnings;
};

inline RunMetadata make_metadata(const Scenario& s) {
  RunMetadata m;
  m.method = s.method;
  m.initial = s.initial;
  m.alpha = s.profile.strengths().alpha;
  m.beta = s.profile.strengths().beta;
  m.J = s.coupling.J;
  if (auto p = s.profile.pulse_train()) {
    m.tau = p->tau();
    for (auto& w : p->support_warnings(s.grid.t0(), s.grid.t1())) m.warnings.push_back(std::move(w));
  }
  if (s.method == Method::rk4_pulse) m.dt = s.grid.dt();
  m.t0 = s.grid.t0();
  m.t1 = s.grid.t1();
  m.samples = s.grid.samples();
  m.train = describe(s.profile);
  return m;
}

struct SeriesResult {
  ConcurrenceSeries series;
  RunMetadata meta;
};

namespace detail {

struct StatesAt {
  std::vector<double> times;
  std::vector<StateVector> states;
  double max_norm_drift = 0.0;
};

inline BlockPropagator analytic_propagator(const Scenario& s, double t) {
  if (s.method == Method::no_ordering) return no_ordering_propagator(s.profile, s.coupling, t);
  if (auto k = s.profile.kick_train()) return kick_sequence_propagator(*k, s.profile.strengths(), s.coupling, t);
  return free_propagator(s.coupling, t);
}

inline StatesAt evolve_scenario(const Scenario& s) {
  StatesAt out;
  const StateVector psi0 = make_state(s.initial);
  if (s.method == Method::rk4_pulse) {
    const Trajectory tr = in_exchange_sector(psi0) ? integrate_sector(s.profile, s.coupling, s.grid, psi0[1], psi0[2])
                                                   : integrate_full(s.profile, s.coupling, s.grid, psi0);
    out.times = tr.times;
    out.states = tr.states;
    out.max_norm_drift = tr.info.max_norm_drift;
    return out;
  }
  out.times = s.grid.sample_times();
  out.states.reserve(out.times.size());
  for (double t : out.times) out.states.push_back(evolve(psi0, analytic_propagator(s, t)));
  return out;
}

inline std::optional<double> single_plus_kick_time(const FieldProfile& p) {
  auto k = p.kick_train();
  if (!k || k->size() != 1 || k->events()[0].sign != Sign::plus) return std::nullopt;
  return k->events()[0].time;
}

}  // namespace detail

/// Concurrence of the scenario's state at every grid sample.
inline SeriesResult run_timeseries(const Scenario& s) {
  validate(s);
  SeriesResult r;
  r.meta = make_metadata(s);
  const detail::StatesAt ev = detail::evolve_scenario(s);
  r.meta.max_norm_drift = ev.max_norm_drift;
  auto& ser = r.series;
  ser.times = ev.times;
  ser.values.reserve(ev.states.size());
  for (const auto& st : ev.states) {
    const ConcurrenceValue c = concurrence_pure_checked(st);
    if (c.excess) ++ser.health_warnings;
    ser.values.push_back(c.value);
  }
  if (s.oracle) {
    ser.lambda.emplace();
    for (const auto& st : ev.states) ser.lambda->push_back(wootters(DensityMatrix::pure(st)).lambda);
  }
  const auto t1 = detail::single_plus_kick_time(s.profile);
  if (s.method == Method::analytic_kick && s.initial == NamedState::ket01 && t1) {
    ser.Lambda.emplace();
    const double delta = s.profile.strengths().delta();
    for (double t : ser.times)
      if (t > *t1) ser.Lambda->emplace_back(t, separable_kick_lambda(delta, s.coupling.J, t, *t1));
  }
  if (ser.health_warnings > 0)
    r.meta.warnings.push_back(std::to_string(ser.health_warnings) + " samples had pre-clamp concurrence above 1 + 1e-9");
  return r;
}

struct AxisSpec {
  double lo = 0.0, hi = 1.0;
  std::size_t n = 2;

  std::vector<double> values() const {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
  }
};

/// Sweep of alpha/beta (beta fixed by the template) against Jt.
/// The template's grid supplies the time axis and the RK4 step.
/// RK4 rows use step_request when set, else default_step for that row's field.
struct SweepSpec {
  AxisSpec ratio{1.0, 10.0, 200};
  Scenario base;
  std::optional<double> step_request;
};

struct ContourGrid {
  std::vector<double> ratios;
  std::vector<double> jt;      // J t for each column
  std::vector<double> values;  // row-major, ratios.size() x jt.size()
  RunMetadata meta;

  double at(std::size_t i, std::size_t j) const { return values[i * jt.size() + j]; }
};

inline void validate(const SweepSpec& s) {
  if (s.ratio.n < 2) throw ConfigError("contour: ratio axis needs >= 2 points");
  if (!std::isfinite(s.ratio.lo) || !std::isfinite(s.ratio.hi) || !(s.ratio.hi > s.ratio.lo))
    throw ConfigError("contour: ratio range must be finite with lo < hi");
  if (s.base.grid.samples() < 2) throw ConfigError("contour: time axis needs >= 2 points");
  if (s.base.oracle) throw ConfigError("contour: oracle mode is not available for sweeps");
  validate(s.base);
}

/// Worker count from KICKDYN_THREADS (unset or 0 means hardware concurrency).
inline unsigned sweep_threads() {
  unsigned n = 0;
  if (const char* env = std::getenv("KICKDYN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw ConfigError("KICKDYN_THREADS must be a non-negative integer");
    n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

inline Scenario with_ratio(const Scenario& base, double ratio, std::optional<double> step_request = std::nullopt) {
  Scenario s = base;
  const double beta = base.profile.strengths().beta;
  const FieldStrengths st{ratio * beta, beta};
  if (auto k = base.profile.kick_train())
    s.profile = FieldProfile::kicks(st, k->events());
  else if (auto p = base.profile.pulse_train())
    s.profile = FieldProfile::pulses(st, p->events(), p->tau());
  if (s.method == Method::rk4_pulse) {
    const double dt = step_request ? *step_request : default_step(s.profile, s.coupling);
    s.grid = SimGrid::from_samples(base.grid.t0(), base.grid.t1(), base.grid.samples(), dt);
  }
  return s;
}

/// Rows are computed independently and written into disjoint slices of a
/// preallocated grid, so the output does not depend on the worker count.
inline ContourGrid run_contour(const SweepSpec& sweep, unsigned threads = 0) {
  validate(sweep);
  ContourGrid g;
  g.ratios = sweep.ratio.values();
  const auto times = sweep.base.grid.sample_times();
  g.jt.reserve(times.size());
  for (double t : times) g.jt.push_back(sweep.base.coupling.J * t);
  g.meta = make_metadata(sweep.base);
  g.meta.alpha.reset();
  if (sweep.base.method == Method::rk4_pulse && !sweep.step_request) g.meta.dt.reset();  // chosen per row
  const std::size_t rows = g.ratios.size(), cols = times.size();
  g.values.assign(rows * cols, 0.0);

  std::vector<std::exception_ptr> failures(rows);
  std::vector<double> drift(rows, 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows; i = next++) {
      try {
        const Scenario s = with_ratio(sweep.base, g.ratios[i], sweep.step_request);
        const detail::StatesAt ev = detail::evolve_scenario(s);
        drift[i] = ev.max_norm_drift;
        for (std::size_t j = 0; j < cols; ++j) {
          try {
            g.values[i * cols + j] = concurrence_pure(ev.states[j]);
          } catch (const Error& e) {
            std::ostringstream os;
            os << "cell (" << i << ", " << j << ") at t = " << times[j] << ": " << e.what();
            throw NumericalError(os.str());
          }
        }
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "contour row " << i << " (alpha/beta = " << g.ratios[i] << "): " << e.what();
        failures[i] = std::make_exception_ptr(NumericalError(os.str()));
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads ? threads : sweep_threads(), rows));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  g.meta.max_norm_drift = *std::max_element(drift.begin(), drift.end());
  return g;
}

/// Full propagator at each sample. RK4 builds it column by column from the basis states.
inline std::vector<Matrix4> scenario_propagators(const Scenario& s) {
  validate(s);
  std::vector<Matrix4> out;
  if (s.method != Method::rk4_pulse) {
    for (double t : s.grid.sample_times()) out.push_back(detail::analytic_propagator(s, t).matrix());
    return out;
  }
  out.assign(s.grid.samples(), Matrix4{});
  for (std::size_t col = 0; col < 4; ++col) {
    StateVector e{};
    e[col] = 1.0;
    const Trajectory tr = integrate_full(s.profile, s.coupling, s.grid, e);
    for (std::size_t k = 0; k < out.size(); ++k)
      for (std::size_t row = 0; row < 4; ++row) out[k](row, col) = tr.states[k][row];
  }
  return out;
}

struct VariantComparison {
  Method method = Method::no_ordering;
  std::vector<double> values;       // C under this variant
  std::vector<double> c_diff;       // |C_reference - C_variant|
  std::vector<double> matrix_diff;  // max-norm of the propagator difference
  double max_c_diff = 0.0;
  double max_matrix_diff = 0.0;
};

struct ComparisonReport {
  SeriesResult reference;
  std::vector<VariantComparison> variants;
  bool equal_fields = false;   // alpha == beta: ordering effects vanish
  bool zero_coupling = false;  // J == 0: ordering effects vanish
};

/// Per-sample concurrence and propagator differences between a reference
/// scenario and variants that share its state, strengths, coupling and sample times.
inline ComparisonReport compare_methods(const Scenario& reference, const std::vector<Scenario>& variants) {
  ComparisonReport rep;
  rep.reference = run_timeseries(reference);
  const auto& rs = reference.profile.strengths();
  rep.equal_fields = rs.alpha == rs.beta;
  rep.zero_coupling = reference.coupling.J == 0.0;
  const auto ref_u = scenario_propagators(reference);
  const auto ref_times = reference.grid.sample_times();
  for (const auto& v : variants) {
    const auto& vs = v.profile.strengths();
    if (v.initial != reference.initial) throw ConfigError("compare: variant initial state differs from reference");
    if (vs.alpha != rs.alpha || vs.beta != rs.beta) throw ConfigError("compare: variant field strengths differ from reference");
    if (v.coupling.J != reference.coupling.J) throw ConfigError("compare: variant J differs from reference");
    if (v.grid.sample_times() != ref_times) throw ConfigError("compare: variant sample times differ from reference");
    VariantComparison vc;
    vc.method = v.method;
    vc.values = run_timeseries(v).series.values;
    const auto u = scenario_propagators(v);
    for (std::size_t k = 0; k < ref_times.size(); ++k) {
      vc.c_diff.push_back(std::abs(rep.reference.series.values[k] - vc.values[k]));
      vc.matrix_diff.push_back(max_abs_diff(ref_u[k], u[k]));
    }
    vc.max_c_diff = *std::max_element(vc.c_diff.begin(), vc.c_diff.end());
    vc.max_matrix_diff = *std::max_element(vc.matrix_diff.begin(), vc.matrix_diff.end());
    rep.variants.push_back(std::move(vc));
  }
  return rep;
}

enum class PresetKind { timeseries, contour };

/// Named scenario. Time-series presets default to the
/// alpha = 2 beta curve; alpha = 3 beta is one override away.
struct Preset {
  std::string name;
  PresetKind kind = PresetKind::timeseries;
  NamedState initial = NamedState::psi_plus;
  Method method = Method::analytic_kick;
  std::vector<FieldEvent> events;
  std::optional<double> tau;
  double alpha = 2.0, beta = 1.0, J = 1.0;
  double t_max = 25.0;
  AxisSpec ratio{1.0, 10.0, 200};
  std::size_t time_points = 500;
};

inline constexpr double kPresetTMax = 25.0;
inline constexpr std::size_t kContourRatioPoints = 200;
inline constexpr std::size_t kContourTimePoints = 500;
inline constexpr std::size_t kSeriesTimePoints = 2501;

inline std::vector<Preset> all_presets() {
  const std::vector<FieldEvent> one{{5.0, Sign::plus}};
  const std::vector<FieldEvent> pm{{5.0, Sign::plus}, {10.0, Sign::minus}};
  const std::vector<FieldEvent> pp{{5.0, Sign::plus}, {10.0, Sign::plus}};
  const std::vector<FieldEvent> four{{5.0, Sign::plus}, {10.0, Sign::plus}, {15.0, Sign::plus}, {20.0, Sign::plus}};
  const std::array<double, 4> widths{0.05, 0.1, 0.15, 0.2};

  std::vector<Preset> out;
  auto add = [&](std::string name, PresetKind kind, NamedState st, Method m, const std::vector<FieldEvent>& ev,
                 std::optional<double> tau) {
    Preset p;
    p.name = std::move(name);
    p.kind = kind;
    p.initial = st;
    p.method = m;
    p.events = ev;
    p.tau = tau;
    p.t_max = kPresetTMax;
    p.time_points = kind == PresetKind::contour ? kContourTimePoints : kSeriesTimePoints;
    p.ratio = {1.0, 10.0, kContourRatioPoints};
    out.push_back(std::move(p));
  };
  const std::array<std::pair<int, const std::vector<FieldEvent>*>, 4> kicked{{{1, &one}, {2, &pm}, {3, &pp}, {4, &four}}};
  for (const auto& [fig, ev] : kicked) {
    add("fig" + std::to_string(fig) + "a", PresetKind::timeseries, NamedState::psi_plus, Method::analytic_kick, *ev, {});
    add("fig" + std::to_string(fig) + "b", PresetKind::timeseries, NamedState::ket01, Method::analytic_kick, *ev, {});
  }
  add("fig5a", PresetKind::contour, NamedState::psi_plus, Method::analytic_kick, four, {});
  add("fig5b", PresetKind::contour, NamedState::ket01, Method::analytic_kick, four, {});
  const std::array<std::pair<int, const std::vector<FieldEvent>*>, 4> pulsed{{{6, &one}, {7, &pm}, {8, &pp}, {9, &four}}};
  for (const auto& [fig, ev] : pulsed) {
    const PresetKind kind = fig == 9 ? PresetKind::contour : PresetKind::timeseries;
    for (std::size_t w = 0; w < widths.size(); ++w) {
      const char bell = static_cast<char>('a' + 2 * w);
      add("fig" + std::to_string(fig) + bell, kind, NamedState::psi_plus, Method::rk4_pulse, *ev, widths[w]);
      add("fig" + std::to_string(fig) + static_cast<char>(bell + 1), kind, NamedState::ket01, Method::rk4_pulse, *ev,
          widths[w]);
    }
  }
  return out;
}

inline std::optional<Preset> find_preset(std::string_view name) {
  for (auto& p : all_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace kickdyn
