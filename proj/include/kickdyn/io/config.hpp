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

// Run configuration: preset values, then a key=value config file, then
// command-line flags, each layer overriding the one before.
//
// Config file grammar:
//   # comment
//   key = value            (keys as the long flag names, without "--")
//   [kicks]                (following lines are "time:sign" entries)
//   [pulses]               (same; "tau = x" is also accepted here)

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kickdyn/error.hpp"
#include "kickdyn/experiments.hpp"
#include "kickdyn/fields.hpp"
#include "kickdyn/state.hpp"

namespace kickdyn::io {

enum class Command { timeseries, contour, compare, verify };
enum class Format { csv, json };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::timeseries: return "timeseries";
    case Command::contour: return "contour";
    case Command::compare: return "compare";
    case Command::verify: return "verify";
  }
  return "?";
}

inline std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

/// One configuration layer. Unset fields defer to the layer below.
struct Overrides {
  std::optional<std::string> preset;
  std::optional<NamedState> initial;
  std::optional<double> J, alpha, beta, tau, dt, t_max;
  std::optional<std::vector<FieldEvent>> kicks, pulses;
  std::optional<AxisSpec> ratio;
  std::optional<Method> method;
  std::optional<std::size_t> samples;
  std::optional<std::string> out;
  std::optional<Format> format;
};

/// Fully resolved configuration; every field has a value.
struct RunConfig {
  Command command = Command::timeseries;
  std::optional<std::string> preset;
  std::optional<std::string> config_file;
  NamedState initial = NamedState::psi_plus;
  double J = 1.0, alpha = 2.0, beta = 1.0;
  std::optional<double> tau;
  std::optional<double> dt;  // RK4 step request; default_step when absent
  std::vector<FieldEvent> events;
  enum class Train { none, kicks, pulses } train = Train::none;
  Method method = Method::analytic_kick;
  double t_max = kPresetTMax;
  std::size_t samples = kSeriesTimePoints;
  AxisSpec ratio{1.0, 10.0, kContourRatioPoints};
  std::string out = "-";
  Format format = Format::csv;
};

// ---- field parsers; every error names the offending field

inline double parse_double(std::string_view field, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw UsageError(std::string(field) + ": malformed number '" + std::string(text) + "'");
  return v;
}

inline std::size_t parse_count(std::string_view field, std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError(std::string(field) + ": malformed count '" + std::string(text) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline FieldEvent parse_event(std::string_view field, std::string_view item) {
  item = trim(item);
  const auto colon = item.rfind(':');
  if (colon == std::string_view::npos) throw UsageError(std::string(field) + ": expected time:sign, got '" + std::string(item) + "'");
  const double t = parse_double(field, trim(item.substr(0, colon)));
  const std::string_view sign = trim(item.substr(colon + 1));
  if (sign != "+" && sign != "-")
    throw UsageError(std::string(field) + ": sign must be + or -, got '" + std::string(sign) + "'");
  return {t, sign == "+" ? Sign::plus : Sign::minus};
}

/// "t1:+,t2:-,..."
inline std::vector<FieldEvent> parse_events(std::string_view field, std::string_view text) {
  std::vector<FieldEvent> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_event(field, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

/// "lo:hi:n"
inline AxisSpec parse_axis(std::string_view field, std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw UsageError(std::string(field) + ": expected lo:hi:n, got '" + std::string(text) + "'");
  AxisSpec ax{parse_double(field, text.substr(0, a)), parse_double(field, text.substr(a + 1, b - a - 1)),
              parse_count(field, text.substr(b + 1))};
  if (ax.n < 2) throw UsageError(std::string(field) + ": need at least 2 points");
  if (!(ax.hi > ax.lo)) throw UsageError(std::string(field) + ": need lo < hi");
  return ax;
}

inline NamedState parse_initial(std::string_view field, std::string_view text) {
  if (auto s = parse_named_state(text)) return *s;
  throw UsageError(std::string(field) + ": unknown initial state '" + std::string(text) +
                   "' (expected 11, 10, 01, 00, phi+, phi-, psi+, psi-, bell)");
}

inline Method parse_method_field(std::string_view field, std::string_view text) {
  if (auto m = parse_method(text)) return *m;
  throw UsageError(std::string(field) + ": unknown method '" + std::string(text) +
                   "' (expected analytic-kick, rk4-pulse, no-ordering)");
}

inline Format parse_format(std::string_view field, std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw UsageError(std::string(field) + ": unknown format '" + std::string(text) + "' (expected csv or json)");
}

/// Applies one key=value pair to a layer. Keys are the long flag names.
inline void apply_setting(Overrides& o, std::string_view key, std::string_view value) {
  const std::string field(key);
  if (key == "preset") o.preset = std::string(value);
  else if (key == "initial") o.initial = parse_initial(field, value);
  else if (key == "J") o.J = parse_double(field, value);
  else if (key == "alpha") o.alpha = parse_double(field, value);
  else if (key == "beta") o.beta = parse_double(field, value);
  else if (key == "tau") o.tau = parse_double(field, value);
  else if (key == "dt") o.dt = parse_double(field, value);
  else if (key == "t-max") o.t_max = parse_double(field, value);
  else if (key == "samples") o.samples = parse_count(field, value);
  else if (key == "kicks") o.kicks = parse_events(field, value);
  else if (key == "pulses") o.pulses = parse_events(field, value);
  else if (key == "ratio-range") o.ratio = parse_axis(field, value);
  else if (key == "method") o.method = parse_method_field(field, value);
  else if (key == "out") o.out = std::string(value);
  else if (key == "format") o.format = parse_format(field, value);
  else throw UsageError("config: unknown key '" + field + "'");
}

inline Overrides parse_config_text(std::string_view text, std::string_view origin = "config") {
  Overrides o;
  std::map<std::string, std::size_t> seen;
  enum class Section { top, kicks, pulses } section = Section::top;
  std::vector<FieldEvent> kicks, pulses;
  bool kicks_section = false, pulses_section = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto where = [&] { return std::string(origin) + ":" + std::to_string(lineno) + ": "; };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[kicks]") section = Section::kicks, kicks_section = true;
      else if (line == "[pulses]") section = Section::pulses, pulses_section = true;
      else throw UsageError(where() + "unknown section " + std::string(line));
      continue;
    }
    const auto eq = line.find('=');
    try {
      if (section != Section::top && eq == std::string_view::npos) {
        (section == Section::kicks ? kicks : pulses).push_back(parse_event(section == Section::kicks ? "kicks" : "pulses", line));
        continue;
      }
      if (eq == std::string_view::npos) throw UsageError("expected key = value");
      const std::string key(trim(line.substr(0, eq)));
      const std::string_view value = trim(line.substr(eq + 1));
      if (section == Section::kicks) throw UsageError("[kicks] takes time:sign entries only");
      if (section == Section::pulses && key != "tau") throw UsageError("[pulses] accepts only time:sign entries and tau");
      if (seen.count(key)) throw UsageError(key + ": duplicate key (first set on line " + std::to_string(seen[key]) + ")");
      seen[key] = lineno;
      apply_setting(o, key, value);
    } catch (const UsageError& e) {
      throw UsageError(where() + e.what());
    }
  }
  if (kicks_section) {
    if (o.kicks) throw UsageError(std::string(origin) + ": kicks given both as a key and a [kicks] section");
    o.kicks = kicks;
  }
  if (pulses_section) {
    if (o.pulses) throw UsageError(std::string(origin) + ": pulses given both as a key and a [pulses] section");
    o.pulses = pulses;
  }
  if (o.kicks && o.pulses) throw UsageError(std::string(origin) + ": kicks/pulses: give only one train");
  return o;
}

inline Overrides load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

inline Overrides preset_layer(const Preset& p) {
  Overrides o;
  o.preset = p.name;
  o.initial = p.initial;
  o.J = p.J;
  o.alpha = p.alpha;
  o.beta = p.beta;
  o.t_max = p.t_max;
  o.samples = p.time_points;
  o.ratio = p.ratio;
  o.method = p.method;
  if (p.tau) {
    o.pulses = p.events;
    o.tau = p.tau;
  } else {
    o.kicks = p.events;
  }
  return o;
}

namespace detail {

template <class T>
void take(std::optional<T>& into, const std::optional<T>& from) {
  if (from) into = from;
}

/// Overlays `top` on `base`. A train in `top` replaces any train in `base`.
inline Overrides overlay(Overrides base, const Overrides& top) {
  if (top.kicks && top.pulses) throw UsageError("kicks/pulses: a configuration layer may give only one train");
  if (top.kicks || top.pulses) {
    base.kicks.reset();
    base.pulses.reset();
    if (!top.method) base.method.reset();
  }
  take(base.preset, top.preset);
  take(base.initial, top.initial);
  take(base.J, top.J);
  take(base.alpha, top.alpha);
  take(base.beta, top.beta);
  take(base.tau, top.tau);
  take(base.dt, top.dt);
  take(base.t_max, top.t_max);
  take(base.kicks, top.kicks);
  take(base.pulses, top.pulses);
  take(base.ratio, top.ratio);
  take(base.method, top.method);
  take(base.samples, top.samples);
  take(base.out, top.out);
  take(base.format, top.format);
  return base;
}

}  // namespace detail

/// Resolves preset < file < flags and validates the result before any compute.
inline RunConfig resolve_config(Command command, const Overrides& file, const Overrides& flags,
                                std::optional<std::string> config_path = std::nullopt) {
  if (file.kicks && file.pulses) throw UsageError("kicks/pulses: the config file gives both trains");
  if (flags.kicks && flags.pulses) throw UsageError("kicks/pulses: --kicks and --pulses are mutually exclusive");
  const std::optional<std::string> preset_name = flags.preset ? flags.preset : file.preset;
  Overrides merged;
  if (preset_name) {
    const auto p = find_preset(*preset_name);
    if (!p) throw UsageError("preset: unknown preset '" + *preset_name + "'");
    if (command == Command::contour && p->kind != PresetKind::contour)
      throw UsageError("preset: '" + *preset_name + "' is a time-series preset; use a contour preset (fig5*, fig9*)");
    if (command != Command::contour && p->kind == PresetKind::contour)
      throw UsageError("preset: '" + *preset_name + "' is a contour preset; use it with the contour command");
    merged = preset_layer(*p);
  }
  merged = detail::overlay(merged, file);
  merged = detail::overlay(merged, flags);

  RunConfig c;
  c.command = command;
  c.preset = preset_name;
  c.config_file = std::move(config_path);
  if (merged.initial) c.initial = *merged.initial;
  if (merged.J) c.J = *merged.J;
  if (merged.alpha) c.alpha = *merged.alpha;
  if (merged.beta) c.beta = *merged.beta;
  c.tau = merged.tau;
  c.dt = merged.dt;
  if (merged.t_max) c.t_max = *merged.t_max;
  if (merged.samples) c.samples = *merged.samples;
  else if (command == Command::contour) c.samples = kContourTimePoints;
  if (merged.ratio) c.ratio = *merged.ratio;
  if (merged.out) c.out = *merged.out;
  if (merged.format) c.format = *merged.format;
  if (merged.kicks) {
    c.train = RunConfig::Train::kicks;
    c.events = *merged.kicks;
  } else if (merged.pulses) {
    c.train = RunConfig::Train::pulses;
    c.events = *merged.pulses;
  }
  if (merged.method) c.method = *merged.method;
  else c.method = c.train == RunConfig::Train::pulses ? Method::rk4_pulse : Method::analytic_kick;

  if (!(c.t_max > 0.0)) throw UsageError("t-max: must be positive");
  if (c.samples < 2) throw UsageError("samples: need at least 2");
  if (c.dt && !(*c.dt > 0.0)) throw UsageError("dt: must be positive");
  if (c.train == RunConfig::Train::pulses) {
    if (!c.tau) throw UsageError("tau: a pulse train needs a width");
    if (!(*c.tau > 0.0)) throw UsageError("tau: must be positive");
    if (c.method == Method::analytic_kick) throw UsageError("method: analytic-kick cannot evaluate a pulse train");
  } else if (c.train == RunConfig::Train::kicks && c.method == Method::rk4_pulse) {
    throw UsageError("method: rk4-pulse cannot evaluate a kick train");
  }
  if (c.train == RunConfig::Train::kicks) c.tau.reset();
  if (c.command == Command::compare && c.method == Method::no_ordering)
    throw UsageError("method: compare uses the time-ordered method as reference; pick analytic-kick or rk4-pulse");
  try {
    if (c.train == RunConfig::Train::kicks) (void)KickTrain(c.events);
    if (c.train == RunConfig::Train::pulses) (void)PulseTrain(c.events, *c.tau);
  } catch (const ConfigError& e) {
    throw UsageError(std::string(c.train == RunConfig::Train::kicks ? "kicks: " : "pulses: ") + e.what());
  }
  if (c.dt && c.tau && *c.dt > *c.tau / tol::kStepsPerTau) throw UsageError("dt: must not exceed tau/20");
  return c;
}

inline FieldProfile make_profile(const RunConfig& c, double alpha) {
  const FieldStrengths s{alpha, c.beta};
  switch (c.train) {
    case RunConfig::Train::kicks: return FieldProfile::kicks(s, c.events);
    case RunConfig::Train::pulses: return FieldProfile::pulses(s, c.events, *c.tau);
    case RunConfig::Train::none: break;
  }
  return FieldProfile::free();
}

inline Scenario make_scenario(const RunConfig& c, Method method) {
  Scenario s;
  s.initial = c.initial;
  s.profile = make_profile(c, c.alpha);
  s.coupling = {c.J};
  s.method = method;
  const double step = c.dt ? *c.dt : default_step(s.profile, s.coupling);
  // analytic methods sample directly, one step per sample
  s.grid = SimGrid::from_samples(0.0, c.t_max, c.samples, method == Method::rk4_pulse ? step : c.t_max);
  return s;
}

inline Scenario make_scenario(const RunConfig& c) { return make_scenario(c, c.method); }

inline SweepSpec make_sweep(const RunConfig& c) {
  SweepSpec s;
  s.ratio = c.ratio;
  s.base = make_scenario(c);
  s.step_request = c.dt;
  return s;
}

}  // namespace kickdyn::io
