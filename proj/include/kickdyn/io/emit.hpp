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

// CSV and JSON emission of series, contour grids and comparison reports.
// Every number is written with 12 significant digits. CSV written to a file
// gets a sidecar <path>.meta.json carrying the metadata block.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include "kickdyn/error.hpp"
#include "kickdyn/experiments.hpp"
#include "kickdyn/io/config.hpp"
#include "kickdyn/version.hpp"

namespace kickdyn::io {

using nlohmann::json;

inline std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, so JSON and CSV carry identical values.
inline double round12(double x) { return std::stod(fmt12(x)); }

inline json number(double x) { return round12(x); }

inline json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(round12(x));
  return a;
}

/// Resolved configuration under the config-file keys; writing each pair as
/// key = value reproduces the run.
inline json config_json(const RunConfig& c) {
  auto events = [&] {
    std::string s;
    for (const auto& e : c.events) s += (s.empty() ? "" : ",") + fmt12(e.time) + ":" + symbol(e.sign);
    return s;
  };
  json j;
  j["command"] = std::string(to_string(c.command));
  j["config_file"] = c.config_file ? json(*c.config_file) : json(nullptr);
  j["preset"] = c.preset ? json(*c.preset) : json(nullptr);
  j["initial"] = std::string(to_string(c.initial));
  j["J"] = fmt12(c.J);
  j["alpha"] = fmt12(c.alpha);
  j["beta"] = fmt12(c.beta);
  if (c.tau) j["tau"] = fmt12(*c.tau);
  if (c.dt) j["dt"] = fmt12(*c.dt);
  if (c.train == RunConfig::Train::kicks) j["kicks"] = events();
  if (c.train == RunConfig::Train::pulses) j["pulses"] = events();
  j["method"] = std::string(to_string(c.method));
  j["t-max"] = fmt12(c.t_max);
  j["samples"] = std::to_string(c.samples);
  if (c.command == Command::contour) j["ratio-range"] = fmt12(c.ratio.lo) + ":" + fmt12(c.ratio.hi) + ":" + std::to_string(c.ratio.n);
  j["format"] = std::string(to_string(c.format));
  return j;
}

inline json metadata_json(const RunMetadata& m, const RunConfig* config) {
  json j;
  j["tool"] = "kickdyn";
  j["version"] = kVersion;
  j["method"] = std::string(to_string(m.method));
  j["initial"] = std::string(to_string(m.initial));
  j["alpha"] = m.alpha ? number(*m.alpha) : json(nullptr);
  j["beta"] = number(m.beta);
  j["J"] = number(m.J);
  j["tau"] = m.tau ? number(*m.tau) : json(nullptr);
  j["dt"] = m.dt ? number(*m.dt) : json(nullptr);
  j["t0"] = number(m.t0);
  j["t1"] = number(m.t1);
  j["samples"] = m.samples;
  j["train"] = m.train;
  j["max_norm_drift"] = number(m.max_norm_drift);
  j["warnings"] = m.warnings;
  if (m.method == Method::rk4_pulse)
    j["step_policy"] = "fixed-step RK4, dt <= min(tau/20, 1e-3/J, 0.03/max|H|) unless dt is given, "
                       "no renormalization; drift above 1e-8 aborts";
  if (config) j["config"] = config_json(*config);
  return j;
}

inline json to_json(const SeriesResult& r, const RunConfig* config = nullptr) {
  json j;
  j["kind"] = "timeseries";
  j["metadata"] = metadata_json(r.meta, config);
  j["t"] = numbers(r.series.times);
  j["C"] = numbers(r.series.values);
  if (r.series.lambda) {
    json a = json::array();
    for (const auto& l : *r.series.lambda) a.push_back({round12(l[0]), round12(l[1]), round12(l[2]), round12(l[3])});
    j["lambda"] = a;
  }
  if (r.series.Lambda) {
    json a = json::array();
    for (const auto& [t, v] : *r.series.Lambda) a.push_back({round12(t), round12(v.real()), round12(v.imag())});
    j["Lambda"] = a;
  }
  return j;
}

inline json to_json(const ContourGrid& g, const RunConfig* config = nullptr) {
  json j;
  j["kind"] = "contour";
  j["metadata"] = metadata_json(g.meta, config);
  j["ratio"] = numbers(g.ratios);
  j["Jt"] = numbers(g.jt);
  json rows = json::array();
  for (std::size_t i = 0; i < g.ratios.size(); ++i)
    rows.push_back(numbers(std::vector<double>(g.values.begin() + i * g.jt.size(), g.values.begin() + (i + 1) * g.jt.size())));
  j["C"] = rows;
  return j;
}

inline json to_json(const ComparisonReport& r, const RunConfig* config = nullptr) {
  json j;
  j["kind"] = "compare";
  j["metadata"] = metadata_json(r.reference.meta, config);
  j["nullity"] = {{"equal_fields", r.equal_fields}, {"zero_coupling", r.zero_coupling}};
  j["t"] = numbers(r.reference.series.times);
  j["C"] = numbers(r.reference.series.values);
  json vs = json::array();
  for (const auto& v : r.variants) {
    vs.push_back({{"method", std::string(to_string(v.method))},
                  {"C", numbers(v.values)},
                  {"diff", numbers(v.c_diff)},
                  {"propagator_diff", numbers(v.matrix_diff)},
                  {"max_diff", number(v.max_c_diff)},
                  {"max_propagator_diff", number(v.max_matrix_diff)}});
  }
  j["variants"] = vs;
  return j;
}

inline void write_csv(std::ostream& os, const SeriesResult& r) {
  os << "t,C\n";
  for (std::size_t k = 0; k < r.series.times.size(); ++k)
    os << fmt12(r.series.times[k]) << ',' << fmt12(r.series.values[k]) << '\n';
}

/// First row: Jt axis. First column: alpha/beta axis.
inline void write_csv(std::ostream& os, const ContourGrid& g) {
  os << "alpha/beta\\Jt";
  for (double x : g.jt) os << ',' << fmt12(x);
  os << '\n';
  for (std::size_t i = 0; i < g.ratios.size(); ++i) {
    os << fmt12(g.ratios[i]);
    for (std::size_t j = 0; j < g.jt.size(); ++j) os << ',' << fmt12(g.at(i, j));
    os << '\n';
  }
}

/// t, C, then (C_<variant>, diff) per variant.
inline void write_csv(std::ostream& os, const ComparisonReport& r) {
  os << "t,C";
  for (const auto& v : r.variants) {
    std::string name(to_string(v.method));
    std::erase(name, '-');
    os << ",C_" << name << ",diff";
  }
  os << '\n';
  for (std::size_t k = 0; k < r.reference.series.times.size(); ++k) {
    os << fmt12(r.reference.series.times[k]) << ',' << fmt12(r.reference.series.values[k]);
    for (const auto& v : r.variants) os << ',' << fmt12(v.values[k]) << ',' << fmt12(v.c_diff[k]);
    os << '\n';
  }
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

/// Writes `result` to path ("-" is stdout) in the given format.
template <class Result>
void emit(const Result& result, Format format, const std::string& path, std::ostream& stdout_stream,
          const RunConfig* config = nullptr) {
  std::ostringstream body;
  const json j = to_json(result, config);
  if (format == Format::json) body << j.dump(2) << '\n';
  else write_csv(body, result);
  if (path == "-") {
    stdout_stream << body.str();
    return;
  }
  write_file(path, body.str());
  if (format == Format::csv) write_file(path + ".meta.json", j["metadata"].dump(2) + "\n");
}

}  // namespace kickdyn::io
