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

// Command-line front end. run_cli is the whole program; tools/kickdyn.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 failed checks or numerical failure,
// 2 usage or configuration error, 3 I/O error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kickdyn/error.hpp"
#include "kickdyn/experiments.hpp"
#include "kickdyn/io/config.hpp"
#include "kickdyn/io/emit.hpp"
#include "kickdyn/verify.hpp"
#include "kickdyn/version.hpp"

namespace kickdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

namespace cli_detail {

struct RawFlags {
  std::optional<std::string> preset, initial, J, alpha, beta, tau, dt, kicks, pulses, t_max, samples, ratio, method,
      out, format, config;
};

inline void add_run_options(CLI::App* cmd, RawFlags& f, bool sweep) {
  cmd->add_option("--preset", f.preset, "named preset (fig1a ... fig9h)");
  cmd->add_option("--config", f.config, "key=value config file");
  cmd->add_option("--initial", f.initial, "initial state: 11, 10, 01, 00, phi+, phi-, psi+, psi-");
  cmd->add_option("--J", f.J, "exchange coupling");
  cmd->add_option("--alpha", f.alpha, "integrated strength on qubit 1");
  cmd->add_option("--beta", f.beta, "integrated strength on qubit 2");
  cmd->add_option("--tau", f.tau, "Gaussian pulse width");
  cmd->add_option("--dt", f.dt, "RK4 step (default min(tau/20, 1e-3/J, 0.03/max|H|))");
  cmd->add_option("--kicks", f.kicks, "kick train t1:+,t2:-,...");
  cmd->add_option("--pulses", f.pulses, "pulse train t1:+,t2:-,...");
  cmd->add_option("--t-max", f.t_max, "end of the time axis");
  cmd->add_option("--samples", f.samples, "number of time samples");
  if (sweep) cmd->add_option("--ratio-range", f.ratio, "alpha/beta axis lo:hi:n");
  cmd->add_option("--method", f.method, "analytic-kick | rk4-pulse | no-ordering");
  cmd->add_option("--out", f.out, "output path, - for stdout");
  cmd->add_option("--format", f.format, "csv | json");
}

inline io::Overrides to_overrides(const RawFlags& f) {
  io::Overrides o;
  auto set = [&](const std::optional<std::string>& v, const char* key) {
    if (v) io::apply_setting(o, key, *v);
  };
  set(f.preset, "preset");
  set(f.initial, "initial");
  set(f.J, "J");
  set(f.alpha, "alpha");
  set(f.beta, "beta");
  set(f.tau, "tau");
  set(f.dt, "dt");
  set(f.kicks, "kicks");
  set(f.pulses, "pulses");
  set(f.t_max, "t-max");
  set(f.samples, "samples");
  set(f.ratio, "ratio-range");
  set(f.method, "method");
  set(f.out, "out");
  set(f.format, "format");
  return o;
}

inline int run_command(io::Command command, const RawFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.kicks && flags.pulses) throw UsageError("kicks/pulses: --kicks and --pulses are mutually exclusive");
  const io::Overrides flag_layer = to_overrides(flags);
  const io::Overrides file_layer = flags.config ? io::load_config_file(*flags.config) : io::Overrides{};
  const io::RunConfig cfg = io::resolve_config(command, file_layer, flag_layer, flags.config);
  switch (command) {
    case io::Command::timeseries: {
      const SeriesResult r = run_timeseries(io::make_scenario(cfg));
      for (const auto& w : r.meta.warnings) err << "warning: " << w << '\n';
      io::emit(r, cfg.format, cfg.out, out, &cfg);
      break;
    }
    case io::Command::contour: {
      const ContourGrid g = run_contour(io::make_sweep(cfg));
      for (const auto& w : g.meta.warnings) err << "warning: " << w << '\n';
      io::emit(g, cfg.format, cfg.out, out, &cfg);
      break;
    }
    case io::Command::compare: {
      const ComparisonReport r = compare_methods(io::make_scenario(cfg), {io::make_scenario(cfg, Method::no_ordering)});
      if (r.equal_fields) err << "note: alpha == beta, ordering effects vanish\n";
      if (r.zero_coupling) err << "note: J == 0, ordering effects vanish\n";
      io::emit(r, cfg.format, cfg.out, out, &cfg);
      break;
    }
    case io::Command::verify: break;
  }
  return kExitOk;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"kickdyn: entanglement dynamics of two exchange-coupled qubits under kicks and Gaussian pulses"};
  app.set_version_flag("--version", std::string("kickdyn ") + kVersion);
  app.require_subcommand(1);
  cli_detail::RawFlags ts, ct, cmp;
  add_run_options(app.add_subcommand("timeseries", "concurrence C(t) for one scenario"), ts, false);
  add_run_options(app.add_subcommand("contour", "C over (alpha/beta, Jt)"), ct, true);
  add_run_options(app.add_subcommand("compare", "time-ordered method vs no-ordering propagator"), cmp, false);
  app.add_subcommand("verify", "run the invariant battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("verify")) return report_verify(run_verify(), out) ? kExitOk : kExitFailure;
    if (app.got_subcommand("timeseries")) return cli_detail::run_command(io::Command::timeseries, ts, out, err);
    if (app.got_subcommand("contour")) return cli_detail::run_command(io::Command::contour, ct, out, err);
    return cli_detail::run_command(io::Command::compare, cmp, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace kickdyn
