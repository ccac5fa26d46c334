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

// Bell state under one positive kick: the closed form, the composed
// propagator and a narrow Gaussian pulse side by side.

#include <cmath>
#include <cstdio>

#include "kickdyn/entanglement.hpp"
#include "kickdyn/experiments.hpp"

int main() {
  using namespace kickdyn;
  const FieldStrengths s{2.0, 1.0};
  const CouplingConstants c{1.0};
  const KickTrain kick({{5.0, Sign::plus}});

  Scenario pulse;
  pulse.initial = NamedState::psi_plus;
  pulse.profile = FieldProfile::pulses(s, kick.events(), 0.05);
  pulse.coupling = c;
  pulse.method = Method::rk4_pulse;
  pulse.grid = SimGrid::from_samples(0.0, 10.0, 21, default_step(pulse.profile, c));
  const SeriesResult rk4 = run_timeseries(pulse);

  std::printf("%6s %12s %12s %12s\n", "Jt", "closed form", "kick", "pulse 0.05");
  for (std::size_t k = 0; k < rk4.series.times.size(); ++k) {
    const double t = rk4.series.times[k];
    const double kicked = concurrence_pure(evolve(make_state(NamedState::psi_plus), kick_sequence_propagator(kick, s, c, t)));
    const double closed = t > 5.0 ? bell_kick_concurrence(s.delta(), c.J, t, 5.0) : 1.0;
    std::printf("%6.2f %12.6f %12.6f %12.6f\n", t, closed, kicked, rk4.series.values[k]);
  }
}
