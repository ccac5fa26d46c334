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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kickdyn/entanglement.hpp"
#include "kickdyn/propagators.hpp"
#include "test_support.hpp"

namespace kickdyn {
namespace {

using testing::uniform;
constexpr double kPi = std::numbers::pi;

TEST(ConcurrencePure, BellAndProduct) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(concurrence_pure(StateVector{{0.0, r, r, 0.0}}), 1.0, 1e-15);
  EXPECT_EQ(concurrence_pure(StateVector{{0.0, 0.0, 1.0, 0.0}}), 0.0);
  for (NamedState st : kAllNamedStates) {
    const bool bell = st == NamedState::phi_plus || st == NamedState::phi_minus || st == NamedState::psi_plus ||
                      st == NamedState::psi_minus;
    EXPECT_NEAR(concurrence_pure(make_state(st)), bell ? 1.0 : 0.0, 1e-15) << to_string(st);
  }
}

TEST(ConcurrencePure, ReducesToSectorForms) {
  const StateVector s{{0.0, Complex{0.6, 0.0}, Complex{0.0, 0.8}, 0.0}};
  EXPECT_DOUBLE_EQ(concurrence_pure(s), 2.0 * std::abs(s[1] * s[2]));
  const StateVector q{{Complex{0.0, 0.6}, 0.0, 0.0, Complex{0.8, 0.0}}};
  EXPECT_DOUBLE_EQ(concurrence_pure(q), 2.0 * std::abs(q[0] * q[3]));
}

TEST(ConcurrencePure, FreeEvolutionLaw) {
  for (int k = 0; k <= 1000; ++k) {
    const double t = 0.01 * k;
    const StateVector s = evolve(make_state(NamedState::ket01), free_propagator({1.0}, t));
    EXPECT_NEAR(concurrence_pure(s), std::abs(std::sin(4.0 * t)), 1e-12);
  }
}

TEST(ConcurrencePure, RejectsUnnormalized) {
  EXPECT_THROW(concurrence_pure(StateVector{{0.0, 1.0, 1.0, 0.0}}), ConfigError);
}

TEST(ConcurrencePure, InvariantUnderPhases) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 500; ++i) {
    const StateVector s = testing::random_state(rng);
    const double c = concurrence_pure(s);
    const Complex g = std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
    EXPECT_NEAR(concurrence_pure(g * s), c, 1e-12);
    const Matrix2 l = Matrix2::diagonal({std::polar(1.0, uniform(rng, 0, 7)), std::polar(1.0, uniform(rng, 0, 7))});
    const Matrix2 r = Matrix2::diagonal({std::polar(1.0, uniform(rng, 0, 7)), std::polar(1.0, uniform(rng, 0, 7))});
    EXPECT_NEAR(concurrence_pure(kron(l, r) * s), c, 1e-12);
  }
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(Matrix4::identity()), ConfigError);
  Matrix4 m = Matrix4::identity() * Complex{0.25};
  m(0, 1) = Complex{0.0, 0.1};
  EXPECT_THROW(DensityMatrix{m}, ConfigError);
  EXPECT_THROW(DensityMatrix(Matrix4::diagonal({0.75, 0.5, -0.25, 0.0})), ConfigError);
  EXPECT_NO_THROW(DensityMatrix(Matrix4::identity() * Complex{0.25}));
}

TEST(Wootters, BellAndMixed) {
  EXPECT_NEAR(wootters_concurrence(DensityMatrix::pure(make_state(NamedState::psi_plus))), 1.0, 1e-8);
  EXPECT_NEAR(wootters_concurrence(DensityMatrix::pure(make_state(NamedState::phi_minus))), 1.0, 1e-8);
  EXPECT_EQ(wootters_concurrence(DensityMatrix(Matrix4::identity() * Complex{0.25})), 0.0);
}

TEST(Wootters, WernerState) {
  // p |psi-><psi-| + (1 - p) I/4 has C = max(0, (3p - 1)/2).
  const StateVector s = make_state(NamedState::psi_minus);
  Matrix4 proj;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) proj(i, j) = s[i] * std::conj(s[j]);
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Matrix4 rho = proj * Complex{p} + Matrix4::identity() * Complex{(1.0 - p) / 4.0};
    EXPECT_NEAR(wootters_concurrence(DensityMatrix(rho)), std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-8) << p;
  }
}

TEST(Wootters, MatchesPureFormula) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 1000; ++i) {
    const StateVector s = testing::random_state(rng);
    const WoottersResult w = wootters(DensityMatrix::pure(s));
    EXPECT_NEAR(w.concurrence, concurrence_pure(s), 1e-8);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_GE(w.lambda[k - 1], w.lambda[k]);
  }
}

TEST(BellKick, Landmarks) {
  for (double t : {5.5, 7.0, 13.3}) EXPECT_NEAR(bell_kick_concurrence(kPi / 2.0, 1.0, t, 5.0), 1.0, 1e-15);
  EXPECT_NEAR(bell_kick_concurrence(kPi / 4.0, 1.0, 5.0 + kPi / 8.0, 5.0), 0.0, 1e-14);
}

TEST(BellKick, BoundedBelowByCosTwoDelta) {
  for (double d = 0.0; d < 3.2; d += 0.05)
    for (double t = 5.0; t < 10.0; t += 0.07) {
      const double c = bell_kick_concurrence(d, 1.0, t, 5.0);
      EXPECT_GE(c, std::abs(std::cos(2.0 * d)) - 1e-12);
      EXPECT_LE(c, 1.0);
    }
}

TEST(BellKick, MatchesPipeline) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 1000; ++i) {
    const double beta = uniform(rng, -3, 3), delta = uniform(rng, -4, 4), J = uniform(rng, 0.1, 3);
    const double t1 = uniform(rng, 0, 10), t = t1 + uniform(rng, 0.01, 10);
    const FieldStrengths s{beta + delta, beta};
    const StateVector out =
        evolve(make_state(NamedState::psi_plus), kick_sequence_propagator(KickTrain({{t1, Sign::plus}}), s, {J}, t));
    EXPECT_NEAR(bell_kick_concurrence(delta, J, t, t1), concurrence_pure(out), 1e-10);
  }
}

TEST(SeparableKick, ZeroDeltaIsFreeLaw) {
  for (double t = 5.01; t < 25.0; t += 0.013)
    EXPECT_NEAR(separable_kick_concurrence(0.0, 1.0, t, 5.0), std::abs(std::sin(4.0 * t)), 1e-12);
}

TEST(SeparableKick, MatchesPipeline) {
  std::mt19937_64 rng(64);
  for (int i = 0; i < 1000; ++i) {
    const double beta = uniform(rng, -3, 3), delta = uniform(rng, -4, 4), J = uniform(rng, 0.1, 3);
    const double t1 = uniform(rng, 0, 10), t = t1 + uniform(rng, 0.01, 10);
    const FieldStrengths s{beta + delta, beta};
    const StateVector out =
        evolve(make_state(NamedState::ket01), kick_sequence_propagator(KickTrain({{t1, Sign::plus}}), s, {J}, t));
    EXPECT_NEAR(separable_kick_concurrence(delta, J, t, t1), concurrence_pure(out), 1e-10);
  }
}

TEST(SeparableKick, BoundedByOne) {
  for (double d = -3.2; d < 3.2; d += 0.02)
    for (double t = 5.0; t < 25.0; t += 0.05) {
      const double raw = 2.0 * std::abs(separable_kick_lambda(d, 1.0, t, 5.0));
      EXPECT_LE(raw, 1.0 + 1e-12);
    }
}

TEST(KickDynamics, DiagonalStatesStaySeparable) {
  std::mt19937_64 rng(65);
  for (const auto& shape : testing::kick_shapes()) {
    const KickTrain train(testing::random_events(rng, shape, 0.5, 20.0));
    const FieldStrengths s{uniform(rng, -5, 5), uniform(rng, -5, 5)};
    for (NamedState st : {NamedState::ket11, NamedState::ket00})
      for (double t = 0.0; t < 25.0; t += 0.37)
        EXPECT_EQ(concurrence_pure(evolve(make_state(st), kick_sequence_propagator(train, s, {1.0}, t))), 0.0);
  }
}

TEST(KickDynamics, PsiPlusAndMinusAgree) {
  std::mt19937_64 rng(66);
  for (const auto& shape : testing::kick_shapes()) {
    for (int i = 0; i < 50; ++i) {
      const KickTrain train(testing::random_events(rng, shape, 0.5, 20.0));
      const FieldStrengths s{uniform(rng, -5, 5), uniform(rng, -5, 5)};
      const double J = uniform(rng, 0.1, 3), t = uniform(rng, 0, 25);
      const BlockPropagator u = kick_sequence_propagator(train, s, {J}, t);
      EXPECT_NEAR(concurrence_pure(evolve(make_state(NamedState::psi_plus), u)),
                  concurrence_pure(evolve(make_state(NamedState::psi_minus), u)), 1e-12);
    }
  }
}

TEST(ClampConcurrence, FlagsExcess) {
  EXPECT_FALSE(clamp_concurrence(1.0 + 5e-10).excess);
  EXPECT_EQ(clamp_concurrence(1.0 + 5e-10).value, 1.0);
  EXPECT_TRUE(clamp_concurrence(1.0 + 1e-8).excess);
  EXPECT_EQ(clamp_concurrence(-0.1).value, 0.0);
}

}  // namespace
}  // namespace kickdyn
