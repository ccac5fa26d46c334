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

// Central tolerance table. All values are absolute and apply to
// dimensionless quantities (hbar = 1, times in units of 1/J).

namespace kickdyn::tol {

/// Maximum unitarity defect accepted for any propagator.
inline constexpr double kUnitarity = 1e-12;
/// |u^2 + v^2 + w^2 + z^2 - 1| for block propagators.
inline constexpr double kBlockNorm = 1e-12;
/// |y| - 1 and |y1| - 1 for block propagator phases.
inline constexpr double kPhaseModulus = 1e-13;

/// Input states to evolve() must be normalized this tightly.
inline constexpr double kEvolveNorm = 1e-10;
/// Input states to concurrence evaluation and integrators.
inline constexpr double kStateNorm = 1e-8;
/// Accumulated norm drift that fails an RK4 run.
inline constexpr double kNormDrift = 1e-8;

/// Density matrix checks.
inline constexpr double kDensityHermitian = 1e-12;
inline constexpr double kDensityTrace = 1e-12;
/// R-matrix eigenvalues whose real part lies in (kInvalidEigen, 0) are round-off.
inline constexpr double kEigenClamp = 1e-10;
inline constexpr double kInvalidEigen = -1e-8;
/// R-matrix eigenvalues smaller than this in modulus are zero at working
/// precision (R has unit scale for normalized states).
inline constexpr double kEigenNoiseFloor = 1e-14;
/// Concurrence excursion above 1 reported as a health warning.
inline constexpr double kConcurrenceExcess = 1e-9;

/// QR iteration cap per eigenvalue.
inline constexpr int kEigenIterations = 60;
/// Relative residual |p(lambda)| accepted for a computed eigenvalue.
inline constexpr double kCharPolyResidual = 1e-9;

/// Gaussian support half-width in units of tau.
inline constexpr double kGaussianSupport = 6.0;
/// Quadrature: step = min(tau / kQuadPerTau, t / kQuadPerSpan).
inline constexpr double kQuadPerTau = 50.0;
inline constexpr double kQuadPerSpan = 1e4;
/// Two quadrature resolutions must agree to this (relative to max(1, |I|)).
inline constexpr double kQuadAgreement = 1e-9;

/// RK4 step bounds: dt <= tau / kStepsPerTau and dt <= kStepTimesJ / J.
inline constexpr double kStepsPerTau = 20.0;
inline constexpr double kStepTimesJ = 1e-3;
// dt * max|H|; RK4 norm loss per step is about (dt |H|)^6 / 72
inline constexpr double kStepTimesEnergy = 0.03;

/// Removable singularity of sin(Gamma)/Gamma.
inline constexpr double kSincSeries = 1e-6;

}  // namespace kickdyn::tol
