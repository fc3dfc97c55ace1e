#pragma once

#include <limits>
#include <string>
#include <vector>

#include "wireqfi/runner/engine.hpp"

namespace wireqfi::checks {

// Every tolerance the acceptance checks use is pinned here, shared between
// the `run --check` path and the acceptance test binary.

// Single-particle gap law Delta = a L^-mu + b at the landscape points.
inline constexpr Real kGapExponentLo = 1.7;
inline constexpr Real kGapExponentHi = 2.3;
// Ground-state QFI power law F ~ L^beta (single-particle and Slater).
inline constexpr Real kQfiExponentLo = 1.8;
inline constexpr Real kQfiExponentHi = 2.2;
inline constexpr Real kQfiFitR2Min = 0.99;
// Interaction trends at (L = 6, alpha = 0.1, B = 0.01).
inline constexpr Real kMonotoneSlack = 1e-6;      // relative step tolerance
inline constexpr Real kSaturationTol = 0.10;      // |F(U_max) - F(5)| / F(5)
inline constexpr Real kAttractiveRatioMax = 0.10; // F(-2) / F(0)
inline constexpr Real kSaturationU = 5.0;
inline constexpr Real kAttractiveU = -2.0;
// Thermal decay: plateau within 5% below gap/3, log-log slope -1 +- 0.15
// inside [3, 100] gap units.
inline constexpr Real kThermalPlateauTol = 0.05;
inline constexpr Real kThermalPlateauTMax = 1.0 / 3.0;  // in gap units
inline constexpr Real kThermalSlopeLo = -1.15;
inline constexpr Real kThermalSlopeHi = -0.85;
// Two-parameter QFIM scaling.
inline constexpr Real kQfimExponentLo = 1.6;
inline constexpr Real kQfimExponentHi = 2.2;
inline constexpr Real kQfimPsdFloor = -1e-10;
// Measurement optimality at L = 100.
inline constexpr Real kCurrentCfiRatioMin = 0.95;
inline constexpr Real kCurrentCfiAlphaMin = 0.1;  // ratio bound applies from here
inline constexpr Real kSldCfiRatioMin = 0.999;
inline constexpr Real kThermalCfiRatioMax = 0.99;  // strict sub-QFI point
inline constexpr Real kThermalCfiAlpha = 0.05;
// Always-on property tolerances.
inline constexpr Real kCfiQfiSlack = 1e-8;
inline constexpr Real kSlaterEdTol = 5e-3;      // Slater vs full-ED QFI
inline constexpr Real kOverlapOracleTol = 1e-3; // perturbation vs overlap
inline constexpr Real kFitRecoveryTol = 1e-6;   // synthetic fit recovery
// Runtime budgets, seconds.
inline constexpr double kBudgetGapScaling = 60.0;
inline constexpr double kBudgetQfiScaling = 60.0;
inline constexpr double kBudgetSlaterScaling = 300.0;
inline constexpr double kBudgetOracle = 10.0;
inline constexpr double kBudgetInteracting = 600.0;

struct CheckResult {
  std::string name;
  Real value = 0.0;
  Real lower = -std::numeric_limits<Real>::infinity();
  Real upper = std::numeric_limits<Real>::infinity();
  bool passed = false;
};

CheckResult bounded(const std::string& name, Real value, Real lower,
                    Real upper);

// Evaluates the acceptance checks attached to a figure preset against a run
// of (a subset of) its sweeps. Checks whose sweeps are absent are skipped;
// checks whose inputs are NaN fail.
std::vector<CheckResult> evaluate_preset_checks(const std::string& preset,
                                                const runner::RunResult& run);

}  // namespace wireqfi::checks
