#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wireqfi/runner/config.hpp"

namespace wireqfi::runner {

struct FitReport {
  std::string kind;  // "power-law" | "gap-law"
  Real exponent = 0.0;
  Real stderr_exponent = 0.0;
  Real r2 = 0.0;
  Real a = 0.0;  // prefactor
  Real b = 0.0;  // gap-law offset
};

struct PointFailure {
  std::int64_t row = 0;
  std::string message;
};

struct SweepResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Real>> rows;  // failed cells hold NaN
  std::vector<PointFailure> failures;
  std::vector<std::pair<std::string, FitReport>> fits;
  std::vector<std::string> fit_failures;
  // Spectral gap used to resolve a gap-unit T grid (single-group sweeps).
  Real gap_scale = std::numeric_limits<Real>::quiet_NaN();
  double seconds = 0.0;

  int column(const std::string& name) const;  // -1 when absent
  Real at(std::int64_t row, const std::string& col) const;
  const FitReport* fit(const std::string& name) const;
};

struct RunResult {
  std::vector<SweepResult> sweeps;
  std::int64_t failed_points = 0;
  double seconds = 0.0;

  const SweepResult* find(const std::string& name) const;
};

// Runs every sweep of the config. Results are deterministic: bitwise
// identical for any worker count and for serial vs parallel execution.
// Per-point failures are recorded and leave NaN cells (fail-soft).
RunResult run(const Config& cfg, int workers = 0, Exec exec = Exec::parallel);

}  // namespace wireqfi::runner
