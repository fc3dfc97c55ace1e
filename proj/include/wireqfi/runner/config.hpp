#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wireqfi/types.hpp"

namespace wireqfi::runner {

enum class Probe { single_particle, slater, many_body_ed, thermal };

// What the probe estimates. `none` is a smoke-test target with vanishing
// response (QFI identically zero); `both` drives the two-parameter QFIM.
enum class Target { none, alpha, alpha_y, alpha_z, both };

enum class Observable { qfi, gap, cfi_current, cfi_sld, qfim };

enum class GridMode { product, zip };

// Units of the T grid: absolute energy, or multiples of the spectral gap of
// the probe at the remaining coordinates (resolved per grid group).
enum class TUnits { absolute, gap };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One swept parameter; `param` is one of
// alpha | alpha_y | alpha_z | B | U | V | L | T.
struct Axis {
  std::string param;
  std::vector<Real> values;
  int line = 0;
};

struct SweepSpec {
  std::string name = "sweep";
  Probe probe = Probe::single_particle;
  Target target = Target::alpha;
  std::vector<Observable> observables{Observable::qfi};
  GridMode mode = GridMode::product;
  ModelParams base;       // fixed coordinates; axis values override per point
  bool alpha_tied = false;  // the tied `alpha` key/axis is in use
  bool n_given = false;     // explicit N; otherwise half filling N = L
  TUnits t_units = TUnits::absolute;
  std::vector<Axis> axes;   // canonical order, T innermost
  bool fit_qfi_vs_L = false;
  bool fit_gap_vs_L = false;
  bool fit_qfim_vs_L = false;
  bool fit_qfi_vs_T = false;
  Real fit_window_lo = 0.0;  // T window of the qfi-vs-T fit, in T-grid units
  Real fit_window_hi = 0.0;
  int first_line = 1;

  std::int64_t points() const;
};

struct Config {
  std::vector<SweepSpec> sweeps;
  std::string text;  // verbatim source, hashed into the run manifest
};

// Flat `key = value` text. '#' starts a comment line, blank lines are
// skipped, and a line holding only `---` ends one sweep block and starts the
// next. Grids use comma lists (`L_values = 40, 60, 80`). Unknown keys,
// duplicate keys, and malformed values are rejected with their line number.
Config parse_config(const std::string& text);
Config parse_config_file(const std::string& path);

// Per-axis value indices of one grid row (row-major product order, or the
// shared index in zip mode).
std::vector<std::int64_t> axis_indices(const SweepSpec& spec,
                                       std::int64_t row);

// Coordinates of one grid row. Axis values override the fixed base; N
// defaults to half filling (N = L) when not given explicitly. T stays in
// grid units — gap-unit resolution happens in the engine.
ModelParams resolve_row(const SweepSpec& spec, std::int64_t row);

struct Issue {
  bool error = false;  // false: warning
  std::string message;
};

// Semantic scan; every violation is reported, not only the first. Warnings
// cover the finite-size Zeeman floor (B < 50 t / L^2 leaves the field too
// weak to split the near-degenerate ground doublet) and large under-cap
// Fock sectors.
std::vector<Issue> validate(const Config& cfg);

std::string to_string(Probe p);
std::string to_string(Target t);
std::string to_string(Observable o);

}  // namespace wireqfi::runner
