#pragma once

#include <string>
#include <vector>

namespace wireqfi::runner::presets {

// Field/coupling points shared between the preset grids and the acceptance
// checks, so both always agree on where the fits are taken.

// (B, alpha) with alpha_y = alpha_z = alpha.
struct FieldPoint {
  const char* name;
  double B;
  double alpha;
};
inline constexpr FieldPoint kLandscapePoints[] = {
    {"fig1_scaling_B0.05_a0.1", 0.05, 0.1},
    {"fig1_scaling_B0.05_a0.9", 0.05, 0.9},
    {"fig1_scaling_B0.9_a0.9", 0.9, 0.9},
    {"fig1_scaling_B0.9_a0.05", 0.9, 0.05},
};

// (alpha_y, alpha_z) points of the two-parameter scaling preset.
struct CouplingPoint {
  const char* name;
  double alpha_y;
  double alpha_z;
};
inline constexpr CouplingPoint kQfimPoints[] = {
    {"fig4_qfim_ay0.05_az0.1", 0.05, 0.1},
    {"fig4_qfim_ay0.9_az0.05", 0.9, 0.05},
    {"fig4_qfim_ay0.9_az0.9", 0.9, 0.9},
    {"fig4_qfim_ay0.05_az0.9", 0.05, 0.9},
};

struct SlaterPoint {
  const char* name;
  double alpha;
};
inline constexpr SlaterPoint kSlaterScalingPoints[] = {
    {"fig2_slater_scaling_a0.1", 0.1},
    {"fig2_slater_scaling_a0.5", 0.5},
    {"fig2_slater_scaling_a0.9", 0.9},
};

inline constexpr const char* kUSweep = "fig2_qfi_vs_U";
inline constexpr const char* kVSweep = "fig2_qfi_vs_V";
inline constexpr const char* kMbScalingSweep = "fig2_mb_scaling";
inline constexpr const char* kThermalGroundSweep = "fig3_ground_L100";
inline constexpr const char* kThermalSweep = "fig3_thermal_L100";
inline constexpr const char* kCfiGroundSweep = "fig5_ground_L100";
inline constexpr const char* kCfiThermalSweep = "fig5_thermal_L100";
inline constexpr const char* kCfiManyBodySweep = "fig5_mb_L6_U5";

std::vector<std::string> names();  // fig1 .. fig5
bool is_preset(const std::string& name);

// Full config text of a preset, parseable by parse_config. Throws
// std::invalid_argument for unknown names.
std::string text(const std::string& name);

}  // namespace wireqfi::runner::presets
