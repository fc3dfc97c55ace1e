#include "wireqfi/runner/presets.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wireqfi::runner::presets {

namespace {

std::string decimals(double v, int places) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

// "0.05, 0.10, ..., 1.00"
std::string step_list(double step, int count, int places) {
  std::string out;
  for (int i = 1; i <= count; ++i) {
    if (!out.empty()) out += ", ";
    out += decimals(step * i, places);
  }
  return out;
}

std::string fig1() {
  std::ostringstream os;
  os << "# single-particle gap/QFI landscape and system-size scaling\n";
  for (const auto& pt : kLandscapePoints) {
    os << "name = " << pt.name << "\n"
       << "probe = single-particle\n"
       << "target = alpha\n"
       << "observables = qfi, gap\n"
       << "B = " << pt.B << "\n"
       << "alpha = " << pt.alpha << "\n"
       << "L_values = 40, 60, 80, 100, 120, 140, 160, 180, 200\n"
       << "fit_qfi_vs_L = true\n"
       << "fit_gap_vs_L = true\n"
       << "---\n";
  }
  os << "name = fig1_heatmap_L100\n"
        "probe = single-particle\n"
        "target = alpha\n"
        "observables = qfi, gap\n"
        "L = 100\n"
     << "alpha_values = " << step_list(0.05, 20, 2) << "\n"
     << "B_values = " << step_list(0.05, 20, 2) << "\n";
  return os.str();
}

std::string fig2() {
  std::ostringstream os;
  os << "# half-filled many-body QFI: Slater scaling and interaction trends\n";
  for (const auto& pt : kSlaterScalingPoints) {
    os << "name = " << pt.name << "\n"
       << "probe = slater\n"
       << "target = alpha\n"
       << "observables = qfi\n"
       << "B = 0.01\n"
       << "alpha = " << pt.alpha << "\n"
       << "L_values = 20, 40, 60, 80, 100\n"
       << "fit_qfi_vs_L = true\n"
       << "---\n";
  }
  os << "name = " << kUSweep << "\n"
     << "probe = many-body-ed\n"
        "target = alpha\n"
        "observables = qfi\n"
        "L = 6\n"
        "B = 0.01\n"
        "alpha = 0.1\n"
        "U_values = -2, 0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5, 6, 8, 10\n"
        "---\n"
     << "name = " << kVSweep << "\n"
     << "probe = many-body-ed\n"
        "target = alpha\n"
        "observables = qfi\n"
        "L = 6\n"
        "B = 0.01\n"
        "alpha = 0.1\n"
        "V_values = 0, 0.25, 0.5, 0.75, 1, 1.25, 1.5, 1.75, 2\n"
        "---\n"
     << "name = " << kMbScalingSweep << "\n"
     << "probe = many-body-ed\n"
        "target = alpha\n"
        "observables = qfi\n"
        "B = 0.01\n"
        "alpha = 0.1\n"
        "L_values = 3, 4, 5, 6\n"
        "fit_qfi_vs_L = true\n";
  return os.str();
}

std::string thermal_block(const char* name, int L) {
  std::ostringstream os;
  os << "name = " << name << "\n"
     << "probe = thermal\n"
        "target = alpha\n"
        "observables = qfi\n"
     << "L = " << L << "\n"
     << "B = 0.01\n"
        "alpha = 0.1\n"
        "T_units = gap\n"
        "T_values = 0.0333, 0.1, 0.1667, 0.25, 0.3, 0.328, 0.5, 1, 2, 3, "
        "4.13, 5.68, 7.81, 10.74, 14.78, 20.33, 27.96, 38.46, 52.91, 72.78, "
        "100\n"
        "fit_qfi_vs_T_window = 3, 100\n";
  return os.str();
}

std::string ground_block(const char* name, int L) {
  std::ostringstream os;
  os << "name = " << name << "\n"
     << "probe = single-particle\n"
        "target = alpha\n"
        "observables = qfi, gap\n"
     << "L = " << L << "\n"
     << "B = 0.01\n"
        "alpha = 0.1\n";
  return os.str();
}

std::string fig3() {
  std::ostringstream os;
  os << "# thermal-probe QFI decay against the ground-state reference\n"
     << ground_block(kThermalGroundSweep, 100) << "---\n"
     << thermal_block(kThermalSweep, 100) << "---\n"
     << ground_block("fig3_ground_L200", 200) << "---\n"
     << thermal_block("fig3_thermal_L200", 200) << "---\n"
     << "name = fig3_mb_thermal_L6\n"
        "probe = thermal\n"
        "target = alpha\n"
        "observables = qfi\n"
        "L = 6\n"
        "B = 0.01\n"
        "alpha = 0.1\n"
        "U_values = 0, 2, 5\n"
        "T_units = gap\n"
        "T_values = 0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 50, 100\n";
  return os.str();
}

std::string fig4() {
  std::ostringstream os;
  os << "# two-parameter QFIM scaling at the four coupling points\n";
  bool first = true;
  for (const auto& pt : kQfimPoints) {
    if (!first) os << "---\n";
    first = false;
    os << "name = " << pt.name << "\n"
       << "probe = single-particle\n"
          "target = alpha_y, alpha_z\n"
          "observables = qfim\n"
          "B = 0.01\n"
       << "alpha_y = " << pt.alpha_y << "\n"
       << "alpha_z = " << pt.alpha_z << "\n"
       << "L_values = 200, 225, 250, 275, 300, 325, 350, 375, 400\n"
       << "fit_qfim_vs_L = true\n";
  }
  return os.str();
}

std::string fig5() {
  std::ostringstream os;
  const char* alpha_grid =
      "0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0";
  os << "# QFI against current-basis and SLD-basis CFI\n"
     << "name = " << kCfiGroundSweep << "\n"
     << "probe = single-particle\n"
        "target = alpha\n"
        "observables = qfi, cfi-current, cfi-sld\n"
        "L = 100\n"
        "B = 0.01\n"
     << "alpha_values = " << alpha_grid << "\n"
     << "---\n"
     << "name = " << kCfiThermalSweep << "\n"
     << "probe = thermal\n"
        "target = alpha\n"
        "observables = qfi, cfi-current, cfi-sld\n"
        "L = 100\n"
        "B = 0.01\n"
        "T = 0.01\n"
     << "alpha_values = " << alpha_grid << "\n"
     << "---\n"
     << "name = " << kCfiManyBodySweep << "\n"
     << "probe = many-body-ed\n"
        "target = alpha\n"
        "observables = qfi, cfi-current, cfi-sld\n"
        "L = 6\n"
        "B = 0.01\n"
        "U = 5\n"
        "alpha_values = 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0\n";
  return os.str();
}

}  // namespace

std::vector<std::string> names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5"};
}

bool is_preset(const std::string& name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

std::string text(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "fig4") return fig4();
  if (name == "fig5") return fig5();
  throw std::invalid_argument("unknown preset '" + name +
                              "' (fig1 | fig2 | fig3 | fig4 | fig5)");
}

}  // namespace wireqfi::runner::presets
