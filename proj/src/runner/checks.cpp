#include "wireqfi/runner/checks.hpp"

#include <cmath>
#include <cstdio>

#include "wireqfi/runner/presets.hpp"

namespace wireqfi::checks {

namespace {

namespace presets = runner::presets;

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();
constexpr Real kInf = std::numeric_limits<Real>::infinity();

using runner::FitReport;
using runner::RunResult;
using runner::SweepResult;

std::string short_num(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

Real fit_exponent(const SweepResult& sr, const std::string& name) {
  const FitReport* f = sr.fit(name);
  return f ? f->exponent : kNaN;
}

Real fit_r2(const SweepResult& sr, const std::string& name) {
  const FitReport* f = sr.fit(name);
  return f ? f->r2 : kNaN;
}

// NaN-poisoning folds: one bad cell fails the check instead of vanishing.
struct Fold {
  Real value = kNaN;
  bool poisoned = false;
  void add_min(Real x) {
    if (!std::isfinite(x)) poisoned = true;
    else if (std::isnan(value) || x < value) value = x;
  }
  void add_max(Real x) {
    if (!std::isfinite(x)) poisoned = true;
    else if (std::isnan(value) || x > value) value = x;
  }
  Real get() const { return poisoned ? kNaN : value; }
};

void fig1_checks(const RunResult& run, std::vector<CheckResult>& out) {
  for (const auto& pt : presets::kLandscapePoints) {
    const SweepResult* sr = run.find(pt.name);
    if (!sr) continue;
    const std::string tag = std::string("[") + pt.name + "]";
    out.push_back(bounded("gap_exponent" + tag, fit_exponent(*sr, "gap_vs_L"),
                          kGapExponentLo, kGapExponentHi));
    out.push_back(bounded("qfi_exponent" + tag, fit_exponent(*sr, "qfi_vs_L"),
                          kQfiExponentLo, kQfiExponentHi));
    out.push_back(
        bounded("qfi_r2" + tag, fit_r2(*sr, "qfi_vs_L"), kQfiFitR2Min, kInf));
  }
}

void fig2_checks(const RunResult& run, std::vector<CheckResult>& out) {
  for (const auto& pt : presets::kSlaterScalingPoints) {
    const SweepResult* sr = run.find(pt.name);
    if (!sr) continue;
    out.push_back(bounded("qfi_exponent[" + std::string(pt.name) + "]",
                          fit_exponent(*sr, "qfi_vs_L"), kQfiExponentLo,
                          kQfiExponentHi));
  }
  if (const SweepResult* sr = run.find(presets::kUSweep)) {
    const std::int64_t n = static_cast<std::int64_t>(sr->rows.size());
    Real f_zero = kNaN, f_attractive = kNaN, f_sat = kNaN, f_last = kNaN;
    Fold worst_step;  // min forward relative step over U >= 0
    bool have_prev = false;
    Real prev_f = 0.0;
    for (std::int64_t r = 0; r < n; ++r) {
      const Real u = sr->at(r, "U");
      const Real f = sr->at(r, "qfi");
      if (u == 0.0) f_zero = f;
      if (u == kAttractiveU) f_attractive = f;
      if (u == kSaturationU) f_sat = f;
      if (u >= 0.0) {
        if (have_prev)
          worst_step.add_min((f - prev_f) /
                             std::max(std::abs(prev_f), 1e-300));
        prev_f = f;
        have_prev = true;
        f_last = f;
      }
    }
    out.push_back(bounded("u_trend_monotone", worst_step.get(),
                          -kMonotoneSlack, kInf));
    out.push_back(bounded("u_saturation",
                          std::abs(f_last - f_sat) / std::abs(f_sat), -kInf,
                          kSaturationTol));
    out.push_back(bounded("attractive_suppression", f_attractive / f_zero,
                          -kInf, kAttractiveRatioMax));
  }
  if (const SweepResult* sr = run.find(presets::kVSweep)) {
    Fold worst_step;  // max forward relative step, must stay <= slack
    const std::int64_t n = static_cast<std::int64_t>(sr->rows.size());
    for (std::int64_t r = 1; r < n; ++r) {
      const Real f0 = sr->at(r - 1, "qfi");
      const Real f1 = sr->at(r, "qfi");
      worst_step.add_max((f1 - f0) / std::max(std::abs(f0), 1e-300));
    }
    out.push_back(
        bounded("v_trend_monotone", worst_step.get(), -kInf, kMonotoneSlack));
  }
}

void fig3_checks(const RunResult& run, std::vector<CheckResult>& out) {
  const SweepResult* st = run.find(presets::kThermalSweep);
  if (!st) return;
  const SweepResult* sg = run.find(presets::kThermalGroundSweep);
  const Real f0 = sg ? sg->at(0, "qfi") : kNaN;
  const Real gap = st->gap_scale;
  if (!std::isfinite(gap) || !std::isfinite(f0)) {
    out.push_back(bounded("thermal_plateau[reference]", kNaN, 0.0, kInf));
  } else {
    const std::int64_t n = static_cast<std::int64_t>(st->rows.size());
    for (std::int64_t r = 0; r < n; ++r) {
      const Real T = st->at(r, "T");
      if (!(T < gap * kThermalPlateauTMax * (1 - 1e-9))) continue;
      const Real dev = std::abs(st->at(r, "qfi") - f0) / f0;
      out.push_back(bounded("thermal_plateau[T=" + short_num(T / gap) + "gap]",
                            dev, -kInf, kThermalPlateauTol));
    }
  }
  out.push_back(bounded("thermal_slope", fit_exponent(*st, "qfi_vs_T"),
                        kThermalSlopeLo, kThermalSlopeHi));
}

void fig4_checks(const RunResult& run, std::vector<CheckResult>& out) {
  for (const auto& pt : presets::kQfimPoints) {
    const SweepResult* sr = run.find(pt.name);
    if (!sr) continue;
    const std::string tag = std::string(pt.name);
    for (const char* comp : {"f_yy", "f_zz", "f_yz"})
      out.push_back(bounded(
          "qfim_exponent[" + tag + ":" + comp + "]",
          fit_exponent(*sr, std::string(comp) + "_vs_L"), kQfimExponentLo,
          kQfimExponentHi));
    Fold min_eig;
    for (std::int64_t r = 0;
         r < static_cast<std::int64_t>(sr->rows.size()); ++r)
      min_eig.add_min(sr->at(r, "qfim_min_eig"));
    out.push_back(bounded("qfim_psd[" + tag + "]", min_eig.get(),
                          kQfimPsdFloor, kInf));
  }
}

void fig5_checks(const RunResult& run, std::vector<CheckResult>& out) {
  const SweepResult* ground = run.find(presets::kCfiGroundSweep);
  if (ground) {
    Fold current_ratio, sld_ratio;
    for (std::int64_t r = 0;
         r < static_cast<std::int64_t>(ground->rows.size()); ++r) {
      const Real a = ground->at(r, "alpha");
      const Real q = ground->at(r, "qfi");
      if (a >= kCurrentCfiAlphaMin - 1e-12)
        current_ratio.add_min(ground->at(r, "cfi_current") / q);
      sld_ratio.add_min(ground->at(r, "cfi_sld") / q);
    }
    out.push_back(bounded("cfi_current_ratio[ground]", current_ratio.get(),
                          kCurrentCfiRatioMin, kInf));
    out.push_back(bounded("cfi_sld_ratio[ground]", sld_ratio.get(),
                          kSldCfiRatioMin, kInf));
  }
  if (const SweepResult* th = run.find(presets::kCfiThermalSweep)) {
    Fold sld_ratio;
    Real point_ratio = kNaN;
    for (std::int64_t r = 0;
         r < static_cast<std::int64_t>(th->rows.size()); ++r) {
      const Real a = th->at(r, "alpha");
      const Real q = th->at(r, "qfi");
      sld_ratio.add_min(th->at(r, "cfi_sld") / q);
      if (a == kThermalCfiAlpha) point_ratio = th->at(r, "cfi_current") / q;
    }
    out.push_back(bounded("cfi_sld_ratio[thermal]", sld_ratio.get(),
                          kSldCfiRatioMin, kInf));
    out.push_back(bounded("thermal_current_ratio[alpha=0.05]", point_ratio,
                          -kInf, kThermalCfiRatioMax));
  }
  for (const char* name :
       {presets::kCfiGroundSweep, presets::kCfiThermalSweep,
        presets::kCfiManyBodySweep}) {
    const SweepResult* sr = run.find(name);
    if (!sr) continue;
    Fold excess;
    for (std::int64_t r = 0;
         r < static_cast<std::int64_t>(sr->rows.size()); ++r) {
      const Real q = sr->at(r, "qfi");
      for (const char* col : {"cfi_current", "cfi_sld"})
        if (sr->column(col) >= 0) excess.add_max(sr->at(r, col) - q);
    }
    out.push_back(bounded("cfi_le_qfi[" + std::string(name) + "]",
                          excess.get(), -kInf, kCfiQfiSlack));
  }
}

}  // namespace

CheckResult bounded(const std::string& name, Real value, Real lower,
                    Real upper) {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.lower = lower;
  c.upper = upper;
  c.passed = std::isfinite(value) && value >= lower && value <= upper;
  return c;
}

std::vector<CheckResult> evaluate_preset_checks(const std::string& preset,
                                                const runner::RunResult& run) {
  std::vector<CheckResult> out;
  if (preset == "fig1") fig1_checks(run, out);
  else if (preset == "fig2") fig2_checks(run, out);
  else if (preset == "fig3") fig3_checks(run, out);
  else if (preset == "fig4") fig4_checks(run, out);
  else if (preset == "fig5") fig5_checks(run, out);
  return out;
}

}  // namespace wireqfi::checks
