// Sweep driver: run / validate / version.
//
//   wireqfi run --preset fig1 --out results/
//   wireqfi run --config wire.cfg --workers 4
//   wireqfi validate --config wire.cfg
//
// Exit codes: 0 success, 1 validation error or failed points, 2 a --check
// bound was violated.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wireqfi/runner/checks.hpp"
#include "wireqfi/runner/config.hpp"
#include "wireqfi/runner/engine.hpp"
#include "wireqfi/runner/output.hpp"
#include "wireqfi/runner/presets.hpp"
#include "wireqfi/version.hpp"

namespace {

using namespace wireqfi;
namespace presets = wireqfi::runner::presets;

struct Source {
  std::string config_path;
  std::string preset;
};

// Parses the file or preset; throws ConfigError on any failure.
runner::Config load(const Source& src) {
  if (!src.preset.empty()) {
    if (!presets::is_preset(src.preset))
      throw runner::ConfigError("unknown preset '" + src.preset +
                                "' (have: fig1 fig2 fig3 fig4 fig5)");
    return runner::parse_config(presets::text(src.preset));
  }
  return runner::parse_config_file(src.config_path);
}

// Prints issues; returns the number of errors (warnings don't count).
int print_issues(const std::vector<runner::Issue>& issues) {
  int errors = 0;
  for (const auto& is : issues) {
    std::fprintf(stderr, "%s: %s\n", is.error ? "error" : "warning",
                 is.message.c_str());
    if (is.error) ++errors;
  }
  return errors;
}

int cmd_validate(const Source& src) {
  try {
    runner::Config cfg = load(src);
    if (print_issues(runner::validate(cfg)) > 0) return 1;
    std::printf("ok\n");
    return 0;
  } catch (const runner::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int cmd_run(const Source& src, const std::string& out_dir, int workers,
            bool check) {
  runner::Config cfg;
  try {
    cfg = load(src);
    if (print_issues(runner::validate(cfg)) > 0) return 1;
  } catch (const runner::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  std::filesystem::create_directories(out_dir);
  runner::RunResult run = runner::run(cfg, workers);

  for (const auto& s : run.sweeps) {
    output::write_csv(out_dir, s);
    std::printf("%s: %zu points, %zu failed, %.2fs\n", s.name.c_str(),
                s.rows.size(), s.failures.size(), s.seconds);
    for (const auto& f : s.failures)
      std::printf("  point %lld failed: %s\n",
                  static_cast<long long>(f.row), f.message.c_str());
    for (const auto& [name, fit] : s.fits)
      std::printf("  fit %s: exponent %.6g +/- %.2g, r2 %.6f\n", name.c_str(),
                  fit.exponent, fit.stderr_exponent, fit.r2);
    for (const auto& m : s.fit_failures)
      std::printf("  fit failed: %s\n", m.c_str());
  }

  std::vector<checks::CheckResult> results;
  if (check) {
    results = checks::evaluate_preset_checks(src.preset, run);
    int passed = 0;
    for (const auto& c : results) {
      std::printf("check %-44s %s  value %.6g  bounds [%g, %g]\n",
                  c.name.c_str(), c.passed ? "PASS" : "FAIL", c.value,
                  c.lower, c.upper);
      if (c.passed) ++passed;
    }
    std::printf("checks: %d/%zu passed\n", passed, results.size());
  }

  output::write_summary(out_dir, run, results);
  output::write_manifest(out_dir, cfg.text, workers, run);
  std::printf("wrote %s/summary.json (%zu sweeps, %.2fs)\n", out_dir.c_str(),
              run.sweeps.size(), run.seconds);

  for (const auto& c : results)
    if (!c.passed) return 2;
  return run.failed_points > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rashba-wire quantum Fisher information sweeps"};
  app.require_subcommand(1);

  Source src;
  std::string out_dir = "out";
  int workers = 0;
  bool check = false;

  auto add_source = [&](CLI::App* cmd) {
    auto* c = cmd->add_option("--config", src.config_path, "config file");
    auto* p = cmd->add_option("--preset", src.preset,
                              "built-in preset (fig1..fig5)");
    c->excludes(p);
  };

  auto* run_cmd = app.add_subcommand("run", "run sweeps and write outputs");
  add_source(run_cmd);
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--workers", workers, "thread count (0 = all)");
  run_cmd->add_flag("--check", check,
                    "evaluate preset bound checks (requires --preset)");

  auto* val_cmd = app.add_subcommand("validate", "check a config and exit");
  add_source(val_cmd);

  auto* ver_cmd = app.add_subcommand("version", "print version");

  CLI11_PARSE(app, argc, argv);

  if (ver_cmd->parsed()) {
    std::printf("wireqfi %s\n", wireqfi::kVersion);
    return 0;
  }
  if (src.config_path.empty() && src.preset.empty()) {
    std::fprintf(stderr, "error: need --config or --preset\n");
    return 1;
  }
  if (val_cmd->parsed()) return cmd_validate(src);
  if (check && src.preset.empty()) {
    std::fprintf(stderr, "error: --check requires --preset\n");
    return 1;
  }
  return cmd_run(src, out_dir, workers, check);
}
