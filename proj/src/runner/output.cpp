#include "wireqfi/runner/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "wireqfi/version.hpp"

namespace wireqfi::output {

namespace {

using json = nlohmann::ordered_json;

json json_num(Real v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return nullptr;
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

json fit_json(const runner::FitReport& f) {
  json j;
  j["kind"] = f.kind;
  j["exponent"] = json_num(f.exponent);
  j["stderr_exponent"] = json_num(f.stderr_exponent);
  j["r2"] = json_num(f.r2);
  j["a"] = json_num(f.a);
  j["b"] = json_num(f.b);
  return j;
}

}  // namespace

std::string format_cell(Real v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const std::string& text) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

void write_csv(const std::string& dir, const runner::SweepResult& sweep) {
  auto os = open_out(dir + "/" + sweep.name + ".csv");
  for (std::size_t c = 0; c < sweep.columns.size(); ++c) {
    if (c) os << ',';
    os << sweep.columns[c];
  }
  os << '\n';
  for (const auto& row : sweep.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << format_cell(row[c]);
    }
    os << '\n';
  }
}

void write_summary(const std::string& dir, const runner::RunResult& run,
                   const std::vector<checks::CheckResult>& check_results) {
  json j;
  j["sweeps"] = json::array();
  for (const auto& s : run.sweeps) {
    json js;
    js["name"] = s.name;
    js["points"] = s.rows.size();
    js["failed_points"] = s.failures.size();
    js["failures"] = json::array();
    for (const auto& f : s.failures) {
      json jf;
      jf["row"] = f.row;
      jf["message"] = f.message;
      js["failures"].push_back(jf);
    }
    if (std::isfinite(s.gap_scale)) js["gap_scale"] = s.gap_scale;
    js["fits"] = json::object();
    for (const auto& [name, fit] : s.fits) js["fits"][name] = fit_json(fit);
    js["fit_failures"] = json::array();
    for (const auto& m : s.fit_failures) js["fit_failures"].push_back(m);
    j["sweeps"].push_back(js);
  }
  j["checks"] = json::array();
  bool all_passed = true;
  for (const auto& c : check_results) {
    json jc;
    jc["name"] = c.name;
    jc["value"] = json_num(c.value);
    jc["lower"] = json_num(c.lower);
    jc["upper"] = json_num(c.upper);
    jc["passed"] = c.passed;
    j["checks"].push_back(jc);
    all_passed = all_passed && c.passed;
  }
  j["checks_passed"] = check_results.empty() ? true : all_passed;
  auto os = open_out(dir + "/summary.json");
  os << j.dump(2) << '\n';
}

void write_manifest(const std::string& dir, const std::string& config_text,
                    int workers, const runner::RunResult& run) {
  json j;
  j["version"] = kVersion;
  j["config_hash"] = config_hash(config_text);
  j["workers"] = workers;
  j["elapsed_seconds"] = run.seconds;
  j["sweeps"] = json::array();
  for (const auto& s : run.sweeps) {
    json js;
    js["name"] = s.name;
    js["points"] = s.rows.size();
    js["failed"] = s.failures.size();
    js["seconds"] = s.seconds;
    j["sweeps"].push_back(js);
  }
  auto os = open_out(dir + "/manifest.json");
  os << j.dump(2) << '\n';
}

}  // namespace wireqfi::output
