#include "wireqfi/runner/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wireqfi/fock.hpp"
#include "wireqfi/spectral.hpp"

namespace wireqfi::runner {

namespace {

const char* const kAxisParams[] = {"alpha", "alpha_y", "alpha_z", "B",
                                   "U",     "V",       "L",       "T"};

// Sectors below the cap but above this still get a slowness warning.
constexpr std::int64_t kSectorWarnDim = 50000;
constexpr std::int64_t kMaxGridPoints = 10000000;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

Real parse_real(const std::string& v, int line, const std::string& key) {
  const std::string s = trim(v);
  if (s.empty()) fail(line, "empty value for '" + key + "'");
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    fail(line, "'" + key + "' expects a number, got '" + s + "'");
  if (!std::isfinite(x)) fail(line, "'" + key + "' must be finite");
  return x;
}

long parse_int(const std::string& v, int line, const std::string& key) {
  const std::string s = trim(v);
  if (s.empty()) fail(line, "empty value for '" + key + "'");
  char* end = nullptr;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    fail(line, "'" + key + "' expects an integer, got '" + s + "'");
  return x;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  const std::string s = trim(v);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, "'" + key + "' expects true or false, got '" + s + "'");
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.push_back("");
  return out;
}

std::vector<Real> parse_list(const std::string& v, int line,
                             const std::string& key) {
  std::vector<Real> out;
  for (const auto& item : split_commas(v))
    out.push_back(parse_real(item, line, key));
  if (out.empty()) fail(line, "empty list for '" + key + "'");
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  int line;
};

const Entry* find_entry(const std::vector<Entry>& es, const std::string& key) {
  for (const auto& e : es)
    if (e.key == key) return &e;
  return nullptr;
}

Probe parse_probe(const Entry& e) {
  const std::string s = trim(e.value);
  if (s == "single-particle") return Probe::single_particle;
  if (s == "slater") return Probe::slater;
  if (s == "many-body-ed") return Probe::many_body_ed;
  if (s == "thermal") return Probe::thermal;
  fail(e.line,
       "unknown probe '" + s +
           "' (single-particle | slater | many-body-ed | thermal)");
}

Target parse_target(const Entry& e) {
  const auto parts = split_commas(e.value);
  if (parts.size() == 1) {
    const std::string& s = parts[0];
    if (s == "none") return Target::none;
    if (s == "alpha") return Target::alpha;
    if (s == "alpha_y") return Target::alpha_y;
    if (s == "alpha_z") return Target::alpha_z;
  } else if (parts.size() == 2) {
    const std::set<std::string> got(parts.begin(), parts.end());
    if (got == std::set<std::string>{"alpha_y", "alpha_z"}) return Target::both;
  }
  fail(e.line, "unknown target '" + trim(e.value) +
                   "' (none | alpha | alpha_y | alpha_z | alpha_y, alpha_z)");
}

std::vector<Observable> parse_observables(const Entry& e) {
  std::vector<Observable> out;
  for (const auto& s : split_commas(e.value)) {
    Observable o;
    if (s == "qfi") o = Observable::qfi;
    else if (s == "gap") o = Observable::gap;
    else if (s == "cfi-current") o = Observable::cfi_current;
    else if (s == "cfi-sld") o = Observable::cfi_sld;
    else if (s == "qfim") o = Observable::qfim;
    else
      fail(e.line, "unknown observable '" + s +
                       "' (qfi | gap | cfi-current | cfi-sld | qfim)");
    if (std::find(out.begin(), out.end(), o) != out.end())
      fail(e.line, "duplicate observable '" + s + "'");
    out.push_back(o);
  }
  if (out.empty()) fail(e.line, "empty observable list");
  return out;
}

bool is_axis_param(const std::string& s) {
  for (const char* p : kAxisParams)
    if (s == p) return true;
  return false;
}

SweepSpec finalize_block(const std::vector<Entry>& entries, int first_line,
                         std::size_t index) {
  SweepSpec spec;
  spec.first_line = first_line;
  spec.name = "sweep" + std::to_string(index + 1);

  static const std::set<std::string> known = [] {
    std::set<std::string> k = {"name",
                               "probe",
                               "target",
                               "observables",
                               "mode",
                               "T_units",
                               "t",
                               "N",
                               "fit_qfi_vs_L",
                               "fit_gap_vs_L",
                               "fit_qfim_vs_L",
                               "fit_qfi_vs_T_window"};
    for (const char* p : kAxisParams) {
      k.insert(p);
      k.insert(std::string(p) + "_values");
    }
    return k;
  }();

  std::map<std::string, int> seen;
  for (const auto& e : entries) {
    if (!known.count(e.key)) fail(e.line, "unknown key '" + e.key + "'");
    auto [it, fresh] = seen.emplace(e.key, e.line);
    if (!fresh)
      fail(e.line, "duplicate key '" + e.key + "' (first on line " +
                       std::to_string(it->second) + ")");
  }

  // fixed value and grid for the same parameter cannot coexist
  for (const char* p : kAxisParams) {
    if (seen.count(p) && seen.count(std::string(p) + "_values"))
      fail(seen.at(std::string(p) + "_values"),
           std::string("'") + p + "' and '" + p +
               "_values' are mutually exclusive");
  }
  // the tied alpha excludes its components
  const bool tied = seen.count("alpha") || seen.count("alpha_values");
  const bool split = seen.count("alpha_y") || seen.count("alpha_z") ||
                     seen.count("alpha_y_values") ||
                     seen.count("alpha_z_values");
  if (tied && split) {
    const int line = seen.count("alpha") ? seen.at("alpha")
                                         : seen.at("alpha_values");
    fail(line,
         "'alpha' ties alpha_y = alpha_z and cannot be combined with "
         "alpha_y/alpha_z keys");
  }
  spec.alpha_tied = tied;

  for (const auto& e : entries) {
    if (e.key == "name") {
      spec.name = trim(e.value);
      if (spec.name.empty()) fail(e.line, "empty sweep name");
      for (char c : spec.name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
            c != '-' && c != '.')
          fail(e.line, "sweep name may use [A-Za-z0-9_.-] only");
    } else if (e.key == "probe") {
      spec.probe = parse_probe(e);
    } else if (e.key == "target") {
      spec.target = parse_target(e);
    } else if (e.key == "observables") {
      spec.observables = parse_observables(e);
    } else if (e.key == "mode") {
      const std::string s = trim(e.value);
      if (s == "product") spec.mode = GridMode::product;
      else if (s == "zip") spec.mode = GridMode::zip;
      else fail(e.line, "unknown mode '" + s + "' (product | zip)");
    } else if (e.key == "T_units") {
      const std::string s = trim(e.value);
      if (s == "absolute") spec.t_units = TUnits::absolute;
      else if (s == "gap") spec.t_units = TUnits::gap;
      else fail(e.line, "unknown T_units '" + s + "' (absolute | gap)");
    } else if (e.key == "t") {
      spec.base.t = parse_real(e.value, e.line, e.key);
    } else if (e.key == "alpha") {
      const Real a = parse_real(e.value, e.line, e.key);
      spec.base.alpha_y = spec.base.alpha_z = a;
    } else if (e.key == "alpha_y") {
      spec.base.alpha_y = parse_real(e.value, e.line, e.key);
    } else if (e.key == "alpha_z") {
      spec.base.alpha_z = parse_real(e.value, e.line, e.key);
    } else if (e.key == "B") {
      spec.base.B = parse_real(e.value, e.line, e.key);
    } else if (e.key == "U") {
      spec.base.U = parse_real(e.value, e.line, e.key);
    } else if (e.key == "V") {
      spec.base.V = parse_real(e.value, e.line, e.key);
    } else if (e.key == "T") {
      spec.base.T = parse_real(e.value, e.line, e.key);
    } else if (e.key == "L") {
      spec.base.L = static_cast<int>(parse_int(e.value, e.line, e.key));
    } else if (e.key == "N") {
      spec.base.N = static_cast<int>(parse_int(e.value, e.line, e.key));
      spec.n_given = true;
    } else if (e.key == "fit_qfi_vs_L") {
      spec.fit_qfi_vs_L = parse_bool(e.value, e.line, e.key);
    } else if (e.key == "fit_gap_vs_L") {
      spec.fit_gap_vs_L = parse_bool(e.value, e.line, e.key);
    } else if (e.key == "fit_qfim_vs_L") {
      spec.fit_qfim_vs_L = parse_bool(e.value, e.line, e.key);
    } else if (e.key == "fit_qfi_vs_T_window") {
      const auto w = parse_list(e.value, e.line, e.key);
      if (w.size() != 2)
        fail(e.line, "'fit_qfi_vs_T_window' expects two values: lo, hi");
      spec.fit_qfi_vs_T = true;
      spec.fit_window_lo = w[0];
      spec.fit_window_hi = w[1];
    }
    // *_values handled below in canonical order
  }

  for (const char* p : kAxisParams) {
    const Entry* e = find_entry(entries, std::string(p) + "_values");
    if (!e) continue;
    Axis ax;
    ax.param = p;
    ax.values = parse_list(e->value, e->line, e->key);
    ax.line = e->line;
    spec.axes.push_back(std::move(ax));
  }
  return spec;
}

void issue(std::vector<Issue>& out, bool error, const std::string& msg) {
  out.push_back({error, msg});
}

bool has_obs(const SweepSpec& s, Observable o) {
  return std::find(s.observables.begin(), s.observables.end(), o) !=
         s.observables.end();
}

const Axis* find_axis(const SweepSpec& s, const std::string& param) {
  for (const auto& ax : s.axes)
    if (ax.param == param) return &ax;
  return nullptr;
}

}  // namespace

std::int64_t SweepSpec::points() const {
  if (axes.empty()) return 1;
  if (mode == GridMode::zip) return static_cast<std::int64_t>(axes[0].values.size());
  std::int64_t n = 1;
  for (const auto& ax : axes) {
    n *= static_cast<std::int64_t>(ax.values.size());
    if (n > kMaxGridPoints) return n;  // caller rejects oversized grids
  }
  return n;
}

Config parse_config(const std::string& text) {
  Config cfg;
  cfg.text = text;

  std::vector<Entry> entries;
  int block_first_line = 1;
  int line_no = 0;
  std::string line;
  std::stringstream ss(text);

  auto close_block = [&](int at_line) {
    if (entries.empty()) fail(at_line, "empty sweep block");
    cfg.sweeps.push_back(
        finalize_block(entries, block_first_line, cfg.sweeps.size()));
    entries.clear();
  };

  while (std::getline(ss, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s == "---") {
      close_block(line_no);
      block_first_line = line_no + 1;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      fail(line_no, "expected 'key = value', got '" + s + "'");
    Entry e;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) fail(line_no, "missing key before '='");
    if (e.value.empty()) fail(line_no, "empty value for '" + e.key + "'");
    if (entries.empty()) block_first_line = line_no;
    entries.push_back(std::move(e));
  }
  if (!entries.empty()) close_block(line_no);
  if (cfg.sweeps.empty()) throw ConfigError("config defines no sweeps");
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::int64_t> axis_indices(const SweepSpec& spec,
                                       std::int64_t row) {
  std::vector<std::int64_t> pick(spec.axes.size(), 0);
  if (spec.mode == GridMode::zip) {
    for (auto& v : pick) v = row;
    return pick;
  }
  // product mode: first axis outermost, so divide strides from the right
  std::int64_t rest = row;
  for (std::size_t i = spec.axes.size(); i-- > 0;) {
    const auto n = static_cast<std::int64_t>(spec.axes[i].values.size());
    pick[i] = rest % n;
    rest /= n;
  }
  return pick;
}

ModelParams resolve_row(const SweepSpec& spec, std::int64_t row) {
  ModelParams p = spec.base;
  const std::vector<std::int64_t> pick = axis_indices(spec, row);
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const Real v = spec.axes[i].values[static_cast<std::size_t>(pick[i])];
    const std::string& name = spec.axes[i].param;
    if (name == "alpha") p.alpha_y = p.alpha_z = v;
    else if (name == "alpha_y") p.alpha_y = v;
    else if (name == "alpha_z") p.alpha_z = v;
    else if (name == "B") p.B = v;
    else if (name == "U") p.U = v;
    else if (name == "V") p.V = v;
    else if (name == "L") p.L = static_cast<int>(std::llround(v));
    else if (name == "T") p.T = v;
  }
  if (!spec.n_given) p.N = p.L;  // half filling
  return p;
}

std::vector<Issue> validate(const Config& cfg) {
  std::vector<Issue> out;

  std::set<std::string> names;
  for (const auto& s : cfg.sweeps)
    if (!names.insert(s.name).second)
      issue(out, true, "duplicate sweep name '" + s.name + "'");

  for (const auto& s : cfg.sweeps) {
    const std::string tag = "sweep '" + s.name + "': ";

    if (s.base.t <= 0) issue(out, true, tag + "t > 0 required");

    if (s.mode == GridMode::zip && !s.axes.empty()) {
      const std::size_t n = s.axes[0].values.size();
      for (const auto& ax : s.axes)
        if (ax.values.size() != n) {
          issue(out, true,
                tag + "zip mode needs equal-length grids ('" +
                    s.axes[0].param + "' has " + std::to_string(n) + ", '" +
                    ax.param + "' has " + std::to_string(ax.values.size()) +
                    ")");
          break;
        }
    }

    const std::int64_t npts = s.points();
    if (npts > kMaxGridPoints) {
      issue(out, true,
            tag + "grid has " + std::to_string(npts) + " points (cap " +
                std::to_string(kMaxGridPoints) + ")");
      continue;  // skip the per-point scans below
    }

    // L values must be integers >= 2
    bool l_ok = true;
    if (const Axis* ax = find_axis(s, "L")) {
      for (Real v : ax->values) {
        if (v != std::floor(v)) {
          issue(out, true, tag + "L values must be integers (got " +
                               std::to_string(v) + ")");
          l_ok = false;
          break;
        }
        if (v < 2) {
          issue(out, true,
                tag + "L ≥ 2 required (got " +
                    std::to_string(static_cast<long>(v)) + ")");
          l_ok = false;
          break;
        }
      }
    } else if (s.base.L < 2) {
      issue(out, true,
            tag + "L ≥ 2 required (got " + std::to_string(s.base.L) + ")");
      l_ok = false;
    }

    // temperatures
    if (const Axis* ax = find_axis(s, "T")) {
      for (Real v : ax->values)
        if (v < 0) {
          issue(out, true, tag + "T ≥ 0 required");
          break;
        }
    } else if (s.base.T < 0) {
      issue(out, true, tag + "T ≥ 0 required");
    }

    const bool has_T_grid = find_axis(s, "T") != nullptr;
    const bool thermal = s.probe == Probe::thermal;
    if ((has_T_grid || s.t_units == TUnits::gap) && !thermal)
      issue(out, true, tag + "temperature grid requires probe = thermal");
    if (s.probe == Probe::many_body_ed && s.base.T != 0)
      issue(out, true,
            tag + "probe = many-body-ed is a ground-state probe; use "
                  "probe = thermal for T > 0");

    const bool u_present = find_axis(s, "U") != nullptr || s.base.U != 0;
    const bool v_present = find_axis(s, "V") != nullptr || s.base.V != 0;
    const bool interacting = u_present || v_present;
    if (interacting &&
        (s.probe == Probe::single_particle || s.probe == Probe::slater))
      issue(out, true,
            tag + "interactions (U, V) require probe = many-body-ed or "
                  "thermal");

    // observable/target compatibility
    const bool wants_qfim = has_obs(s, Observable::qfim);
    const bool wants_cfi =
        has_obs(s, Observable::cfi_current) || has_obs(s, Observable::cfi_sld);
    if (wants_qfim && s.target != Target::both)
      issue(out, true,
            tag + "observable qfim requires target = alpha_y, alpha_z");
    if (wants_qfim && s.probe != Probe::single_particle)
      issue(out, true,
            tag + "observable qfim is implemented for probe = "
                  "single-particle");
    if (s.target == Target::both)
      for (Observable o : s.observables)
        if (o != Observable::qfim && o != Observable::gap) {
          issue(out, true,
                tag + "target = alpha_y, alpha_z supports only the qfim and "
                      "gap observables");
          break;
        }
    if (wants_cfi && s.probe == Probe::slater)
      issue(out, true,
            tag + "cfi observables are not defined for the slater probe");
    if (wants_cfi &&
        (s.target == Target::none || s.target == Target::both))
      issue(out, true, tag + "cfi observables require a single target "
                             "coupling (alpha | alpha_y | alpha_z)");
    if (s.target == Target::none)
      for (Observable o : s.observables)
        if (o != Observable::qfi && o != Observable::gap) {
          issue(out, true,
                tag + "target = none supports only qfi and gap");
          break;
        }
    if (s.probe == Probe::slater)
      for (Observable o : s.observables)
        if (o != Observable::qfi && o != Observable::gap) {
          issue(out, true,
                tag + "the slater probe supports only qfi and gap");
          break;
        }

    // fits
    const bool single_L_axis =
        s.axes.size() == 1 && s.axes[0].param == "L";
    auto check_L_fit = [&](bool flag, const char* key, Observable needs,
                           const char* obs_name) {
      if (!flag) return;
      if (!single_L_axis)
        issue(out, true,
              tag + std::string(key) + " requires L as the only swept "
                                       "parameter");
      else if (s.axes[0].values.size() < 4)
        issue(out, true, tag + std::string(key) + " needs at least 4 sizes");
      if (!has_obs(s, needs))
        issue(out, true, tag + std::string(key) + " requires observable " +
                             obs_name);
    };
    check_L_fit(s.fit_qfi_vs_L, "fit_qfi_vs_L", Observable::qfi, "qfi");
    check_L_fit(s.fit_gap_vs_L, "fit_gap_vs_L", Observable::gap, "gap");
    check_L_fit(s.fit_qfim_vs_L, "fit_qfim_vs_L", Observable::qfim, "qfim");
    if (s.fit_qfi_vs_T) {
      if (!(s.axes.size() == 1 && s.axes[0].param == "T"))
        issue(out, true,
              tag + "fit_qfi_vs_T_window requires T as the only swept "
                    "parameter");
      if (!(s.fit_window_lo > 0 && s.fit_window_lo < s.fit_window_hi))
        issue(out, true,
              tag + "fit_qfi_vs_T_window needs 0 < lo < hi");
      if (!has_obs(s, Observable::qfi))
        issue(out, true, tag + "fit_qfi_vs_T_window requires observable qfi");
    }

    if (!l_ok) continue;  // the per-point scans need valid L values

    // per-point scans: particle number, sector sizes, Zeeman floor
    const bool needs_sector =
        s.probe == Probe::many_body_ed || (thermal && interacting);
    const bool needs_filling = needs_sector || s.probe == Probe::slater;
    const std::int64_t cap = fock::sector_cap();

    bool n_reported = false, cap_reported = false, warn_reported = false,
         dense_reported = false;
    std::int64_t zeeman_count = 0;
    std::string zeeman_first;
    for (std::int64_t r = 0; r < npts; ++r) {
      const ModelParams p = resolve_row(s, r);
      if (needs_filling && !n_reported &&
          (p.N < 1 || p.N > 2 * p.L)) {
        issue(out, true,
              tag + "N = " + std::to_string(p.N) + " outside [1, 2L] at L = " +
                  std::to_string(p.L));
        n_reported = true;
      }
      if (needs_sector && !cap_reported) {
        const std::int64_t dim = fock::sector_dimension(p.L, p.N);
        if (dim > cap) {
          issue(out, true,
                tag + "sector dimension " + std::to_string(dim) + " at L = " +
                    std::to_string(p.L) + ", N = " + std::to_string(p.N) +
                    " exceeds cap " + std::to_string(cap) +
                    " (set WIREQFI_SECTOR_CAP to raise)");
          cap_reported = true;
        } else if (dim > spectral::kDenseThreshold && !dense_reported &&
                   (thermal || wants_cfi)) {
          issue(out, true,
                tag + "sector dimension " + std::to_string(dim) +
                    " exceeds the dense-path limit " +
                    std::to_string(spectral::kDenseThreshold) +
                    " required by thermal/cfi observables");
          dense_reported = true;
        } else if (dim > kSectorWarnDim && !warn_reported) {
          issue(out, false,
                tag + "sector dimension " + std::to_string(dim) +
                    " is large; iterative solves will be slow");
          warn_reported = true;
        }
      }
      const Real floor = 50.0 * p.t / (static_cast<Real>(p.L) * p.L);
      if (p.B < floor) {
        if (zeeman_count == 0) {
          std::ostringstream os;
          os << "B = " << p.B << " at L = " << p.L
             << " is below the finite-size Zeeman floor 50·t/L² = " << floor;
          zeeman_first = os.str();
        }
        ++zeeman_count;
      }
    }
    if (zeeman_count > 0) {
      std::ostringstream os;
      os << tag << zeeman_first
         << "; the field may not split the ground doublet cleanly ("
         << zeeman_count << " of " << npts << " points)";
      issue(out, false, os.str());
    }
  }
  return out;
}

std::string to_string(Probe p) {
  switch (p) {
    case Probe::single_particle: return "single-particle";
    case Probe::slater: return "slater";
    case Probe::many_body_ed: return "many-body-ed";
    case Probe::thermal: return "thermal";
  }
  return "?";
}

std::string to_string(Target t) {
  switch (t) {
    case Target::none: return "none";
    case Target::alpha: return "alpha";
    case Target::alpha_y: return "alpha_y";
    case Target::alpha_z: return "alpha_z";
    case Target::both: return "alpha_y, alpha_z";
  }
  return "?";
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::qfi: return "qfi";
    case Observable::gap: return "gap";
    case Observable::cfi_current: return "cfi-current";
    case Observable::cfi_sld: return "cfi-sld";
    case Observable::qfim: return "qfim";
  }
  return "?";
}

}  // namespace wireqfi::runner
