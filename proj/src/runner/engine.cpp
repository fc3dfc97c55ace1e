#include "wireqfi/runner/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "wireqfi/fock.hpp"
#include "wireqfi/metrology.hpp"
#include "wireqfi/model.hpp"
#include "wireqfi/parallel.hpp"
#include "wireqfi/scaling.hpp"
#include "wireqfi/spectral.hpp"

namespace wireqfi::runner {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

Coupling coupling_of(Target t) {
  switch (t) {
    case Target::alpha_y: return Coupling::alpha_y;
    case Target::alpha_z: return Coupling::alpha_z;
    default: return Coupling::alpha;
  }
}

Real coupling_value(const ModelParams& p, Coupling which) {
  return which == Coupling::alpha_y ? p.alpha_y : p.alpha_z;
}

bool has_obs(const SweepSpec& s, Observable o) {
  return std::find(s.observables.begin(), s.observables.end(), o) !=
         s.observables.end();
}

// column layout: axis coordinates first, then observables in config order
struct Layout {
  std::vector<std::string> columns;
  int obs_start = 0;
  int col_of(const SweepSpec& s, Observable o) const {
    int c = obs_start;
    for (Observable x : s.observables) {
      if (x == o) return c;
      c += x == Observable::qfim ? 4 : 1;
    }
    return -1;
  }
};

Layout make_layout(const SweepSpec& s) {
  Layout lay;
  for (const auto& ax : s.axes) lay.columns.push_back(ax.param);
  lay.obs_start = static_cast<int>(lay.columns.size());
  for (Observable o : s.observables) {
    switch (o) {
      case Observable::qfi: lay.columns.push_back("qfi"); break;
      case Observable::gap: lay.columns.push_back("gap"); break;
      case Observable::cfi_current: lay.columns.push_back("cfi_current"); break;
      case Observable::cfi_sld: lay.columns.push_back("cfi_sld"); break;
      case Observable::qfim:
        lay.columns.push_back("f_yy");
        lay.columns.push_back("f_zz");
        lay.columns.push_back("f_yz");
        lay.columns.push_back("qfim_min_eig");
        break;
    }
  }
  return lay;
}

Real min_eig_2x2(Real a, Real d, Real off) {
  const Real mid = 0.5 * (a + d);
  const Real rad = std::hypot(0.5 * (a - d), off);
  return mid - rad;
}

spectral::SpectralDecomposition sector_decomposition(const ModelParams& p,
                                                     Exec exec) {
  fock::SectorBasis basis(p.L, p.N);
  return spectral::diagonalize(fock::many_body_hamiltonian(basis, p, exec));
}

Real iterative_sector_gap(const ModelParams& p, Exec exec) {
  fock::SectorBasis basis(p.L, p.N);
  auto trips = fock::lift_one_body_triplets(basis, model::hamiltonian(p));
  const RealVector diag = fock::interaction_diagonal(basis, p.U, p.V, exec);
  for (int i = 0; i < diag.size(); ++i)
    if (diag(i) != 0.0) trips.push_back({i, i, Complex(diag(i), 0.0)});
  const auto A = spectral::to_csr(static_cast<int>(basis.dim()), std::move(trips));
  spectral::LanczosOptions opt;
  opt.k = 4;
  opt.exec = exec;
  return spectral::gap(spectral::lanczos_lowest(A, opt));
}

Real mb_qfi_value(const ModelParams& p, Coupling which, Exec exec) {
  if (fock::sector_dimension(p.L, p.N) <= spectral::kDenseThreshold)
    return metrology::many_body_qfi(p, which, exec).value;
  spectral::LanczosOptions opt;
  opt.exec = exec;
  return metrology::many_body_qfi_overlap(p, which, metrology::kOverlapStep,
                                          opt)
      .value;
}

class SweepRunner {
 public:
  SweepRunner(const SweepSpec& s, Exec exec) : s_(s), exec_(exec) {
    lay_ = make_layout(s);
    npts_ = s.points();
    res_.name = s.name;
    res_.columns = lay_.columns;
    res_.rows.assign(static_cast<std::size_t>(npts_),
                     std::vector<Real>(lay_.columns.size(), kNaN));
    errors_.assign(static_cast<std::size_t>(npts_), std::string());
    which_ = coupling_of(s.target);
  }

  SweepResult run() {
    const auto start = std::chrono::steady_clock::now();
    fill_coordinates();
    if (s_.probe == Probe::thermal)
      run_thermal();
    else
      run_pointwise();
    collect_failures();
    fit_all();
    res_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return std::move(res_);
  }

 private:
  void fill_coordinates() {
    for (std::int64_t r = 0; r < npts_; ++r) {
      const auto pick = axis_indices(s_, r);
      for (std::size_t i = 0; i < s_.axes.size(); ++i)
        res_.rows[static_cast<std::size_t>(r)][i] =
            s_.axes[i].values[static_cast<std::size_t>(pick[i])];
    }
  }

  void cell(std::int64_t r, Observable o, Real v, int offset = 0) {
    const int c = lay_.col_of(s_, o);
    res_.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + offset)] = v;
  }

  void run_pointwise() {
    parallel_for(npts_, exec_, [&](std::int64_t r) {
      try {
        eval_point(r);
      } catch (const std::exception& e) {
        errors_[static_cast<std::size_t>(r)] = e.what();
      }
    });
  }

  void eval_point(std::int64_t r) {
    const ModelParams p = resolve_row(s_, r);
    const bool wants_qfi = has_obs(s_, Observable::qfi);
    const bool wants_gap = has_obs(s_, Observable::gap);
    const bool wants_qfim = has_obs(s_, Observable::qfim);

    switch (s_.probe) {
      case Probe::single_particle: {
        spectral::SpectralDecomposition sd;
        if (wants_qfi || wants_gap || wants_qfim)
          sd = spectral::diagonalize(model::hamiltonian(p));
        if (wants_qfi)
          cell(r, Observable::qfi,
               s_.target == Target::none
                   ? 0.0
                   : metrology::qfi_pure(
                         sd, model::coupling_derivative(which_, p.L), exec_)
                         .value);
        if (wants_gap) cell(r, Observable::gap, spectral::gap(sd));
        if (wants_qfim) {
          const RealMatrix F =
              metrology::qfim_pure(
                  sd,
                  {model::coupling_derivative(Coupling::alpha_y, p.L),
                   model::coupling_derivative(Coupling::alpha_z, p.L)},
                  exec_)
                  .matrix;
          cell(r, Observable::qfim, F(0, 0), 0);
          cell(r, Observable::qfim, F(1, 1), 1);
          cell(r, Observable::qfim, F(0, 1), 2);
          cell(r, Observable::qfim, min_eig_2x2(F(0, 0), F(1, 1), F(0, 1)), 3);
        }
        if (has_obs(s_, Observable::cfi_current))
          cell(r, Observable::cfi_current,
               metrology::current_basis_cfi(p, which_,
                                            metrology::ProbeKind::ground,
                                            exec_)
                   .value);
        if (has_obs(s_, Observable::cfi_sld))
          cell(r, Observable::cfi_sld,
               metrology::sld_basis_cfi(p, which_,
                                        metrology::ProbeKind::ground, exec_)
                   .value);
        break;
      }
      case Probe::slater: {
        if (wants_qfi)
          cell(r, Observable::qfi,
               s_.target == Target::none
                   ? 0.0
                   : metrology::slater_ground_qfi(p, which_,
                                                  metrology::kOverlapStep,
                                                  exec_)
                         .value);
        if (wants_gap)
          cell(r, Observable::gap,
               spectral::gap(spectral::diagonalize(model::hamiltonian(p))));
        break;
      }
      case Probe::many_body_ed: {
        if (wants_qfi)
          cell(r, Observable::qfi,
               s_.target == Target::none ? 0.0
                                         : mb_qfi_value(p, which_, exec_));
        if (wants_gap)
          cell(r, Observable::gap,
               fock::sector_dimension(p.L, p.N) <= spectral::kDenseThreshold
                   ? spectral::gap(sector_decomposition(p, exec_))
                   : iterative_sector_gap(p, exec_));
        if (has_obs(s_, Observable::cfi_current))
          cell(r, Observable::cfi_current,
               metrology::current_basis_cfi(p, which_,
                                            metrology::ProbeKind::many_body,
                                            exec_)
                   .value);
        if (has_obs(s_, Observable::cfi_sld))
          cell(r, Observable::cfi_sld,
               metrology::sld_basis_cfi(p, which_,
                                        metrology::ProbeKind::many_body,
                                        exec_)
                   .value);
        break;
      }
      case Probe::thermal:
        throw std::logic_error("thermal probe goes through run_thermal");
    }
  }

  // Thermal sweeps reuse the three stencil decompositions across the whole
  // T group (T is the innermost axis, so groups are contiguous rows).
  void run_thermal() {
    const bool t_grid = !s_.axes.empty() && s_.axes.back().param == "T" &&
                        s_.mode == GridMode::product;
    const std::int64_t group_len =
        t_grid ? static_cast<std::int64_t>(s_.axes.back().values.size()) : 1;
    const std::int64_t ngroups = npts_ / group_len;
    std::vector<Real> group_gap(static_cast<std::size_t>(ngroups), kNaN);

    parallel_for(ngroups, exec_, [&](std::int64_t g) {
      const std::int64_t r0 = g * group_len;
      try {
        eval_thermal_group(g, r0, group_len, group_gap);
      } catch (const std::exception& e) {
        for (std::int64_t r = r0; r < r0 + group_len; ++r)
          if (errors_[static_cast<std::size_t>(r)].empty())
            errors_[static_cast<std::size_t>(r)] = e.what();
      }
    });
    if (ngroups == 1 && s_.t_units == TUnits::gap)
      res_.gap_scale = group_gap[0];
  }

  void eval_thermal_group(std::int64_t g, std::int64_t r0,
                          std::int64_t group_len, std::vector<Real>& group_gap) {
    const ModelParams p0 = resolve_row(s_, r0);
    const bool interacting = p0.U != 0.0 || p0.V != 0.0;
    const bool wants_qfi = has_obs(s_, Observable::qfi);
    const bool wants_gap = has_obs(s_, Observable::gap);
    const bool needs_stencil = wants_qfi && s_.target != Target::none;
    const bool needs_center =
        needs_stencil || wants_gap || s_.t_units == TUnits::gap;

    const Real delta =
        metrology::probability_step(coupling_value(p0, which_));
    spectral::SpectralDecomposition center, minus, plus;
    if (needs_center) {
      auto solve = [&](const ModelParams& q) {
        return interacting ? sector_decomposition(q, exec_)
                           : spectral::diagonalize(model::hamiltonian(q));
      };
      center = solve(p0);
      if (needs_stencil) {
        minus = solve(metrology::shifted(p0, which_, -delta));
        plus = solve(metrology::shifted(p0, which_, delta));
      }
      group_gap[static_cast<std::size_t>(g)] = spectral::gap(center);
    }
    const Real gap_g = group_gap[static_cast<std::size_t>(g)];

    const int t_col = res_.column("T");
    for (std::int64_t r = r0; r < r0 + group_len; ++r) {
      try {
        ModelParams p = resolve_row(s_, r);
        const Real t_abs =
            s_.t_units == TUnits::gap ? p.T * gap_g : p.T;
        p.T = t_abs;
        if (t_col >= 0)
          res_.rows[static_cast<std::size_t>(r)]
                   [static_cast<std::size_t>(t_col)] = t_abs;
        if (wants_qfi)
          cell(r, Observable::qfi,
               s_.target == Target::none
                   ? 0.0
                   : metrology::thermal_qfi(center, minus, plus, t_abs, delta,
                                            exec_)
                         .value);
        if (wants_gap) cell(r, Observable::gap, gap_g);
        if (has_obs(s_, Observable::cfi_current))
          cell(r, Observable::cfi_current,
               metrology::current_basis_cfi(p, which_,
                                            metrology::ProbeKind::thermal,
                                            exec_)
                   .value);
        if (has_obs(s_, Observable::cfi_sld))
          cell(r, Observable::cfi_sld,
               metrology::sld_basis_cfi(p, which_,
                                        metrology::ProbeKind::thermal, exec_)
                   .value);
      } catch (const std::exception& e) {
        errors_[static_cast<std::size_t>(r)] = e.what();
      }
    }
  }

  void collect_failures() {
    for (std::int64_t r = 0; r < npts_; ++r)
      if (!errors_[static_cast<std::size_t>(r)].empty())
        res_.failures.push_back({r, errors_[static_cast<std::size_t>(r)]});
  }

  RealVector column_vector(const std::string& name, bool absolute) const {
    const int c = res_.column(name);
    if (c < 0) throw std::runtime_error("column '" + name + "' absent");
    RealVector v(npts_);
    for (std::int64_t r = 0; r < npts_; ++r) {
      const Real x =
          res_.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      v(r) = absolute ? std::abs(x) : x;
    }
    return v;
  }

  void add_power_fit(const std::string& name, const std::string& xcol,
                     const std::string& ycol, bool abs_y) {
    try {
      const auto f =
          scaling::fit_power_law(column_vector(xcol, false),
                                 column_vector(ycol, abs_y));
      FitReport rep;
      rep.kind = "power-law";
      rep.exponent = f.exponent;
      rep.stderr_exponent = f.stderr_exponent;
      rep.r2 = f.r2;
      rep.a = std::exp(f.log_prefactor);
      res_.fits.emplace_back(name, rep);
    } catch (const std::exception& e) {
      res_.fit_failures.push_back(name + ": " + e.what());
    }
  }

  void fit_all() {
    if (s_.fit_qfi_vs_L) add_power_fit("qfi_vs_L", "L", "qfi", false);
    if (s_.fit_gap_vs_L) {
      try {
        const auto f = scaling::fit_gap_law(column_vector("L", false),
                                            column_vector("gap", false));
        FitReport rep;
        rep.kind = "gap-law";
        rep.exponent = f.mu;
        rep.stderr_exponent = f.stderr_mu;
        rep.r2 = f.r2;
        rep.a = f.a;
        rep.b = f.b;
        res_.fits.emplace_back("gap_vs_L", rep);
      } catch (const std::exception& e) {
        res_.fit_failures.push_back(std::string("gap_vs_L: ") + e.what());
      }
    }
    if (s_.fit_qfim_vs_L) {
      add_power_fit("f_yy_vs_L", "L", "f_yy", false);
      add_power_fit("f_zz_vs_L", "L", "f_zz", false);
      add_power_fit("f_yz_vs_L", "L", "f_yz", true);
    }
    if (s_.fit_qfi_vs_T) {
      try {
        Real lo = s_.fit_window_lo, hi = s_.fit_window_hi;
        if (s_.t_units == TUnits::gap) {
          if (!std::isfinite(res_.gap_scale))
            throw std::runtime_error("gap scale unavailable");
          lo *= res_.gap_scale;
          hi *= res_.gap_scale;
        }
        std::vector<Real> xs, ys;
        const int tc = res_.column("T"), qc = res_.column("qfi");
        for (std::int64_t r = 0; r < npts_; ++r) {
          const Real T = res_.rows[static_cast<std::size_t>(r)]
                                  [static_cast<std::size_t>(tc)];
          if (T >= lo * (1 - 1e-9) && T <= hi * (1 + 1e-9)) {
            xs.push_back(T);
            ys.push_back(
                res_.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(qc)]);
          }
        }
        RealVector x(static_cast<std::int64_t>(xs.size())),
            y(static_cast<std::int64_t>(ys.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) {
          x(static_cast<std::int64_t>(i)) = xs[i];
          y(static_cast<std::int64_t>(i)) = ys[i];
        }
        const auto f = scaling::fit_power_law(x, y);
        FitReport rep;
        rep.kind = "power-law";
        rep.exponent = f.exponent;
        rep.stderr_exponent = f.stderr_exponent;
        rep.r2 = f.r2;
        rep.a = std::exp(f.log_prefactor);
        res_.fits.emplace_back("qfi_vs_T", rep);
      } catch (const std::exception& e) {
        res_.fit_failures.push_back(std::string("qfi_vs_T: ") + e.what());
      }
    }
  }

  const SweepSpec& s_;
  Exec exec_;
  Layout lay_;
  std::int64_t npts_ = 0;
  Coupling which_ = Coupling::alpha;
  SweepResult res_;
  std::vector<std::string> errors_;
};

struct ThreadGuard {
  int old;
  explicit ThreadGuard(int workers) : old(max_threads()) {
    if (workers > 0) set_threads(workers);
  }
  ~ThreadGuard() { set_threads(old); }
};

}  // namespace

int SweepResult::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

Real SweepResult::at(std::int64_t row, const std::string& col) const {
  const int c = column(col);
  if (c < 0 || row < 0 || row >= static_cast<std::int64_t>(rows.size()))
    return kNaN;
  return rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
}

const FitReport* SweepResult::fit(const std::string& name) const {
  for (const auto& [n, f] : fits)
    if (n == name) return &f;
  return nullptr;
}

const SweepResult* RunResult::find(const std::string& name) const {
  for (const auto& s : sweeps)
    if (s.name == name) return &s;
  return nullptr;
}

RunResult run(const Config& cfg, int workers, Exec exec) {
  const ThreadGuard guard(workers);
  const auto start = std::chrono::steady_clock::now();
  RunResult out;
  for (const auto& spec : cfg.sweeps) {
    SweepRunner runner(spec, exec);
    out.sweeps.push_back(runner.run());
    out.failed_points +=
        static_cast<std::int64_t>(out.sweeps.back().failures.size());
  }
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace wireqfi::runner
