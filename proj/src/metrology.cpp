#include "wireqfi/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wireqfi/fock.hpp"
#include "wireqfi/model.hpp"
#include "wireqfi/parallel.hpp"

namespace wireqfi::metrology {

namespace {

Real ground_degeneracy_threshold(const RealVector& E) {
  return 1e-12 * std::max(1.0, std::abs(E(0)));
}

void require_full_nondegenerate(const spectral::SpectralDecomposition& spec) {
  if (spec.partial)
    throw std::invalid_argument("full decomposition required");
  const auto& E = spec.eigenvalues;
  if (E.size() < 2) throw std::invalid_argument("need at least two levels");
  if (E(1) - E(0) <= ground_degeneracy_threshold(E))
    throw std::runtime_error(
        "degenerate ground state: perturbation-sum QFI undefined");
}

// Guards against grossly wrong inputs (a state instead of its derivative).
// The tolerance admits finite-difference rounding, which amplifies the
// eps-level trace and symmetry error of each state by dim / (2 delta).
void require_hermitian_traceless(const Matrix& M) {
  const Real scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-7 * scale)
    throw std::invalid_argument("drho must be Hermitian");
  if (std::abs(M.trace()) > 1e-7 * scale)
    throw std::invalid_argument("drho must be traceless");
}

// C = V† M V, column-parallel with a fixed combination order.
Matrix conj_transform(const Matrix& V, const Matrix& M, Exec exec) {
  const std::int64_t d = V.cols();
  Matrix C(d, d);
  parallel_for(d, exec, [&](std::int64_t j) {
    const Vector tmp = M * V.col(j);
    C.col(j) = V.adjoint() * tmp;
  });
  return C;
}

// stencil of decompositions for H(p - delta), H(p), H(p + delta)
struct Stencil {
  spectral::SpectralDecomposition minus, center, plus;
  Real delta = 0.0;
};

Stencil single_particle_stencil(const ModelParams& p, Coupling which,
                                Real delta) {
  Stencil st;
  st.delta = delta;
  st.minus = spectral::diagonalize(model::hamiltonian(shifted(p, which, -delta)));
  st.center = spectral::diagonalize(model::hamiltonian(p));
  st.plus = spectral::diagonalize(model::hamiltonian(shifted(p, which, delta)));
  return st;
}

Stencil sector_stencil(const fock::SectorBasis& basis, const ModelParams& p,
                       Coupling which, Real delta, Exec exec) {
  if (basis.dim() > spectral::kDenseThreshold)
    throw std::runtime_error(
        "sector dimension exceeds the dense threshold; use the overlap route");
  Stencil st;
  st.delta = delta;
  st.minus = spectral::diagonalize(
      fock::many_body_hamiltonian(basis, shifted(p, which, -delta), exec));
  st.center =
      spectral::diagonalize(fock::many_body_hamiltonian(basis, p, exec));
  st.plus = spectral::diagonalize(
      fock::many_body_hamiltonian(basis, shifted(p, which, delta), exec));
  return st;
}

// A level crossing between the filled manifold [0, N) and the rest anywhere
// inside the stencil invalidates the finite difference.
void require_no_crossing(const Stencil& st, int N) {
  const auto& Ec = st.center.eigenvalues;
  if (N >= Ec.size()) return;
  const Real top = std::max({st.center.eigenvalues(N - 1),
                             st.minus.eigenvalues(N - 1),
                             st.plus.eigenvalues(N - 1)});
  const Real bottom = std::min({st.center.eigenvalues(N),
                                st.minus.eigenvalues(N),
                                st.plus.eigenvalues(N)});
  if (top >= bottom)
    throw std::runtime_error(
        "level crossing inside the finite-difference stencil; reduce delta");
}

Real coupling_value(const ModelParams& p, Coupling which) {
  switch (which) {
    case Coupling::alpha_y: return p.alpha_y;
    case Coupling::alpha_z: return p.alpha_z;
    case Coupling::alpha: return p.alpha_z;
  }
  return p.alpha_z;
}

bool interacting(const ModelParams& p) { return p.U != 0.0 || p.V != 0.0; }

}  // namespace

ModelParams shifted(const ModelParams& p, Coupling which, Real delta) {
  ModelParams q = p;
  switch (which) {
    case Coupling::alpha_y:
      q.alpha_y += delta;
      break;
    case Coupling::alpha_z:
      q.alpha_z += delta;
      break;
    case Coupling::alpha:
      q.alpha_y += delta;
      q.alpha_z += delta;
      break;
  }
  return q;
}

FisherResult qfi_pure(const spectral::SpectralDecomposition& spec,
                      const Matrix& dH, Exec exec) {
  require_full_nondegenerate(spec);
  const auto& E = spec.eigenvalues;
  const auto& V = spec.eigenvectors;
  const Vector m = V.adjoint() * (dH * V.col(0));
  const std::int64_t d = E.size();
  const Real F = 4.0 * deterministic_sum(d - 1, exec, [&](std::int64_t i) {
    const Real de = E(i + 1) - E(0);
    return std::norm(m(i + 1)) / (de * de);
  });
  return {F, {}, "pure-perturbation"};
}

FisherResult qfim_pure(const spectral::SpectralDecomposition& spec,
                       const std::vector<Matrix>& dHs, Exec exec) {
  require_full_nondegenerate(spec);
  const auto& E = spec.eigenvalues;
  const auto& V = spec.eigenvectors;
  const int np = static_cast<int>(dHs.size());
  const std::int64_t d = E.size();
  std::vector<Vector> cols(np);
  for (int i = 0; i < np; ++i) {
    Vector m = V.adjoint() * (dHs[i] * V.col(0));
    for (std::int64_t n = 1; n < d; ++n) m(n) /= (E(n) - E(0));
    cols[i] = std::move(m);
  }
  FisherResult out;
  out.matrix = RealMatrix(np, np);
  for (int i = 0; i < np; ++i)
    for (int j = i; j < np; ++j) {
      const Real f =
          4.0 * deterministic_sum(d - 1, exec, [&](std::int64_t n) {
            return std::real(std::conj(cols[i](n + 1)) * cols[j](n + 1));
          });
      out.matrix(i, j) = f;
      out.matrix(j, i) = f;
    }
  out.value = out.matrix(0, 0);
  out.method = "pure-perturbation";
  return out;
}

Real overlap_qfi(const Vector& psi_minus, const Vector& psi_plus, Real delta) {
  if (delta <= 0) throw std::invalid_argument("delta > 0 required");
  const Real ov = std::abs(psi_minus.dot(psi_plus));
  return 8.0 * (1.0 - ov) / (delta * delta);
}

FisherResult qfi_mixed(const spectral::ThermalState& state, const Matrix& drho,
                       Exec exec, Real floor) {
  require_hermitian_traceless(drho);
  if (drho.rows() != state.basis.rows())
    throw std::invalid_argument("drho dimension mismatch");
  const Matrix A = conj_transform(state.basis, drho, exec);
  const auto& lam = state.weights;
  const std::int64_t d = lam.size();
  bool any = false;
  for (std::int64_t i = 0; i < d && !any; ++i)
    any = 2.0 * lam(i) > floor;
  if (!any)
    throw std::runtime_error("weight floor leaves an empty mixed-QFI sum");
  const Real F = deterministic_sum(d, exec, [&](std::int64_t mm) {
    Real row = 0.0;
    for (std::int64_t nn = 0; nn < d; ++nn) {
      const Real s = lam(mm) + lam(nn);
      if (s > floor) row += 2.0 * std::norm(A(mm, nn)) / s;
    }
    return row;
  });
  return {F, {}, "mixed-spectral"};
}

Matrix sld(const spectral::ThermalState& state, const Matrix& drho,
           Real floor) {
  require_hermitian_traceless(drho);
  // Symmetrized before the division: pairs near the weight floor would
  // otherwise blow the rounding asymmetry of the transform up by 1/floor.
  Matrix A = state.basis.adjoint() * drho * state.basis;
  A = ((A + A.adjoint()) / 2.0).eval();
  const auto& lam = state.weights;
  const std::int64_t d = lam.size();
  Matrix Le = Matrix::Zero(d, d);
  for (std::int64_t mm = 0; mm < d; ++mm)
    for (std::int64_t nn = 0; nn < d; ++nn) {
      const Real s = lam(mm) + lam(nn);
      if (s > floor) Le(mm, nn) = 2.0 * A(mm, nn) / s;
    }
  return state.basis * Le * state.basis.adjoint();
}

FisherResult cfi(const RealVector& p, const RealVector& dp, Real floor) {
  return cfim(p, {dp}, floor);
}

FisherResult cfim(const RealVector& p, const std::vector<RealVector>& dp,
                  Real floor) {
  const std::int64_t n = p.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (p(i) < 0.0) throw std::invalid_argument("negative probability");
  if (std::abs(p.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("probabilities must sum to 1");
  const int np = static_cast<int>(dp.size());
  for (const auto& d : dp)
    if (d.size() != n) throw std::invalid_argument("derivative length mismatch");
  FisherResult out;
  out.matrix = RealMatrix::Zero(np, np);
  for (std::int64_t k = 0; k < n; ++k) {
    if (p(k) <= floor) continue;
    for (int i = 0; i < np; ++i)
      for (int j = i; j < np; ++j)
        out.matrix(i, j) += dp[i](k) * dp[j](k) / p(k);
  }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < i; ++j) out.matrix(i, j) = out.matrix(j, i);
  out.value = out.matrix(0, 0);
  out.method = "cfi";
  return out;
}

ProjectiveMeasurement eigenbasis_measurement(const Matrix& M) {
  const auto spec = spectral::diagonalize(M);
  ProjectiveMeasurement meas;
  meas.basis = spec.eigenvectors;
  const auto& w = spec.eigenvalues;
  const int n = static_cast<int>(w.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || w(i) - w(i - 1) > 1e-8) {
      meas.groups.emplace_back(start, i);
      start = i;
    }
  }
  return meas;
}

RealVector measure_pure(const ProjectiveMeasurement& meas, const Vector& psi) {
  if (psi.size() != meas.basis.rows())
    throw std::invalid_argument("dimension mismatch");
  const Vector amp = meas.basis.adjoint() * psi;
  RealVector p(static_cast<std::int64_t>(meas.groups.size()));
  for (std::size_t g = 0; g < meas.groups.size(); ++g) {
    Real s = 0.0;
    for (int i = meas.groups[g].first; i < meas.groups[g].second; ++i)
      s += std::norm(amp(i));
    p(static_cast<std::int64_t>(g)) = s;
  }
  return p;
}

RealVector measure_density(const ProjectiveMeasurement& meas,
                           const Matrix& rho) {
  if (rho.rows() != meas.basis.rows())
    throw std::invalid_argument("dimension mismatch");
  RealVector p(static_cast<std::int64_t>(meas.groups.size()));
  for (std::size_t g = 0; g < meas.groups.size(); ++g) {
    Real s = 0.0;
    for (int i = meas.groups[g].first; i < meas.groups[g].second; ++i)
      s += std::real(meas.basis.col(i).dot(rho * meas.basis.col(i)));
    // clamp roundoff so downstream preconditions (p >= 0) hold
    p(static_cast<std::int64_t>(g)) = std::max(s, 0.0);
  }
  return p;
}

FisherResult slater_qfi(const spectral::SpectralDecomposition& center,
                        const spectral::SpectralDecomposition& minus,
                        const spectral::SpectralDecomposition& plus, int N,
                        Real delta, Exec exec) {
  if (center.partial || minus.partial || plus.partial)
    throw std::invalid_argument("full decompositions required");
  const std::int64_t d = center.eigenvalues.size();
  if (N < 1 || N > d) throw std::invalid_argument("N must lie in [1, dim]");
  if (N < d) {
    const Real top = std::max({center.eigenvalues(N - 1),
                               minus.eigenvalues(N - 1),
                               plus.eigenvalues(N - 1)});
    const Real bottom = std::min({center.eigenvalues(N), minus.eigenvalues(N),
                                  plus.eigenvalues(N)});
    if (top >= bottom)
      throw std::runtime_error(
          "level crossing inside the finite-difference stencil; reduce delta");
  }
  const auto& P = center.eigenvectors;  // filled manifold = first N columns
  const auto fix = [](const Vector& ref, Vector v) {
    std::int64_t piv = 0;
    ref.cwiseAbs().maxCoeff(&piv);
    const Complex ph = v(piv);
    if (std::abs(ph) > 1e-300) v *= std::abs(ph) / ph;
    return v;
  };
  const Real F = 4.0 * deterministic_sum(N, exec, [&](std::int64_t l) {
    const Vector vp = fix(P.col(l), plus.eigenvectors.col(l));
    const Vector vm = fix(P.col(l), minus.eigenvectors.col(l));
    const Vector dv = (vp - vm) / (2.0 * delta);
    const Vector resid =
        dv - P.leftCols(N) * (P.leftCols(N).adjoint() * dv).eval();
    return std::real(resid.dot(resid));
  });
  return {F, {}, "slater"};
}

FisherResult ground_qfi(const ModelParams& p, Coupling which, Exec exec) {
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  return qfi_pure(spec, model::coupling_derivative(which, p.L), exec);
}

FisherResult ground_qfim(const ModelParams& p, Exec exec) {
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  auto out = qfim_pure(spec,
                       {model::coupling_derivative(Coupling::alpha_y, p.L),
                        model::coupling_derivative(Coupling::alpha_z, p.L)},
                       exec);
  return out;
}

FisherResult slater_ground_qfi(const ModelParams& p, Coupling which,
                               Real delta, Exec exec) {
  const auto st = single_particle_stencil(p, which, delta);
  return slater_qfi(st.center, st.minus, st.plus, p.N, delta, exec);
}

FisherResult many_body_qfi(const ModelParams& p, Coupling which, Exec exec) {
  const fock::SectorBasis basis(p.L, p.N);
  if (basis.dim() > spectral::kDenseThreshold)
    throw std::runtime_error(
        "sector dimension exceeds the dense threshold; use the overlap route");
  const auto spec =
      spectral::diagonalize(fock::many_body_hamiltonian(basis, p, exec));
  const Matrix dM = fock::lift_one_body(
      basis, model::coupling_derivative(which, p.L), exec);
  auto out = qfi_pure(spec, dM, exec);
  out.method = "ed-perturbation";
  return out;
}

FisherResult many_body_qfi_overlap(const ModelParams& p, Coupling which,
                                   Real delta, spectral::LanczosOptions opt) {
  const fock::SectorBasis basis(p.L, p.N);
  opt.k = std::max(opt.k, 2);
  const auto solve = [&](const ModelParams& q) {
    auto trip = fock::lift_one_body_triplets(basis, model::hamiltonian(q));
    const RealVector diag = interaction_diagonal(basis, q.U, q.V);
    for (std::int64_t i = 0; i < basis.dim(); ++i)
      if (diag(i) != 0.0)
        trip.push_back({static_cast<int>(i), static_cast<int>(i),
                        Complex(diag(i), 0.0)});
    const auto A = spectral::to_csr(static_cast<int>(basis.dim()), std::move(trip));
    return spectral::lanczos_lowest(A, opt);
  };
  const auto s0 = solve(p);
  const auto s1 = solve(shifted(p, which, delta));
  const Real F =
      overlap_qfi(s0.eigenvectors.col(0), s1.eigenvectors.col(0), delta);
  return {F, {}, "overlap-lanczos"};
}

FisherResult thermal_qfi(const spectral::SpectralDecomposition& center,
                         const spectral::SpectralDecomposition& minus,
                         const spectral::SpectralDecomposition& plus, Real T,
                         Real delta, Exec exec, Real floor) {
  const auto state = spectral::gibbs_state(center, T);
  const Matrix rp = spectral::gibbs_density(spectral::gibbs_state(plus, T));
  const Matrix rm = spectral::gibbs_density(spectral::gibbs_state(minus, T));
  const Matrix drho = (rp - rm) / (2.0 * delta);
  auto out = qfi_mixed(state, drho, exec, floor);
  return out;
}

FisherResult thermal_qfi(const ModelParams& p, Coupling which, Exec exec) {
  const Real delta = probability_step(coupling_value(p, which));
  if (!interacting(p)) {
    const auto st = single_particle_stencil(p, which, delta);
    return thermal_qfi(st.center, st.minus, st.plus, p.T, delta, exec);
  }
  const fock::SectorBasis basis(p.L, p.N);
  const auto st = sector_stencil(basis, p, which, delta, exec);
  return thermal_qfi(st.center, st.minus, st.plus, p.T, delta, exec);
}

namespace {

// probability vectors at the three stencil points for a given probe
struct ProbStencil {
  RealVector minus, center, plus;
  Real delta = 0.0;
};

ProbStencil probe_probabilities(const ModelParams& p, ProbeKind probe,
                                const ProjectiveMeasurement& meas,
                                const Stencil& st) {
  ProbStencil out;
  out.delta = st.delta;
  switch (probe) {
    case ProbeKind::ground:
    case ProbeKind::many_body:
      require_no_crossing(st, 1);
      out.minus = measure_pure(meas, st.minus.eigenvectors.col(0));
      out.center = measure_pure(meas, st.center.eigenvectors.col(0));
      out.plus = measure_pure(meas, st.plus.eigenvectors.col(0));
      break;
    case ProbeKind::thermal: {
      const auto rho = [&](const spectral::SpectralDecomposition& s) {
        return spectral::gibbs_density(spectral::gibbs_state(s, p.T));
      };
      out.minus = measure_density(meas, rho(st.minus));
      out.center = measure_density(meas, rho(st.center));
      out.plus = measure_density(meas, rho(st.plus));
      break;
    }
  }
  return out;
}

FisherResult cfi_of_measurement(const ModelParams& p, ProbeKind probe,
                                const ProjectiveMeasurement& meas,
                                const Stencil& st, const char* method) {
  const ProbStencil ps = probe_probabilities(p, probe, meas, st);
  const RealVector dp = (ps.plus - ps.minus) / (2.0 * ps.delta);
  auto out = cfi(ps.center, dp);
  out.method = method;
  return out;
}

}  // namespace

FisherResult current_basis_cfi(const ModelParams& p, Coupling which,
                               ProbeKind probe, Exec exec) {
  const Real delta = probability_step(coupling_value(p, which));
  if (probe == ProbeKind::many_body ||
      (probe == ProbeKind::thermal && interacting(p))) {
    const fock::SectorBasis basis(p.L, p.N);
    const auto meas = eigenbasis_measurement(
        fock::lift_one_body(basis, model::current_operator(p.L), exec));
    const auto st = sector_stencil(basis, p, which, delta, exec);
    return cfi_of_measurement(p, probe, meas, st, "cfi-current");
  }
  if (probe == ProbeKind::ground && interacting(p))
    throw std::invalid_argument(
        "ground probe with interactions: use the many-body probe");
  const auto meas = eigenbasis_measurement(model::current_operator(p.L));
  const auto st = single_particle_stencil(p, which, delta);
  return cfi_of_measurement(p, probe, meas, st, "cfi-current");
}

FisherResult sld_basis_cfi(const ModelParams& p, Coupling which,
                           ProbeKind probe, Exec exec) {
  const Real delta = probability_step(coupling_value(p, which));
  Stencil st;
  spectral::ThermalState state;
  Matrix rho_p, rho_m;
  if (probe == ProbeKind::many_body ||
      (probe == ProbeKind::thermal && interacting(p))) {
    const fock::SectorBasis basis(p.L, p.N);
    st = sector_stencil(basis, p, which, delta, exec);
  } else {
    if (probe == ProbeKind::ground && interacting(p))
      throw std::invalid_argument(
          "ground probe with interactions: use the many-body probe");
    st = single_particle_stencil(p, which, delta);
  }
  const Real temp = probe == ProbeKind::thermal ? p.T : 0.0;
  if (probe != ProbeKind::thermal) require_no_crossing(st, 1);
  state = spectral::gibbs_state(st.center, temp);
  rho_p = spectral::gibbs_density(spectral::gibbs_state(st.plus, temp));
  rho_m = spectral::gibbs_density(spectral::gibbs_state(st.minus, temp));
  const Matrix drho = (rho_p - rho_m) / (2.0 * delta);
  const auto meas = eigenbasis_measurement(sld(state, drho));
  return cfi_of_measurement(p, probe, meas, st, "cfi-sld");
}

}  // namespace wireqfi::metrology
