#include <doctest.h>

#include <cmath>
#include <random>

#include "wireqfi/fock.hpp"
#include "wireqfi/metrology.hpp"
#include "wireqfi/model.hpp"
#include "wireqfi/spectral.hpp"

using namespace wireqfi;
using metrology::ProbeKind;

namespace {

ModelParams wire100() {
  ModelParams p;
  p.L = 100;
  p.alpha_y = p.alpha_z = 0.1;
  p.B = 0.01;
  return p;
}

Matrix fd_gibbs_derivative(const ModelParams& p, Coupling which, Real delta) {
  const auto dm = spectral::diagonalize(
      model::hamiltonian(metrology::shifted(p, which, -delta)));
  const auto dp = spectral::diagonalize(
      model::hamiltonian(metrology::shifted(p, which, delta)));
  return (spectral::gibbs_density(spectral::gibbs_state(dp, p.T)) -
          spectral::gibbs_density(spectral::gibbs_state(dm, p.T))) /
         (2.0 * delta);
}

}  // namespace

TEST_CASE("qfi_pure: frozen wire values") {
  const ModelParams p = wire100();
  CHECK(metrology::ground_qfi(p, Coupling::alpha).value ==
        doctest::Approx(2727.6330266580853).epsilon(1e-9));
  CHECK(metrology::ground_qfi(p, Coupling::alpha_z).value ==
        doctest::Approx(665.6917).epsilon(1e-4));
}

TEST_CASE("qfi_pure: agrees with the overlap formula") {
  ModelParams p;
  p.L = 40;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  const Real pert = metrology::ground_qfi(p, Coupling::alpha).value;
  const Real h = metrology::kOverlapStep / 2.0;
  const auto gm = spectral::diagonalize(
      model::hamiltonian(metrology::shifted(p, Coupling::alpha, -h)));
  const auto gp = spectral::diagonalize(
      model::hamiltonian(metrology::shifted(p, Coupling::alpha, h)));
  const Real ov = metrology::overlap_qfi(gm.eigenvectors.col(0),
                                         gp.eigenvectors.col(0),
                                         metrology::kOverlapStep);
  CHECK(std::abs(ov - pert) / pert < 1e-3);
}

TEST_CASE("qfi_pure: rejects a degenerate ground state") {
  ModelParams p;  // B = 0 keeps the Kramers doublet intact
  p.L = 10;
  p.alpha_y = p.alpha_z = 0.4;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  CHECK_THROWS_AS(metrology::qfi_pure(
                      spec, model::coupling_derivative(Coupling::alpha, p.L)),
                  std::runtime_error);
}

TEST_CASE("qfim_pure: frozen values, symmetry, positive-semidefinite") {
  ModelParams p = wire100();
  p.alpha_y = 0.05;
  p.alpha_z = 0.1;
  const auto out = metrology::ground_qfim(p);
  REQUIRE(out.matrix.rows() == 2);
  CHECK(out.matrix(0, 0) == doctest::Approx(484.10409882943395).epsilon(1e-9));
  CHECK(out.matrix(1, 1) == doctest::Approx(1260.2465929683724).epsilon(1e-9));
  CHECK(out.matrix(0, 1) == doctest::Approx(728.2560207926982).epsilon(1e-9));
  CHECK(out.matrix(0, 1) == out.matrix(1, 0));
  const Real tr = out.matrix(0, 0) + out.matrix(1, 1);
  const Real det = out.matrix(0, 0) * out.matrix(1, 1) -
                   out.matrix(0, 1) * out.matrix(1, 0);
  const Real min_eig = tr / 2.0 - std::sqrt(tr * tr / 4.0 - det);
  CHECK(min_eig > -1e-10);
  // diagonal consistency with the scalar route
  CHECK(out.matrix(1, 1) ==
        doctest::Approx(metrology::ground_qfi(p, Coupling::alpha_z).value)
            .epsilon(1e-12));
}

TEST_CASE("shifted: tied coupling moves both components") {
  ModelParams p;
  p.alpha_y = 0.2;
  p.alpha_z = 0.5;
  const auto tied = metrology::shifted(p, Coupling::alpha, 0.1);
  CHECK(tied.alpha_y == doctest::Approx(0.3));
  CHECK(tied.alpha_z == doctest::Approx(0.6));
  const auto only_z = metrology::shifted(p, Coupling::alpha_z, 0.1);
  CHECK(only_z.alpha_y == 0.2);
  CHECK(only_z.alpha_z == doctest::Approx(0.6));
}

TEST_CASE("slater_ground_qfi: frozen half-filled value") {
  ModelParams p;
  p.L = 20;
  p.N = 20;
  p.alpha_y = p.alpha_z = 0.1;
  p.B = 0.01;
  // central-difference orbital derivatives: the eigensolver's backward error
  // is amplified by 1/(2 delta), so the value is pinned to 1e-5 only
  CHECK(metrology::slater_ground_qfi(p, Coupling::alpha).value ==
        doctest::Approx(288.2000565583691).epsilon(1e-5));
}

TEST_CASE("many_body_qfi: frozen interacting values") {
  ModelParams p;
  p.L = 6;
  p.N = 6;
  p.alpha_y = p.alpha_z = 0.1;
  p.B = 0.01;
  CHECK(metrology::many_body_qfi(p, Coupling::alpha).value ==
        doctest::Approx(29.4036541132261).epsilon(1e-8));
  p.U = 5.0;
  CHECK(metrology::many_body_qfi(p, Coupling::alpha).value ==
        doctest::Approx(47.19163818000993).epsilon(1e-8));
  p.U = -2.0;
  CHECK(metrology::many_body_qfi(p, Coupling::alpha).value ==
        doctest::Approx(14.625244556441517).epsilon(1e-8));
  p.U = 0.0;
  p.V = 2.0;
  CHECK(metrology::many_body_qfi(p, Coupling::alpha).value ==
        doctest::Approx(5.776160882521048).epsilon(1e-8));
}

TEST_CASE("many_body_qfi_overlap: tracks the dense perturbation sum") {
  ModelParams p;
  p.L = 4;
  p.N = 4;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  p.U = 1.0;
  const Real dense = metrology::many_body_qfi(p, Coupling::alpha).value;
  const Real overlap =
      metrology::many_body_qfi_overlap(p, Coupling::alpha).value;
  CHECK(std::abs(overlap - dense) / dense < 1e-3);
}

TEST_CASE("thermal_qfi: frozen values and the T -> 0 plateau") {
  ModelParams p = wire100();
  const Real gap = 0.0028657565235574722;
  p.T = gap / 10.0;
  CHECK(metrology::thermal_qfi(p, Coupling::alpha).value ==
        doctest::Approx(2727.302684790421).epsilon(1e-7));
  ModelParams q;
  q.L = 20;
  q.alpha_y = q.alpha_z = 0.5;
  q.B = 0.01;
  q.T = 0.05;
  CHECK(metrology::thermal_qfi(q, Coupling::alpha).value ==
        doctest::Approx(31.830356754099913).epsilon(1e-7));
}

TEST_CASE("qfi_mixed: consistent with tr(rho L^2) through the SLD") {
  ModelParams p;
  p.L = 12;
  p.alpha_y = p.alpha_z = 0.4;
  p.B = 0.1;
  p.T = 0.3;
  const Real delta = metrology::probability_step(0.4);
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const auto state = spectral::gibbs_state(spec, p.T);
  const Matrix drho = fd_gibbs_derivative(p, Coupling::alpha, delta);
  const Real F = metrology::qfi_mixed(state, drho).value;
  const Matrix L = metrology::sld(state, drho);
  CHECK((L - L.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  const Matrix rho = spectral::gibbs_density(state);
  const Real trace_form = (rho * L * L).trace().real();
  CHECK(F == doctest::Approx(trace_form).epsilon(1e-8));
}

TEST_CASE("qfi_mixed: rejects a state derivative with nonzero trace") {
  ModelParams p;
  p.L = 4;
  p.alpha_y = p.alpha_z = 0.4;
  p.B = 0.1;
  p.T = 0.5;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const auto state = spectral::gibbs_state(spec, p.T);
  const Matrix rho = spectral::gibbs_density(state);  // trace 1, not a deriv
  CHECK_THROWS_AS(metrology::qfi_mixed(state, rho), std::invalid_argument);
}

TEST_CASE("cfi: hand-computable distribution") {
  RealVector prob(3), dp(3);
  prob << 0.25, 0.25, 0.5;
  dp << 0.1, -0.1, 0.0;
  CHECK(metrology::cfi(prob, dp).value == doctest::Approx(0.08).epsilon(1e-14));
}

TEST_CASE("cfi: outcomes at the probability floor are skipped") {
  RealVector prob(2), dp(2);
  prob << 1.0 - 1e-13, 1e-13;
  dp << 1.0, -1.0;
  const Real f = metrology::cfi(prob, dp).value;
  CHECK(f == doctest::Approx(1.0 / (1.0 - 1e-13)).epsilon(1e-10));
}

TEST_CASE("cfim: symmetric and consistent with scalar cfi") {
  RealVector prob(4);
  prob << 0.1, 0.2, 0.3, 0.4;
  RealVector d1(4), d2(4);
  d1 << 0.05, -0.05, 0.02, -0.02;
  d2 << -0.01, 0.03, -0.04, 0.02;
  const auto out = metrology::cfim(prob, {d1, d2});
  CHECK(out.matrix(0, 1) == out.matrix(1, 0));
  CHECK(out.matrix(0, 0) ==
        doctest::Approx(metrology::cfi(prob, d1).value).epsilon(1e-14));
  CHECK(out.matrix(1, 1) ==
        doctest::Approx(metrology::cfi(prob, d2).value).epsilon(1e-14));
}

TEST_CASE("eigenbasis_measurement: degenerate outcomes share a projector") {
  Matrix M = Matrix::Zero(3, 3);
  M(0, 0) = 1.0;
  M(1, 1) = 1.0;
  M(2, 2) = 2.0;
  const auto meas = metrology::eigenbasis_measurement(M);
  REQUIRE(meas.groups.size() == 2);
  CHECK(meas.groups[0].second - meas.groups[0].first == 2);
  CHECK(meas.groups[1].second - meas.groups[1].first == 1);
}

TEST_CASE("eigenbasis_measurement: current operator outcome count at L=100") {
  const auto meas =
      metrology::eigenbasis_measurement(model::current_operator(100));
  CHECK(meas.groups.size() == 100);
  // groups must partition the spectrum
  int covered = 0;
  for (const auto& [a, b] : meas.groups) covered += b - a;
  CHECK(covered == 200);
}

TEST_CASE("measure_pure and measure_density agree on a pure state") {
  ModelParams p;
  p.L = 8;
  p.alpha_y = p.alpha_z = 0.6;
  p.B = 0.2;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const Vector psi = spec.eigenvectors.col(0);
  const auto meas =
      metrology::eigenbasis_measurement(model::current_operator(p.L));
  const RealVector a = metrology::measure_pure(meas, psi);
  const RealVector b = metrology::measure_density(meas, psi * psi.adjoint());
  CHECK(a.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("current_basis_cfi: frozen ratio at the wire point") {
  const ModelParams p = wire100();
  const Real qfi = metrology::ground_qfi(p, Coupling::alpha).value;
  const Real cfi =
      metrology::current_basis_cfi(p, Coupling::alpha, ProbeKind::ground).value;
  CHECK(cfi / qfi == doctest::Approx(0.995091).epsilon(1e-4));
  CHECK(cfi <= qfi + 1e-8);
}

TEST_CASE("sld_basis_cfi: saturates the quantum bound for the ground probe") {
  ModelParams p;
  p.L = 30;
  p.alpha_y = p.alpha_z = 0.4;
  p.B = 0.05;
  const Real qfi = metrology::ground_qfi(p, Coupling::alpha).value;
  const Real cfi =
      metrology::sld_basis_cfi(p, Coupling::alpha, ProbeKind::ground).value;
  CHECK(cfi / qfi > 0.999);
  CHECK(cfi <= qfi + 1e-8);
}

TEST_CASE("sld_basis_cfi: saturates for the thermal probe too") {
  ModelParams p;
  p.L = 20;
  p.alpha_y = p.alpha_z = 0.5;
  p.B = 0.01;
  p.T = 0.05;
  const Real qfi = metrology::thermal_qfi(p, Coupling::alpha).value;
  const Real cfi =
      metrology::sld_basis_cfi(p, Coupling::alpha, ProbeKind::thermal).value;
  CHECK(cfi / qfi > 0.999);
  CHECK(cfi <= qfi + 1e-8);
}

TEST_CASE("metrology kernels: serial and parallel agree bitwise") {
  ModelParams p;
  p.L = 24;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  CHECK(metrology::ground_qfi(p, Coupling::alpha, Exec::serial).value ==
        metrology::ground_qfi(p, Coupling::alpha, Exec::parallel).value);
  const auto qs = metrology::ground_qfim(p, Exec::serial);
  const auto qp = metrology::ground_qfim(p, Exec::parallel);
  CHECK(qs.matrix == qp.matrix);
  CHECK(metrology::slater_ground_qfi(p, Coupling::alpha,
                                     metrology::kOverlapStep, Exec::serial)
            .value ==
        metrology::slater_ground_qfi(p, Coupling::alpha,
                                     metrology::kOverlapStep, Exec::parallel)
            .value);
  p.T = 0.2;
  CHECK(metrology::thermal_qfi(p, Coupling::alpha, Exec::serial).value ==
        metrology::thermal_qfi(p, Coupling::alpha, Exec::parallel).value);
}
