#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wireqfi/model.hpp"
#include "wireqfi/spectral.hpp"

using namespace wireqfi;

namespace {

ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<Real> coup(0.0, 1.2);
  std::uniform_int_distribution<int> len(2, 24);
  ModelParams p;
  p.L = len(rng);
  p.alpha_y = coup(rng);
  p.alpha_z = coup(rng);
  p.B = coup(rng);
  return p;
}

}  // namespace

TEST_CASE("hamiltonian: shape, hermiticity, bond structure") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const ModelParams p = random_params(rng);
    const Matrix H = model::hamiltonian(p);
    REQUIRE(H.rows() == 2 * p.L);
    REQUIRE(H.cols() == 2 * p.L);
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    // open chain: no matrix element may connect sites farther than 1 apart
    for (int a = 0; a < 2 * p.L; ++a)
      for (int b = 0; b < 2 * p.L; ++b)
        if (std::abs(a / 2 - b / 2) > 1) CHECK(H(a, b) == Complex(0, 0));
  }
}

TEST_CASE("hamiltonian: frozen two-site spectrum") {
  ModelParams p;
  p.L = 2;
  p.alpha_y = p.alpha_z = 0.5;
  p.B = 0.01;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const double expected[] = {-1.233880334463, -1.215623017315,
                             1.215623017315, 1.233880334463};
  for (int i = 0; i < 4; ++i)
    CHECK(spec.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("hamiltonian: alpha = 0 decouples into shifted spin chains") {
  // With no spin-orbit term the spectrum is the open-chain band
  // -2t cos(k pi / (L+1)) shifted by +-B, one copy per spin.
  ModelParams p;
  p.L = 9;
  p.B = 0.37;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  std::vector<Real> expected;
  for (int k = 1; k <= p.L; ++k) {
    const Real band = -2.0 * std::cos(k * M_PI / (p.L + 1));
    expected.push_back(band + p.B);
    expected.push_back(band - p.B);
  }
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 2 * p.L; ++i)
    CHECK(spec.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("hamiltonian: Kramers degeneracy at B = 0") {
  ModelParams p;
  p.L = 8;
  p.alpha_y = 0.4;
  p.alpha_z = 0.7;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  for (int i = 0; i < 2 * p.L; i += 2)
    CHECK(spec.eigenvalues(i + 1) - spec.eigenvalues(i) < 1e-12);
}

TEST_CASE("coupling_derivative: tied derivative is the component sum") {
  const int L = 7;
  const Matrix tied = model::coupling_derivative(Coupling::alpha, L);
  const Matrix dy = model::coupling_derivative(Coupling::alpha_y, L);
  const Matrix dz = model::coupling_derivative(Coupling::alpha_z, L);
  CHECK((tied - dy - dz).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling_derivative: matches finite differences exactly") {
  // H is linear in each coupling, so central differences are exact up to
  // rounding of the difference quotient itself.
  ModelParams p;
  p.L = 6;
  p.alpha_y = 0.3;
  p.alpha_z = 0.8;
  p.B = 0.2;
  const Real h = 0.5;  // linearity: any step works
  for (Coupling which :
       {Coupling::alpha, Coupling::alpha_y, Coupling::alpha_z}) {
    ModelParams pp = p, pm = p;
    if (which != Coupling::alpha_z) { pp.alpha_y += h; pm.alpha_y -= h; }
    if (which != Coupling::alpha_y) { pp.alpha_z += h; pm.alpha_z -= h; }
    const Matrix fd =
        (model::hamiltonian(pp) - model::hamiltonian(pm)) / (2.0 * h);
    const Matrix dH = model::coupling_derivative(which, p.L);
    CHECK((fd - dH).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("current_operator: Hermitian, traceless, bond-local") {
  const int L = 10;
  const Matrix J = model::current_operator(L);
  CHECK((J - J.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(J.trace()) == 0.0);
  for (int a = 0; a < 2 * L; ++a)
    for (int b = 0; b < 2 * L; ++b)
      if (std::abs(a / 2 - b / 2) != 1) CHECK(J(a, b) == Complex(0, 0));
}

TEST_CASE("hamiltonian_triplets: assembles to the dense operator") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = random_params(rng);
    const auto A = spectral::to_csr(2 * p.L, model::hamiltonian_triplets(p));
    const Matrix H = model::hamiltonian(p);
    Matrix dense = Matrix::Zero(2 * p.L, 2 * p.L);
    for (int r = 0; r < A.n; ++r)
      for (int k = A.ptr[r]; k < A.ptr[r + 1]; ++k)
        dense(r, A.col[k]) = A.val[k];
    CHECK((dense - H).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("params: validation rejects bad inputs") {
  ModelParams p;
  p.L = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.L = 4;
  p.t = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.t = 1.0;
  p.T = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.T = 0.0;
  p.N = 9;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.N = 8;
  CHECK_NOTHROW(p.validate());
}
