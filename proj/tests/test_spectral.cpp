#include <doctest.h>

#include <cmath>
#include <random>

#include "wireqfi/fock.hpp"
#include "wireqfi/model.hpp"
#include "wireqfi/spectral.hpp"

using namespace wireqfi;

namespace {

Matrix random_hermitian(int n, std::mt19937& rng) {
  std::uniform_real_distribution<Real> u(-1.0, 1.0);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Complex(u(rng), u(rng));
  return ((A + A.adjoint()) / 2.0).eval();
}

spectral::Csr wire_csr(const ModelParams& p) {
  return spectral::to_csr(2 * p.L, model::hamiltonian_triplets(p));
}

}  // namespace

TEST_CASE("diagonalize: reconstruction, orthonormality, ordering") {
  std::mt19937 rng(3);
  for (int n : {2, 7, 24}) {
    const Matrix H = random_hermitian(n, rng);
    const auto spec = spectral::diagonalize(H);
    CHECK_FALSE(spec.partial);
    const Matrix V = spec.eigenvectors;
    CHECK((V.adjoint() * V - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-12);
    const Matrix rebuilt =
        V * spec.eigenvalues.asDiagonal() * V.adjoint();
    CHECK((rebuilt - H).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 1; i < n; ++i)
      CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i - 1));
  }
}

TEST_CASE("diagonalize: rejects non-Hermitian input") {
  Matrix M(2, 2);
  M << 0, 1, 0, 0;
  CHECK_THROWS_AS(spectral::diagonalize(M), std::invalid_argument);
}

TEST_CASE("to_csr: duplicate triplets are summed") {
  std::vector<model::Triplet> trips = {
      {0, 1, Complex(1, 0)}, {0, 1, Complex(0, 2)}, {1, 0, Complex(1, -2)},
      {1, 1, Complex(3, 0)}, {1, 1, Complex(-3, 0)}};
  const auto A = spectral::to_csr(2, trips);
  Matrix dense = Matrix::Zero(2, 2);
  for (int r = 0; r < A.n; ++r)
    for (int k = A.ptr[r]; k < A.ptr[r + 1]; ++k)
      dense(r, A.col[k]) += A.val[k];
  CHECK(dense(0, 1) == Complex(1, 2));
  CHECK(dense(1, 0) == Complex(1, -2));
  CHECK(dense(1, 1) == Complex(0, 0));
}

TEST_CASE("matvec: equals the dense product, bitwise across policies") {
  ModelParams p;
  p.L = 30;
  p.alpha_y = 0.5;
  p.alpha_z = 0.2;
  p.B = 0.1;
  const auto A = wire_csr(p);
  const Matrix H = model::hamiltonian(p);
  std::mt19937 rng(5);
  std::uniform_real_distribution<Real> u(-1.0, 1.0);
  Vector x(A.n);
  for (int i = 0; i < A.n; ++i) x(i) = Complex(u(rng), u(rng));
  Vector ys(A.n), yp(A.n);
  spectral::matvec(A, x, ys, Exec::serial);
  spectral::matvec(A, x, yp, Exec::parallel);
  CHECK(ys == yp);
  const Vector ref = H * x;
  CHECK((ys - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lanczos: extremal eigenpairs of the wire match dense") {
  ModelParams p;
  p.L = 150;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  const auto dense = spectral::diagonalize(model::hamiltonian(p));
  spectral::LanczosOptions opt;
  opt.k = 4;
  const auto sparse = spectral::lanczos_lowest(wire_csr(p), opt);
  CHECK(sparse.partial);
  REQUIRE(sparse.eigenvalues.size() >= 4);
  for (int i = 0; i < 4; ++i)
    CHECK(sparse.eigenvalues(i) ==
          doctest::Approx(dense.eigenvalues(i)).epsilon(1e-9));
  // eigenvector residual check: ||H v - E v||
  const Matrix H = model::hamiltonian(p);
  for (int i = 0; i < 4; ++i) {
    const Vector v = sparse.eigenvectors.col(i);
    CHECK((H * v - sparse.eigenvalues(i) * v).norm() < 1e-7);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("lanczos: interacting sector ground state matches dense") {
  ModelParams p;
  p.L = 5;
  p.N = 5;
  p.alpha_y = p.alpha_z = 0.4;
  p.B = 0.05;
  p.U = 2.0;
  p.V = 0.5;
  const fock::SectorBasis basis(p.L, p.N);
  const auto dense =
      spectral::diagonalize(fock::many_body_hamiltonian(basis, p));
  auto trips = fock::lift_one_body_triplets(basis, model::hamiltonian(p));
  const RealVector diag = fock::interaction_diagonal(basis, p.U, p.V);
  for (std::int64_t i = 0; i < basis.dim(); ++i)
    if (diag(i) != 0.0)
      trips.push_back(
          {static_cast<int>(i), static_cast<int>(i), Complex(diag(i), 0)});
  const auto A = spectral::to_csr(static_cast<int>(basis.dim()), trips);
  spectral::LanczosOptions opt;
  opt.k = 2;
  const auto sparse = spectral::lanczos_lowest(A, opt);
  CHECK(sparse.eigenvalues(0) ==
        doctest::Approx(dense.eigenvalues(0)).epsilon(1e-10));
  CHECK(sparse.eigenvalues(1) ==
        doctest::Approx(dense.eigenvalues(1)).epsilon(1e-9));
}

TEST_CASE("lanczos: deterministic across repeated runs and policies") {
  ModelParams p;
  p.L = 60;
  p.alpha_y = p.alpha_z = 0.7;
  p.B = 0.2;
  const auto A = wire_csr(p);
  spectral::LanczosOptions opt;
  opt.k = 3;
  const auto a = spectral::lanczos_lowest(A, opt);
  const auto b = spectral::lanczos_lowest(A, opt);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  opt.exec = Exec::serial;
  const auto c = spectral::lanczos_lowest(A, opt);
  CHECK(a.eigenvalues == c.eigenvalues);
  CHECK(a.eigenvectors == c.eigenvectors);
}

TEST_CASE("gibbs_state: Boltzmann weights with ground-energy shift") {
  ModelParams p;
  p.L = 6;
  p.alpha_y = 0.3;
  p.alpha_z = 0.5;
  p.B = 0.4;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const Real T = 0.7;
  const auto state = spectral::gibbs_state(spec, T);
  CHECK(state.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  for (int n = 1; n < state.weights.size(); ++n) {
    const Real expect =
        std::exp(-(spec.eigenvalues(n) - spec.eigenvalues(0)) / T);
    CHECK(state.weights(n) / state.weights(0) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  const Matrix rho = spectral::gibbs_density(state);
  CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-12);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gibbs_state: T = 0 splits weight across the degenerate ground set") {
  ModelParams p;  // B = 0: Kramers doublet
  p.L = 6;
  p.alpha_y = 0.3;
  p.alpha_z = 0.5;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const auto state = spectral::gibbs_state(spec, 0.0);
  CHECK(state.weights(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(state.weights(1) == doctest::Approx(0.5).epsilon(1e-12));
  for (int n = 2; n < state.weights.size(); ++n)
    CHECK(state.weights(n) == 0.0);
}

TEST_CASE("gibbs_state: refuses partial decompositions") {
  spectral::SpectralDecomposition spec;
  spec.eigenvalues = RealVector::LinSpaced(3, 0.0, 2.0);
  spec.eigenvectors = Matrix::Identity(3, 3);
  spec.partial = true;
  CHECK_THROWS_AS(spectral::gibbs_state(spec, 1.0), std::invalid_argument);
}

TEST_CASE("gap: difference of the two lowest levels") {
  ModelParams p;
  p.L = 100;
  p.alpha_y = p.alpha_z = 0.1;
  p.B = 0.01;
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  CHECK(spectral::gap(spec) ==
        doctest::Approx(0.0028657565235574722).epsilon(1e-10));
}
