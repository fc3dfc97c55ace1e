// Serial vs parallel timings for the hot kernels, plus a determinism check:
// both execution policies must agree bitwise on every output they produce.

#include <chrono>
#include <cstdio>
#include <utility>

#include "wireqfi/fock.hpp"
#include "wireqfi/metrology.hpp"
#include "wireqfi/model.hpp"
#include "wireqfi/parallel.hpp"
#include "wireqfi/spectral.hpp"

using namespace wireqfi;

namespace {

template <typename Fn>
double ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-24s serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
              name, serial, parallel, serial / parallel,
              same ? "bitwise-equal" : "MISMATCH");
}

void bench_lift() {
  fock::SectorBasis basis(8, 4);  // dim 1820
  ModelParams p;
  p.L = 8;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  const Matrix h = model::hamiltonian(p);
  Matrix a, b;
  const double ts = ms([&] { a = fock::lift_one_body(basis, h, Exec::serial); });
  const double tp = ms([&] { b = fock::lift_one_body(basis, h, Exec::parallel); });
  report("lift_one_body", ts, tp, a == b);
}

void bench_matvec() {
  ModelParams p;
  p.L = 10;
  p.N = 5;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  p.U = 2.0;
  fock::SectorBasis basis(p.L, p.N);  // dim 15504
  auto trips = fock::lift_one_body_triplets(basis, model::hamiltonian(p));
  const RealVector diag = fock::interaction_diagonal(basis, p.U, p.V);
  for (int i = 0; i < diag.size(); ++i)
    trips.push_back({i, i, Complex(diag[i], 0.0)});
  const spectral::Csr A = spectral::to_csr(static_cast<int>(basis.dim()),
                                           std::move(trips));
  Vector x = Vector::Ones(A.n).cwiseQuotient(
      Vector::Constant(A.n, std::sqrt(static_cast<Real>(A.n))));
  Vector ys(A.n), yp(A.n);
  const int reps = 50;
  const double ts = ms([&] {
    for (int r = 0; r < reps; ++r) spectral::matvec(A, x, ys, Exec::serial);
  });
  const double tp = ms([&] {
    for (int r = 0; r < reps; ++r) spectral::matvec(A, x, yp, Exec::parallel);
  });
  report("matvec x50", ts, tp, ys == yp);
}

void bench_qfi_mixed() {
  ModelParams p;
  p.L = 200;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  p.T = 0.5;
  const Real delta = metrology::probability_step(0.3);
  const auto spec = spectral::diagonalize(model::hamiltonian(p));
  const auto rho_m = spectral::gibbs_density(spectral::gibbs_state(
      spectral::diagonalize(
          model::hamiltonian(metrology::shifted(p, Coupling::alpha, -delta))),
      p.T));
  const auto rho_p = spectral::gibbs_density(spectral::gibbs_state(
      spectral::diagonalize(
          model::hamiltonian(metrology::shifted(p, Coupling::alpha, delta))),
      p.T));
  const Matrix drho = (rho_p - rho_m) / (2 * delta);
  const auto state = spectral::gibbs_state(spec, p.T);
  Real fs = 0, fp = 0;
  const double ts =
      ms([&] { fs = metrology::qfi_mixed(state, drho, Exec::serial).value; });
  const double tp =
      ms([&] { fp = metrology::qfi_mixed(state, drho, Exec::parallel).value; });
  report("qfi_mixed L=200", ts, tp, fs == fp);
}

void bench_lanczos_vs_dense() {
  ModelParams p;
  p.L = 500;
  p.alpha_y = p.alpha_z = 0.3;
  p.B = 0.05;
  const Matrix H = model::hamiltonian(p);
  spectral::SpectralDecomposition dense, sparse;
  const double td = ms([&] { dense = spectral::diagonalize(H); });
  const spectral::Csr A =
      spectral::to_csr(2 * p.L, model::hamiltonian_triplets(p));
  spectral::LanczosOptions opt;
  opt.k = 4;
  const double tl = ms([&] { sparse = spectral::lanczos_lowest(A, opt); });
  const Real err = std::abs(dense.eigenvalues[0] - sparse.eigenvalues[0]);
  std::printf("%-24s dense  %8.2f ms   lanczos  %8.2f ms   x%.2f   dE0 %.2e\n",
              "eigensolve L=500", td, tl, td / tl, err);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", max_threads());
  bench_lift();
  bench_matvec();
  bench_qfi_mixed();
  bench_lanczos_vs_dense();
  return 0;
}
