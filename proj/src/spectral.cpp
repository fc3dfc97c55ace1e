#include "wireqfi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>

#include "wireqfi/parallel.hpp"

namespace wireqfi::spectral {

namespace {

void require_hermitian(const Matrix& H) {
  const Real scale = std::max(1e-300, H.cwiseAbs().maxCoeff());
  const Real dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * scale)
    throw std::invalid_argument("operator is not Hermitian");
}

}  // namespace

SpectralDecomposition diagonalize(const Matrix& H) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("square matrix required");
  require_hermitian(H);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.partial = false;
  return out;
}

Csr to_csr(int n, std::vector<model::Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(),
            [](const model::Triplet& a, const model::Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  Csr A;
  A.n = n;
  A.ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i + 1;
    Complex v = triplets[i].value;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      v += triplets[j].value;
      ++j;
    }
    if (v != Complex{}) {
      A.col.push_back(triplets[i].col);
      A.val.push_back(v);
      ++A.ptr[static_cast<std::size_t>(triplets[i].row) + 1];
    }
    i = j;
  }
  for (int r = 0; r < n; ++r) A.ptr[r + 1] += A.ptr[r];
  return A;
}

void matvec(const Csr& A, const Vector& x, Vector& y, Exec exec) {
  if (x.size() != A.n)
    throw std::invalid_argument("matvec dimension mismatch");
  y.resize(A.n);
  parallel_for(A.n, exec, [&](std::int64_t r) {
    Complex acc{};
    for (int k = A.ptr[r]; k < A.ptr[r + 1]; ++k)
      acc += A.val[k] * x(A.col[k]);
    y(r) = acc;
  });
}

// Lanczos with full projection inside the active window: every new direction
// is orthogonalized (twice) against all current basis columns and the
// projected operator S = Q†AQ is kept as a small real symmetric matrix. On a
// restart the lowest Ritz pairs are locked, which turns S into an arrowhead
// that the next sweep extends. The start vector is seeded, matvecs are
// row-parallel, and the combination order is fixed, so results do not depend
// on the thread count.
SpectralDecomposition lanczos_lowest(const Csr& A, const LanczosOptions& opt) {
  const int n = A.n;
  const int k = opt.k;
  if (k < 1 || k >= n) throw std::invalid_argument("lanczos: need 1 <= k < dim");
  const int m = opt.max_basis > 0 ? std::min(opt.max_basis, n)
                                  : std::min(std::max(2 * k + 16, 40), n);
  if (m <= k + 2) throw std::invalid_argument("lanczos: basis too small for k");
  const int keep = std::min(k + 8, m - 2);

  std::mt19937 rng(opt.seed);
  std::normal_distribution<Real> gauss(0.0, 1.0);
  const auto fresh = [&](Vector& v) {
    v.resize(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  };

  Matrix Q(n, m);
  RealMatrix S = RealMatrix::Zero(m, m);
  Vector w(n), tmp(n);

  fresh(tmp);
  Q.col(0) = tmp / tmp.norm();
  int base = 0;  // columns already locked by the previous restart

  for (int sweep = 0; sweep <= opt.max_restarts; ++sweep) {
    Real beta_last = 0.0;
    for (int j = base; j < m; ++j) {
      matvec(A, Q.col(j), w, opt.exec);
      Eigen::VectorXcd c = Q.leftCols(j + 1).adjoint() * w;
      w.noalias() -= Q.leftCols(j + 1) * c;
      const Eigen::VectorXcd c2 = Q.leftCols(j + 1).adjoint() * w;
      w.noalias() -= Q.leftCols(j + 1) * c2;
      c += c2;
      for (int i = 0; i <= j; ++i) {
        S(i, j) = std::real(c(i));
        S(j, i) = S(i, j);
      }
      const Real beta = w.norm();
      if (j + 1 < m) {
        if (beta > 1e-13) {
          Q.col(j + 1) = w / beta;
          S(j, j + 1) = S(j + 1, j) = beta;
        } else {
          // invariant subspace: continue with a fresh orthogonal direction
          fresh(tmp);
          tmp -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * tmp).eval();
          tmp -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * tmp).eval();
          Q.col(j + 1) = tmp / tmp.norm();
          S(j, j + 1) = S(j + 1, j) = 0.0;
        }
      } else {
        beta_last = beta;
        if (beta > 1e-300) w /= beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<RealMatrix> small(S);
    const RealVector theta = small.eigenvalues();
    const RealMatrix Y = small.eigenvectors();

    bool converged = true;
    for (int i = 0; i < k; ++i) {
      const Real res = beta_last * std::abs(Y(m - 1, i));
      if (res > opt.tol * std::max(1.0, std::abs(theta(i)))) {
        converged = false;
        break;
      }
    }
    if (converged || sweep == opt.max_restarts) {
      if (!converged)
        throw std::runtime_error("lanczos failed to converge within restart budget");
      SpectralDecomposition out;
      out.eigenvalues = theta.head(k);
      out.eigenvectors = Q * Y.leftCols(k);
      out.partial = true;
      return out;
    }

    // thick restart: lock the `keep` lowest Ritz vectors plus the residual
    Matrix Qn(n, m);
    Qn.leftCols(keep) = Q * Y.leftCols(keep);
    if (beta_last > 1e-13) {
      Qn.col(keep) = w;
    } else {
      fresh(tmp);
      tmp -= Qn.leftCols(keep) * (Qn.leftCols(keep).adjoint() * tmp).eval();
      tmp -= Qn.leftCols(keep) * (Qn.leftCols(keep).adjoint() * tmp).eval();
      Qn.col(keep) = tmp / tmp.norm();
    }
    Q.swap(Qn);
    S.setZero();
    for (int i = 0; i < keep; ++i) S(i, i) = theta(i);
    // the coupling row S(i, keep) is recomputed by the projection at j = keep
    base = keep;
  }
  throw std::runtime_error("lanczos: unreachable");
}

Real gap(const SpectralDecomposition& spec) {
  if (spec.eigenvalues.size() < 2)
    throw std::invalid_argument("gap requires at least two levels");
  return spec.eigenvalues(1) - spec.eigenvalues(0);
}

ThermalState gibbs_state(const SpectralDecomposition& spec, Real T) {
  if (spec.partial)
    throw std::invalid_argument("gibbs_state refuses partial decompositions");
  if (T < 0) throw std::invalid_argument("T >= 0 required");
  const auto& E = spec.eigenvalues;
  const std::int64_t d = E.size();
  ThermalState st;
  st.basis = spec.eigenvectors;
  st.temperature = T;
  st.weights.resize(d);
  if (T == 0.0) {
    const Real thr = 1e-12 * std::max(1.0, std::abs(E(0)));
    std::int64_t g = 0;
    while (g < d && E(g) - E(0) <= thr) ++g;
    if (d > g && E(g) - E(0) < 10 * thr)
      std::cerr << "[wireqfi] warning: ground gap " << (E(g) - E(0))
                << " is within 10x of the degeneracy threshold\n";
    for (std::int64_t i = 0; i < d; ++i)
      st.weights(i) = i < g ? 1.0 / static_cast<Real>(g) : 0.0;
    return st;
  }
  Real Z = 0.0;
  for (std::int64_t i = 0; i < d; ++i) {
    st.weights(i) = std::exp(-(E(i) - E(0)) / T);
    Z += st.weights(i);
  }
  st.weights /= Z;
  return st;
}

Matrix gibbs_density(const ThermalState& state) {
  return state.basis * state.weights.asDiagonal() * state.basis.adjoint();
}

}  // namespace wireqfi::spectral
