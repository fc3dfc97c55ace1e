#pragma once

#include <vector>

#include "wireqfi/model.hpp"
#include "wireqfi/types.hpp"

namespace wireqfi::spectral {

// Sector/single-particle dimensions at or below this are diagonalized
// densely; larger operators go through the iterative extremal path.
inline constexpr int kDenseThreshold = 2000;

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns aligned with eigenvalues
  bool partial = false;    // true when only the lowest k pairs were computed
};

// Dense full decomposition. Throws on non-Hermitian input.
SpectralDecomposition diagonalize(const Matrix& H);

// Compressed sparse rows, Hermitian operator.
struct Csr {
  int n = 0;
  std::vector<int> ptr;
  std::vector<int> col;
  std::vector<Complex> val;
};

// Assemble CSR from triplets (duplicates are summed).
Csr to_csr(int n, std::vector<model::Triplet> triplets);

// y = A x, row-parallel; bitwise deterministic for any thread count.
void matvec(const Csr& A, const Vector& x, Vector& y,
            Exec exec = Exec::parallel);

struct LanczosOptions {
  int k = 8;             // extremal pairs wanted (lowest)
  int max_basis = 0;     // 0: chosen from k
  int max_restarts = 400;
  Real tol = 1e-10;
  unsigned seed = 0x5eedu;  // deterministic start vector
  Exec exec = Exec::parallel;
};

// Thick-restart Lanczos for the lowest k eigenpairs of a Hermitian CSR
// operator. Full reorthogonalization inside the active basis. Returns a
// partial decomposition.
SpectralDecomposition lanczos_lowest(const Csr& A, const LanczosOptions& opt);

// E1 - E0 of a decomposition with at least two levels.
Real gap(const SpectralDecomposition& spec);

struct ThermalState {
  RealVector weights;  // Gibbs probabilities aligned with the basis columns
  Matrix basis;
  Real temperature = 0.0;
};

// Gibbs weights with ground-energy shift. T = 0 puts equal weight on every
// level within 1e-12 * max(1, |E0|) of the ground energy. Refuses partial
// decompositions.
ThermalState gibbs_state(const SpectralDecomposition& spec, Real T);

// rho = V diag(w) V†
Matrix gibbs_density(const ThermalState& state);

}  // namespace wireqfi::spectral
