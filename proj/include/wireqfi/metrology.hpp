#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wireqfi/spectral.hpp"
#include "wireqfi/types.hpp"

namespace wireqfi::metrology {

struct FisherResult {
  Real value = 0.0;        // scalar information
  RealMatrix matrix;       // filled for multi-parameter results
  std::string method;
};

// Finite-difference steps: one for state-overlap stencils, one for
// probability and density-matrix derivatives.
inline constexpr Real kOverlapStep = 1e-4;
inline Real probability_step(Real alpha) {
  return 1e-5 * std::max(1.0, std::abs(alpha));
}
// Truncation floors.
inline constexpr Real kWeightFloor = 1e-14;   // on lambda_m + lambda_n
inline constexpr Real kProbabilityFloor = 1e-12;

enum class ProbeKind { ground, thermal, many_body };

// ---- state-level operations ----

// Pure ground-state QFI from the gauge-invariant perturbation sum
// F = 4 sum_{n>0} |<n|dH|0>|^2 / (E_n - E_0)^2. Requires a full
// decomposition with a nondegenerate ground level.
FisherResult qfi_pure(const spectral::SpectralDecomposition& spec,
                      const Matrix& dH, Exec exec = Exec::parallel);

// Pure-state QFIM over several coupling derivatives.
FisherResult qfim_pure(const spectral::SpectralDecomposition& spec,
                       const std::vector<Matrix>& dHs,
                       Exec exec = Exec::parallel);

// Independent cross-check: F = 8 (1 - |<psi(a)|psi(a+d)>|) / d^2.
Real overlap_qfi(const Vector& psi_minus, const Vector& psi_plus, Real delta);

// Mixed-state QFI, two-index form over the state eigenbasis:
// F = sum_{m,n: l_m + l_n > floor} 2 |<m|drho|n>|^2 / (l_m + l_n).
FisherResult qfi_mixed(const spectral::ThermalState& state, const Matrix& drho,
                       Exec exec = Exec::parallel, Real floor = kWeightFloor);

// Symmetric logarithmic derivative, returned in the original basis.
Matrix sld(const spectral::ThermalState& state, const Matrix& drho,
           Real floor = kWeightFloor);

// Classical Fisher information from an outcome distribution and its
// parameter derivative(s); outcomes with p <= floor are skipped.
FisherResult cfi(const RealVector& p, const RealVector& dp,
                 Real floor = kProbabilityFloor);
FisherResult cfim(const RealVector& p, const std::vector<RealVector>& dp,
                  Real floor = kProbabilityFloor);

// Projective measurement built from an operator eigenbasis; eigenvalues
// within 1e-8 of each other share one projector.
struct ProjectiveMeasurement {
  Matrix basis;                                  // eigenvector columns
  std::vector<std::pair<int, int>> groups;       // [first, last) per outcome
};
ProjectiveMeasurement eigenbasis_measurement(const Matrix& M);
RealVector measure_pure(const ProjectiveMeasurement& meas, const Vector& psi);
RealVector measure_density(const ProjectiveMeasurement& meas,
                           const Matrix& rho);

// Slater-determinant QFI of the N lowest filled orbitals from three
// single-particle decompositions (at alpha and alpha +- delta):
// F = 4 sum_l <d l|(1 - P_filled)|d l>, orbital derivatives by central
// differences with per-orbital phase gauge fixed on the center pivot.
// Throws when a level crossing enters the stencil.
FisherResult slater_qfi(const spectral::SpectralDecomposition& center,
                        const spectral::SpectralDecomposition& minus,
                        const spectral::SpectralDecomposition& plus, int N,
                        Real delta, Exec exec = Exec::parallel);

// ---- probe-level operations on the wire model ----

// dH for a coupling; Coupling::alpha ties alpha_y = alpha_z.
ModelParams shifted(const ModelParams& p, Coupling which, Real delta);

// Single-particle ground-state QFI of H(p).
FisherResult ground_qfi(const ModelParams& p, Coupling which,
                        Exec exec = Exec::parallel);

// Single-particle ground-state QFIM for (alpha_y, alpha_z).
FisherResult ground_qfim(const ModelParams& p, Exec exec = Exec::parallel);

// Slater QFI of the N lowest orbitals of H(p) (p.N filled levels).
FisherResult slater_ground_qfi(const ModelParams& p, Coupling which,
                               Real delta = kOverlapStep,
                               Exec exec = Exec::parallel);

// Sector-ED ground-state QFI (dense path; sector dimension must stay at or
// below the dense threshold).
FisherResult many_body_qfi(const ModelParams& p, Coupling which,
                           Exec exec = Exec::parallel);

// Overlap-route sector QFI with iterative ground states, for sectors past
// the dense threshold.
FisherResult many_body_qfi_overlap(const ModelParams& p, Coupling which,
                                   Real delta = kOverlapStep,
                                   spectral::LanczosOptions opt = {});

// Thermal QFI by central finite difference of the Gibbs state. The three
// decompositions belong to H(alpha) and H(alpha +- delta); weights are
// rebuilt per temperature, so sweeps over T reuse the same spectra.
FisherResult thermal_qfi(const spectral::SpectralDecomposition& center,
                         const spectral::SpectralDecomposition& minus,
                         const spectral::SpectralDecomposition& plus, Real T,
                         Real delta, Exec exec = Exec::parallel,
                         Real floor = kWeightFloor);

// Convenience wrapper: single-particle Gibbs probe for U = V = 0, sector
// Gibbs probe otherwise.
FisherResult thermal_qfi(const ModelParams& p, Coupling which,
                         Exec exec = Exec::parallel);

// CFI of the particle-current eigenbasis measurement for the given probe.
FisherResult current_basis_cfi(const ModelParams& p, Coupling which,
                               ProbeKind probe, Exec exec = Exec::parallel);

// CFI measured in the eigenbasis of the SLD at p (optimal basis).
FisherResult sld_basis_cfi(const ModelParams& p, Coupling which,
                           ProbeKind probe, Exec exec = Exec::parallel);

}  // namespace wireqfi::metrology
