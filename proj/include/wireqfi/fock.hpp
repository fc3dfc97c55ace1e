#pragma once

#include <cstdint>
#include <vector>

#include "wireqfi/model.hpp"
#include "wireqfi/types.hpp"

namespace wireqfi::fock {

// Fixed-particle-number sector of the fermionic Fock space over 2L
// spin-orbitals. States are occupation words (bit 2j+s, matching the
// single-particle index), enumerated in increasing numeric order.
class SectorBasis {
 public:
  SectorBasis(int L, int N);

  int L() const { return L_; }
  int N() const { return N_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(states_.size()); }
  const std::vector<std::uint64_t>& states() const { return states_; }
  std::uint64_t state(std::int64_t i) const { return states_[i]; }

  // Position of a word in the enumeration; -1 if absent.
  std::int64_t index_of(std::uint64_t word) const;

 private:
  int L_;
  int N_;
  std::vector<std::uint64_t> states_;
};

// Effective sector cap: WIREQFI_SECTOR_CAP when set, else 200000.
std::int64_t sector_cap();

// C(2L, N) without enumeration, saturating at overflow.
std::int64_t sector_dimension(int L, int N);

// Second-quantized lift of a one-body operator: sum_{p,q} h_{pq} c†_p c_q
// with Jordan-Wigner signs. Column-parallel; deterministic for any thread
// count.
Matrix lift_one_body(const SectorBasis& basis, const Matrix& h,
                     Exec exec = Exec::parallel);

// Sparse lift for sectors past the dense threshold.
std::vector<model::Triplet> lift_one_body_triplets(const SectorBasis& basis,
                                                   const Matrix& h);

// Diagonal of U sum_j n_{j,up} n_{j,down} + V sum_j n_j n_{j+1}.
RealVector interaction_diagonal(const SectorBasis& basis, Real U, Real V,
                                Exec exec = Exec::parallel);

// Dense sector Hamiltonian: lifted one-body part plus interaction diagonal.
Matrix many_body_hamiltonian(const SectorBasis& basis, const ModelParams& p,
                             Exec exec = Exec::parallel);

}  // namespace wireqfi::fock
