#pragma once

#include <vector>

#include "wireqfi/types.hpp"

namespace wireqfi::model {

// Single-particle basis layout: index 2j + s for site j in [0, L) and spin
// s in {0 = up, 1 = down}. Open chain.

struct Triplet {
  int row;
  int col;
  Complex value;
};

// H = H_0 + H_R + H_Z. Hopping -t on every bond, Rashba bond block
// alpha_z * (-i sigma_y) + alpha_y * (i sigma_z), Zeeman diagonal B sigma_z.
Matrix hamiltonian(const ModelParams& p);

// dH/d(coupling) at fixed geometry. Coupling::alpha returns the sum of the
// alpha_y and alpha_z derivatives (uniform field, both components tied).
Matrix coupling_derivative(Coupling which, int L);

// Lattice particle-current operator: bond block +i on every bond, both spins.
Matrix current_operator(int L);

// Sparse form of hamiltonian() for sizes past the dense threshold.
std::vector<Triplet> hamiltonian_triplets(const ModelParams& p);

}  // namespace wireqfi::model
