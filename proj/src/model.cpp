#include "wireqfi/model.hpp"

namespace wireqfi::model {

namespace {

constexpr Complex kI{0.0, 1.0};

// 2x2 bond block acting on (up, down) for the j -> j+1 hop.
void bond_block(Real t, Real ay, Real az, Complex out[2][2]) {
  // -t I + az (-i sigma_y) + ay (i sigma_z)
  out[0][0] = Complex(-t, ay);
  out[0][1] = Complex(-az, 0.0);
  out[1][0] = Complex(az, 0.0);
  out[1][1] = Complex(-t, -ay);
}

void add_bonds(Matrix& H, int L, const Complex blk[2][2]) {
  for (int j = 0; j + 1 < L; ++j)
    for (int s = 0; s < 2; ++s)
      for (int sp = 0; sp < 2; ++sp) {
        H(2 * (j + 1) + s, 2 * j + sp) += blk[s][sp];
        H(2 * j + sp, 2 * (j + 1) + s) += std::conj(blk[s][sp]);
      }
}

}  // namespace

Matrix hamiltonian(const ModelParams& p) {
  p.validate();
  const int n = 2 * p.L;
  Matrix H = Matrix::Zero(n, n);
  Complex blk[2][2];
  bond_block(p.t, p.alpha_y, p.alpha_z, blk);
  add_bonds(H, p.L, blk);
  for (int j = 0; j < p.L; ++j) {
    H(2 * j, 2 * j) += p.B;
    H(2 * j + 1, 2 * j + 1) += -p.B;
  }
  return H;
}

Matrix coupling_derivative(Coupling which, int L) {
  const int n = 2 * L;
  Matrix D = Matrix::Zero(n, n);
  Complex blk[2][2] = {};
  switch (which) {
    case Coupling::alpha_y:
      blk[0][0] = kI;
      blk[1][1] = -kI;
      break;
    case Coupling::alpha_z:
      blk[0][1] = Complex(-1.0, 0.0);
      blk[1][0] = Complex(1.0, 0.0);
      break;
    case Coupling::alpha:
      blk[0][0] = kI;
      blk[1][1] = -kI;
      blk[0][1] = Complex(-1.0, 0.0);
      blk[1][0] = Complex(1.0, 0.0);
      break;
  }
  add_bonds(D, L, blk);
  return D;
}

Matrix current_operator(int L) {
  const int n = 2 * L;
  Matrix J = Matrix::Zero(n, n);
  Complex blk[2][2] = {};
  blk[0][0] = kI;
  blk[1][1] = kI;
  add_bonds(J, L, blk);
  return J;
}

std::vector<Triplet> hamiltonian_triplets(const ModelParams& p) {
  p.validate();
  std::vector<Triplet> out;
  out.reserve(static_cast<std::size_t>(10 * p.L));
  Complex blk[2][2];
  bond_block(p.t, p.alpha_y, p.alpha_z, blk);
  for (int j = 0; j + 1 < p.L; ++j)
    for (int s = 0; s < 2; ++s)
      for (int sp = 0; sp < 2; ++sp) {
        if (blk[s][sp] == Complex{}) continue;
        out.push_back({2 * (j + 1) + s, 2 * j + sp, blk[s][sp]});
        out.push_back({2 * j + sp, 2 * (j + 1) + s, std::conj(blk[s][sp])});
      }
  for (int j = 0; j < p.L; ++j) {
    if (p.B == 0.0) continue;
    out.push_back({2 * j, 2 * j, Complex(p.B, 0.0)});
    out.push_back({2 * j + 1, 2 * j + 1, Complex(-p.B, 0.0)});
  }
  return out;
}

}  // namespace wireqfi::model
