#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wireqfi {

using Real = double;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Which coupling the probe estimates. `alpha` is the uniform Rashba field:
// alpha_y and alpha_z are tied to one value and the derivative shifts both.
enum class Coupling { alpha, alpha_y, alpha_z };

enum class Boundary { open };

struct ModelParams {
  Real t = 1.0;
  Real alpha_y = 0.0;
  Real alpha_z = 0.0;
  Real B = 0.0;
  Real U = 0.0;   // on-site opposite-spin repulsion
  Real V = 0.0;   // nearest-neighbour density-density coupling
  Real T = 0.0;   // temperature (k_B = 1)
  int L = 2;      // number of sites; single-particle dimension is 2L
  int N = 1;      // particles in the Fock sector (half filling: N = L)
  Boundary boundary = Boundary::open;

  void validate() const {
    if (L < 2) throw std::invalid_argument("L >= 2 required");
    if (t <= 0) throw std::invalid_argument("t > 0 required");
    if (T < 0) throw std::invalid_argument("T >= 0 required");
    if (N < 0 || N > 2 * L)
      throw std::invalid_argument("N must lie in [0, 2L]");
  }
};

// Execution policy for the parallel kernels. `serial` runs the identical
// blocked algorithm without OpenMP, so both policies produce bitwise-equal
// results; it exists for tests and benchmarks.
enum class Exec { serial, parallel };

}  // namespace wireqfi
