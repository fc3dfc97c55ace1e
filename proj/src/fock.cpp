#include "wireqfi/fock.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wireqfi/parallel.hpp"

namespace wireqfi::fock {

namespace {

// sign of moving an operator past the occupied modes below `pos`
inline int jw_sign(std::uint64_t word, int pos) {
  const std::uint64_t below = word & ((std::uint64_t{1} << pos) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

std::int64_t sector_cap() {
  if (const char* env = std::getenv("WIREQFI_SECTOR_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::int64_t>(v);
  }
  return 200000;
}

std::int64_t sector_dimension(int L, int N) {
  const int M = 2 * L;
  if (N < 0 || N > M) return 0;
  const int k = std::min(N, M - N);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    if (c > (std::int64_t{1} << 56) / (M - k + i)) return std::int64_t{1} << 62;
    c = c * (M - k + i) / i;
  }
  return c;
}

SectorBasis::SectorBasis(int L, int N) : L_(L), N_(N) {
  if (L < 1 || 2 * L > 64)
    throw std::invalid_argument("sector basis requires 1 <= L <= 32");
  if (N < 0 || N > 2 * L)
    throw std::invalid_argument("N must lie in [0, 2L]");
  const std::int64_t d = sector_dimension(L, N);
  const std::int64_t cap = sector_cap();
  if (d > cap)
    throw std::runtime_error("sector dimension " + std::to_string(d) +
                             " exceeds cap " + std::to_string(cap) +
                             " (set WIREQFI_SECTOR_CAP to raise)");
  states_.reserve(static_cast<std::size_t>(d));
  if (N == 0) {
    states_.push_back(0);
    return;
  }
  // lowest word with N bits, then next-permutation stepping
  std::uint64_t w = (N == 64) ? ~std::uint64_t{0}
                              : ((std::uint64_t{1} << N) - 1);
  const std::uint64_t last = w << (2 * L - N);
  while (true) {
    states_.push_back(w);
    if (w == last) break;
    const std::uint64_t c = w & static_cast<std::uint64_t>(-static_cast<std::int64_t>(w));
    const std::uint64_t r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
}

std::int64_t SectorBasis::index_of(std::uint64_t word) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), word);
  if (it == states_.end() || *it != word) return -1;
  return static_cast<std::int64_t>(it - states_.begin());
}

Matrix lift_one_body(const SectorBasis& basis, const Matrix& h, Exec exec) {
  const int M = 2 * basis.L();
  if (h.rows() != M || h.cols() != M)
    throw std::invalid_argument("one-body operator has wrong dimension");
  // nonzero entries of h, fixed order
  std::vector<std::pair<int, int>> nz;
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q)
      if (h(p, q) != Complex{}) nz.emplace_back(p, q);

  const std::int64_t d = basis.dim();
  Matrix out = Matrix::Zero(d, d);
  // column i collects <w'| h_pq c†_p c_q |w_i>; columns are independent
  parallel_for(d, exec, [&](std::int64_t i) {
    const std::uint64_t w = basis.state(i);
    for (const auto& [p, q] : nz) {
      if (!((w >> q) & 1)) continue;
      const std::uint64_t w1 = w & ~(std::uint64_t{1} << q);
      if ((w1 >> p) & 1) continue;
      const std::uint64_t w2 = w1 | (std::uint64_t{1} << p);
      const int sign = jw_sign(w, q) * jw_sign(w1, p);
      const std::int64_t row = basis.index_of(w2);
      out(row, i) += static_cast<Real>(sign) * h(p, q);
    }
  });
  return out;
}

std::vector<model::Triplet> lift_one_body_triplets(const SectorBasis& basis,
                                                   const Matrix& h) {
  const int M = 2 * basis.L();
  if (h.rows() != M || h.cols() != M)
    throw std::invalid_argument("one-body operator has wrong dimension");
  std::vector<std::pair<int, int>> nz;
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q)
      if (h(p, q) != Complex{}) nz.emplace_back(p, q);

  std::vector<model::Triplet> out;
  const std::int64_t d = basis.dim();
  for (std::int64_t i = 0; i < d; ++i) {
    const std::uint64_t w = basis.state(i);
    for (const auto& [p, q] : nz) {
      if (!((w >> q) & 1)) continue;
      const std::uint64_t w1 = w & ~(std::uint64_t{1} << q);
      if ((w1 >> p) & 1) continue;
      const std::uint64_t w2 = w1 | (std::uint64_t{1} << p);
      const int sign = jw_sign(w, q) * jw_sign(w1, p);
      out.push_back({static_cast<int>(basis.index_of(w2)),
                     static_cast<int>(i),
                     static_cast<Real>(sign) * h(p, q)});
    }
  }
  return out;
}

RealVector interaction_diagonal(const SectorBasis& basis, Real U, Real V,
                                Exec exec) {
  const int L = basis.L();
  const std::int64_t d = basis.dim();
  RealVector diag(d);
  parallel_for(d, exec, [&](std::int64_t i) {
    const std::uint64_t w = basis.state(i);
    Real e = 0.0;
    for (int j = 0; j < L; ++j) {
      const int nu = static_cast<int>((w >> (2 * j)) & 1);
      const int nd = static_cast<int>((w >> (2 * j + 1)) & 1);
      e += U * static_cast<Real>(nu * nd);
      if (j + 1 < L) {
        const int mu = static_cast<int>((w >> (2 * j + 2)) & 1);
        const int md = static_cast<int>((w >> (2 * j + 3)) & 1);
        e += V * static_cast<Real>((nu + nd) * (mu + md));
      }
    }
    diag(i) = e;
  });
  return diag;
}

Matrix many_body_hamiltonian(const SectorBasis& basis, const ModelParams& p,
                             Exec exec) {
  Matrix H = lift_one_body(basis, model::hamiltonian(p), exec);
  const RealVector diag = interaction_diagonal(basis, p.U, p.V, exec);
  for (std::int64_t i = 0; i < basis.dim(); ++i)
    H(i, i) += diag(i);
  return H;
}

}  // namespace wireqfi::fock
