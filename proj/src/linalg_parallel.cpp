// OpenMP Gaussian elimination; row updates for one pivot are independent
#include <omp.h>

#include <utility>

#include "kres/linalg.hpp"

namespace kres::linalg::parallel {

namespace {
constexpr std::size_t kMinWork = 1 << 14;
}

Echelon rref(DenseMatrix m, const PrimeField& F, bool full) {
  Echelon out;
  const std::size_t R = m.rows, C = m.cols;
  const std::uint32_t p = F.p();
  const bool go_parallel = R * C >= kMinWork;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m.at(piv, c) == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t k = 0; k < C; ++k) std::swap(m.at(piv, k), m.at(r, k));
    Fp* pr = m.row(r);
    const Fp s = F.inv(pr[c]);
    for (std::size_t k = c; k < C; ++k) pr[k] = F.mul(pr[k], s);

    const std::size_t start = full ? 0 : r + 1;
    const long long lo = static_cast<long long>(start), hi = static_cast<long long>(R);
#pragma omp parallel for schedule(static) if (go_parallel)
    for (long long i = lo; i < hi; ++i) {
      if (static_cast<std::size_t>(i) == r) continue;
      Fp* ri = m.row(static_cast<std::size_t>(i));
      const Fp f = ri[c];
      if (!f) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t k = c; k < C; ++k) ri[k] = static_cast<Fp>((ri[k] + nf * pr[k]) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(DenseMatrix m, const PrimeField& F) { return rref(std::move(m), F, false).pivots.size(); }

}  // namespace kres::linalg::parallel
