// reference Gaussian elimination over F_p, single thread
#include "kres/linalg.hpp"

#include <utility>

namespace kres::linalg::serial {

namespace {

void scale_row(Fp* r, std::size_t from, std::size_t n, Fp s, const PrimeField& F) {
  for (std::size_t c = from; c < n; ++c) r[c] = F.mul(r[c], s);
}

// dst -= f * src on [from, n)
void sub_row(Fp* dst, const Fp* src, std::size_t from, std::size_t n, Fp f, std::uint32_t p) {
  const std::uint64_t nf = p - f;
  for (std::size_t c = from; c < n; ++c)
    dst[c] = static_cast<Fp>((dst[c] + nf * src[c]) % p);
}

}  // namespace

Echelon rref(DenseMatrix m, const PrimeField& F, bool full) {
  Echelon out;
  const std::size_t R = m.rows, C = m.cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m.at(piv, c) == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t k = 0; k < C; ++k) std::swap(m.at(piv, k), m.at(r, k));
    scale_row(m.row(r), c, C, F.inv(m.at(r, c)), F);
    const std::size_t start = full ? 0 : r + 1;
    for (std::size_t i = start; i < R; ++i) {
      if (i == r) continue;
      Fp f = m.at(i, c);
      if (f) sub_row(m.row(i), m.row(r), c, C, f, F.p());
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(DenseMatrix m, const PrimeField& F) { return rref(std::move(m), F, false).pivots.size(); }

}  // namespace kres::linalg::serial
