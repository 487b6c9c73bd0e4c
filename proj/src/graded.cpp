#include "kres/builder.hpp"

#include <numeric>

namespace kres {

DenseMatrix class_action(const CycleMatrix& theta, std::size_t q, const HomologyAlgebra& H) {
  const std::size_t t = q + theta.degree();
  const std::size_t aq = H.rank(q), at = t <= H.codepth() ? H.rank(t) : 0;
  DenseMatrix out(theta.rows() * at, theta.cols() * aq);
  if (at == 0 || aq == 0) return out;
  const KoszulComplex& K = H.koszul();
  std::vector<DenseMatrix> blocks;
  for (const auto& p : theta.palette()) {
    DenseMatrix b(at, aq);
    for (std::size_t y = 0; y < aq; ++y) {
      auto cls = H.class_of(K.wedge(p.element, H.representatives(q)[y]));
      for (std::size_t x = 0; x < at; ++x) b.at(x, y) = cls[x];
    }
    blocks.push_back(std::move(b));
  }
  for (const auto& e : theta.entries()) {
    const DenseMatrix& b = blocks[e.palette];
    for (std::size_t x = 0; x < at; ++x)
      for (std::size_t y = 0; y < aq; ++y) out.at(e.row * at + x, e.col * aq + y) = b.at(x, y);
  }
  return out;
}

namespace {

using Sel = std::vector<std::size_t>;

Sel range(std::size_t lo, std::size_t hi) {
  Sel s(hi > lo ? hi - lo : 0);
  std::iota(s.begin(), s.end(), lo);
  return s;
}

// M : V^cols -> W^rows (per-copy dims aq, at); keep coordinates sq of V and st of W
DenseMatrix restrict_map(const DenseMatrix& M, std::size_t rows, std::size_t cols, std::size_t aq, std::size_t at,
                         const Sel& sq, const Sel& st, const std::string& what) {
  DenseMatrix out(rows * st.size(), cols * sq.size());
  std::vector<char> keep(at, 0);
  for (auto x : st) keep[x] = 1;
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t yi = 0; yi < sq.size(); ++yi) {
      std::size_t col = c * aq + sq[yi];
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t x = 0; x < at; ++x) {
          Fp v = M.at(r * at + x, col);
          if (!keep[x]) {
            if (v) throw AssemblyError(what + ": image leaves the chosen summand");
            continue;
          }
        }
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t xi = 0; xi < st.size(); ++xi)
          out.at(r * st.size() + xi, c * sq.size() + yi) = M.at(r * at + st[xi], col);
    }
  return out;
}

DenseMatrix stack(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols != bottom.cols) throw AssemblyError("vertical stack with mismatched widths");
  DenseMatrix out(top.rows + bottom.rows, top.cols);
  std::copy(top.data.begin(), top.data.end(), out.data.begin());
  std::copy(bottom.data.begin(), bottom.data.end(), out.data.begin() + top.data.size());
  return out;
}

DenseMatrix side(const DenseMatrix& left, const DenseMatrix& right) {
  if (left.rows != right.rows) throw AssemblyError("horizontal stack with mismatched heights");
  DenseMatrix out(left.rows, left.cols + right.cols);
  for (std::size_t r = 0; r < left.rows; ++r) {
    std::copy(left.row(r), left.row(r) + left.cols, out.row(r));
    std::copy(right.row(r), right.row(r) + right.cols, out.row(r) + left.cols);
  }
  return out;
}

BigInt dimB(const SequencePack& P, long k, long p) {
  if (p == k) return P.b_at(k);
  if (p == k - 1) return 3 * P.b_at(k - 1) + P.b_at(k - 3);
  if (p == k - 2) return 3 * P.b_at(k - 2);
  return 0;
}

BigInt dimC(const SequencePack& P, int j, long p) {
  BigInt m = j == 1 ? BigInt(P.a1 - 3) : j == 2 ? BigInt(P.a2 - 3) : BigInt(P.a3);
  return p == 0 || p == 1 ? m : BigInt(0);
}

}  // namespace

GradedComplexes graded_A_complexes(std::size_t kB_max, std::size_t kA_max, const ClassCertificate& cert,
                                   AlphaFamily& fam) {
  if (!cert.passed || !cert.adapted) throw AssemblyError("graded complexes need a certified class T basis");
  const HomologyAlgebra& H = *cert.adapted;
  const SequencePack& P = fam.pack();
  const std::size_t a0 = H.rank(0), a1 = H.rank(1), a2 = H.rank(2), a3 = H.rank(3);
  if (a0 != 1 || a1 != static_cast<std::size_t>(P.a1) || a2 != static_cast<std::size_t>(P.a2) ||
      a3 != static_cast<std::size_t>(P.a3))
    throw AssemblyError("homology ranks disagree with the sequence tables");
  const Sel sel0 = {0}, selB = {0, 1, 2};
  GradedComplexes G;
  G.field = H.koszul().ring().field();

  for (std::size_t k = 1; k <= kB_max; ++k) {
    const long kk = static_cast<long>(k);
    FiniteComplex C;
    C.name = "B_" + std::to_string(k);
    C.positions = {static_cast<int>(k), static_cast<int>(k) - 1, static_cast<int>(k) - 2};
    const std::size_t bk = to_size(P.b_at(kk)), bk1 = to_size(P.b_at(kk - 1)), bk2 = to_size(P.b_at(kk - 2)),
                      bk3 = to_size(P.b_at(kk - 3));
    C.dims = {bk, 3 * bk1 + bk3, 3 * bk2};
    const auto& bt = fam.beta(k);
    DenseMatrix m0 = restrict_map(class_action(bt, 0, H), bt.rows(), bt.cols(), a0, a1, sel0, selB, C.name);
    C.maps.push_back(stack(m0, DenseMatrix(bk3, bk)));
    const auto& b1 = fam.beta(k - 1);
    const auto& bp = fam.beta_prime(k - 1);
    DenseMatrix l = restrict_map(class_action(b1, 1, H), b1.rows(), b1.cols(), a1, a2, selB, selB, C.name);
    DenseMatrix r = restrict_map(class_action(bp, 0, H), bp.rows(), bp.cols(), a0, a2, sel0, selB, C.name);
    C.maps.push_back(side(l, r));
    G.B.push_back(std::move(C));
  }

  for (int j = 1; j <= 3; ++j) {
    FiniteComplex C;
    C.name = "C_" + std::to_string(j);
    C.positions = {1, 0};
    const auto& g = fam.gamma(j);
    Sel sc = j == 1 ? range(3, a1) : j == 2 ? range(3, a2) : range(0, a3);
    std::size_t at = j == 1 ? a1 : j == 2 ? a2 : a3;
    C.dims = {g.cols(), sc.size()};
    C.maps.push_back(restrict_map(class_action(g, 0, H), g.rows(), g.cols(), a0, at, sel0, sc, C.name));
    G.C.push_back(std::move(C));
  }

  for (std::size_t k = 1; k <= kA_max; ++k) {
    const long kk = static_cast<long>(k);
    FiniteComplex C;
    C.name = "A_" + std::to_string(k);
    C.positions = {static_cast<int>(k), static_cast<int>(k) - 1, static_cast<int>(k) - 2, static_cast<int>(k) - 3};
    const std::size_t l0 = to_size(P.ell_at(kk)), l1 = to_size(P.ell_at(kk - 1)), l2 = to_size(P.ell_at(kk - 2)),
                      l3 = to_size(P.ell_at(kk - 3)), lp1 = to_size(P.ellp_at(kk - 1)),
                      lpp2 = to_size(P.ellpp_at(kk - 2));
    C.dims = {l0, a1 * l1 + lp1, a2 * l2 + lpp2, a3 * l3};
    C.maps.push_back(stack(class_action(fam.alpha(kk, kk), 0, H), DenseMatrix(lp1, l0)));
    DenseMatrix top = side(class_action(fam.alpha(kk - 1, kk - 1), 1, H), class_action(fam.alpha(kk - 1, kk), 0, H));
    C.maps.push_back(stack(top, DenseMatrix(lpp2, top.cols)));
    C.maps.push_back(
        side(class_action(fam.alpha(kk - 2, kk - 2), 2, H), class_action(fam.alpha(kk - 2, kk), 0, H)));
    for (std::size_t t = 0; t < C.maps.size(); ++t)
      if (C.maps[t].cols != C.dims[t] || C.maps[t].rows != C.dims[t + 1])
        throw AssemblyError(C.name + ": map " + std::to_string(t) + " has the wrong shape");

    CheckReport rep;
    for (std::size_t t = 0; t < C.positions.size(); ++t) {
      long p = C.positions[t];
      BigInt sum = 0;
      for (long i = 0; i < kk; ++i) sum += P.d_at(i) * dimB(P, kk - i, p - i);
      for (int j = 1; j <= 3; ++j) sum += P.ell_at(kk - j) * dimC(P, j, p - (kk - j));
      rep.add(C.name + " position " + std::to_string(p), BigInt(C.dims[t]), sum);
    }
    G.decomposition.push_back(std::move(rep));
    G.A.push_back(std::move(C));
  }
  return G;
}

}  // namespace kres
