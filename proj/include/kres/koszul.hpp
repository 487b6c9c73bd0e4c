#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kres/ring.hpp"

namespace kres {

// bit i set = variable i+1 in the subset
using Subset = std::uint32_t;

std::vector<std::size_t> subset_members(Subset s);
int subset_size(Subset s);
std::size_t binomial(std::size_t n, std::size_t k);
// sign of e_S ^ e_T, 0 when S and T meet
int wedge_sign(Subset s, Subset t);

struct KoszulElement {
  std::size_t degree = 0;
  std::vector<RingElement> coords;  // one per subset of size degree, lex order

  bool is_zero() const;
  bool operator==(const KoszulElement&) const = default;
};

class KoszulError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class KoszulComplex {
 public:
  explicit KoszulComplex(std::shared_ptr<const QuotientRing> R);

  const QuotientRing& ring() const { return *R_; }
  std::shared_ptr<const QuotientRing> ring_ptr() const { return R_; }
  std::size_t n() const { return n_; }
  std::size_t rank(std::ptrdiff_t i) const;
  const std::vector<Subset>& basis(std::size_t i) const { return basis_.at(i); }
  std::size_t index(Subset s) const { return static_cast<std::size_t>(index_[s]); }

  // d_i : K_i -> K_{i-1}; defined for 0 <= i <= n+1 (the ends are empty maps)
  const RingMatrix& differential(std::size_t i) const;

  KoszulElement zero(std::size_t i) const;
  KoszulElement basis_element(Subset s, const RingElement& c) const;
  KoszulElement add(const KoszulElement& a, const KoszulElement& b) const;
  KoszulElement scale(const KoszulElement& a, Fp s) const;
  KoszulElement multiply(const RingElement& r, const KoszulElement& a) const;
  KoszulElement boundary(const KoszulElement& a) const;
  bool is_cycle(const KoszulElement& a) const { return boundary(a).is_zero(); }
  // degree overflow gives the zero element, or throws when strict
  KoszulElement wedge(const KoszulElement& a, const KoszulElement& b, bool strict = false) const;

  // left multiplication by a (degree j) as a map K_{i-j} -> K_i
  RingMatrix wedge_matrix(const KoszulElement& a, std::size_t i) const;

  // coordinates (subset index, standard monomial) -> subset index * dim R + monomial
  SparseVec flatten(const KoszulElement& a) const;
  KoszulElement unflatten(std::size_t degree, const SparseVec& v) const;

  std::string format(const KoszulElement& a) const;

 private:
  std::shared_ptr<const QuotientRing> R_;
  std::size_t n_;
  std::vector<std::vector<Subset>> basis_;
  std::vector<std::int32_t> index_;
  std::vector<RingMatrix> diff_;
};

RingMatrix koszul_differential(std::size_t i, const QuotientRing& R);

struct CycleEntry {
  std::uint32_t row, col, palette;
  auto operator<=>(const CycleEntry&) const = default;
};

struct PaletteItem {
  KoszulElement element;
  std::string label;
  bool operator==(const PaletteItem&) const = default;
};

class CycleMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// matrix with cycle entries of a fixed degree; entries point into a small palette
class CycleMatrix {
 public:
  CycleMatrix() = default;
  // zero matrix
  CycleMatrix(std::size_t rows, std::size_t cols, std::size_t degree) : rows_(rows), cols_(cols), degree_(degree) {}
  CycleMatrix(const KoszulComplex& K, std::size_t rows, std::size_t cols, std::size_t degree,
              std::vector<PaletteItem> palette, std::vector<CycleEntry> entries);
  // skips the cycle check; negative controls only
  static CycleMatrix unvalidated(std::size_t rows, std::size_t cols, std::size_t degree,
                                 std::vector<PaletteItem> palette, std::vector<CycleEntry> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t degree() const { return degree_; }
  const std::vector<PaletteItem>& palette() const { return palette_; }
  const std::vector<CycleEntry>& entries() const { return entries_; }
  std::optional<std::size_t> at(std::size_t r, std::size_t c) const;
  std::string label_at(std::size_t r, std::size_t c) const;

  // block boundaries for printing
  const std::vector<std::size_t>& row_cuts() const { return row_cuts_; }
  const std::vector<std::size_t>& col_cuts() const { return col_cuts_; }

  bool same_entries(const CycleMatrix& o) const;

  friend CycleMatrix hconcat(const CycleMatrix& a, const CycleMatrix& b);
  friend CycleMatrix vconcat(const CycleMatrix& a, const CycleMatrix& b);
  friend CycleMatrix block_diag(const CycleMatrix& a, const CycleMatrix& b);

 private:
  void normalize();
  std::size_t rows_ = 0, cols_ = 0, degree_ = 0;
  std::vector<PaletteItem> palette_;
  std::vector<CycleEntry> entries_;
  std::vector<std::size_t> row_cuts_, col_cuts_;
};

CycleMatrix hconcat(const CycleMatrix& a, const CycleMatrix& b);
CycleMatrix vconcat(const CycleMatrix& a, const CycleMatrix& b);
CycleMatrix block_diag(const CycleMatrix& a, const CycleMatrix& b);
CycleMatrix repeat_diag(const CycleMatrix& a, std::size_t copies);

// (y_k) -> (sum_k theta(s,k) ^ y_k), K_{i-j}^cols -> K_i^rows
RingMatrix cycle_matrix_action(const CycleMatrix& theta, std::size_t i, const KoszulComplex& K);
// same map, theta repeated block-diagonally, written into a larger matrix
void append_action(RingMatrixBuilder& out, const CycleMatrix& theta, std::size_t i, std::size_t copies,
                   std::size_t row_off, std::size_t col_off, Fp sign, const KoszulComplex& K);
// d^copies written at an offset
void append_differential(RingMatrixBuilder& out, std::size_t i, std::size_t copies, std::size_t row_off,
                         std::size_t col_off, Fp sign, const KoszulComplex& K);

// entrywise product as Koszul elements: (a*b)(r,c) = sum_k a(r,k) ^ b(k,c)
std::vector<std::vector<KoszulElement>> wedge_product(const CycleMatrix& a, const CycleMatrix& b,
                                                      const KoszulComplex& K);

struct ChainMapReport {
  bool passed = true;
  std::vector<std::size_t> degrees;
  std::optional<std::size_t> failed_degree;
  std::optional<std::pair<std::size_t, std::size_t>> failed_entry;
  std::string message;
};

// d_i o theta = (-1)^j theta o d_{i-j} for every i in [lo, hi]
ChainMapReport verify_chain_map(const CycleMatrix& theta, std::size_t lo, std::size_t hi, const KoszulComplex& K);
ChainMapReport verify_chain_map(const CycleMatrix& theta, const KoszulComplex& K);

}  // namespace kres
