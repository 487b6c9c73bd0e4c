#include "kres/koszul.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace kres {

std::vector<std::size_t> subset_members(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

int subset_size(Subset s) { return std::popcount(s); }

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int wedge_sign(Subset s, Subset t) {
  if (s & t) return 0;
  int inv = 0;
  for (std::size_t j : subset_members(t)) {
    Subset above = s & ~((Subset{2} << j) - 1u);
    inv += std::popcount(above);
  }
  return inv % 2 ? -1 : 1;
}

bool KoszulElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const RingElement& e) { return e.is_zero(); });
}

namespace {

void combos(std::size_t n, std::size_t k, std::size_t start, Subset cur, std::vector<Subset>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + k <= n; ++i) combos(n, k - 1, i + 1, cur | (Subset{1} << i), out);
}

}  // namespace

KoszulComplex::KoszulComplex(std::shared_ptr<const QuotientRing> R) : R_(std::move(R)), n_(R_->nvars()) {
  if (n_ > 20) throw KoszulError("too many variables for the Koszul complex");
  index_.assign(std::size_t{1} << n_, -1);
  basis_.resize(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i) {
    combos(n_, i, 0, 0, basis_[i]);
    for (std::size_t k = 0; k < basis_[i].size(); ++k) index_[basis_[i][k]] = static_cast<std::int32_t>(k);
  }
  for (std::size_t i = 0; i <= n_ + 1; ++i) diff_.push_back(koszul_differential(i, *R_));
}

std::size_t KoszulComplex::rank(std::ptrdiff_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) > n_) return 0;
  return basis_[static_cast<std::size_t>(i)].size();
}

const RingMatrix& KoszulComplex::differential(std::size_t i) const {
  if (i > n_ + 1) throw KoszulError("differential degree out of range");
  return diff_[i];
}

RingMatrix koszul_differential(std::size_t i, const QuotientRing& R) {
  const std::size_t n = R.nvars();
  if (i > n + 1) throw KoszulError("differential degree out of range");
  std::vector<Subset> src, dst;
  if (i <= n) combos(n, i, 0, 0, src);
  if (i >= 1) combos(n, i - 1, 0, 0, dst);
  std::map<Subset, std::size_t> dst_index;
  for (std::size_t k = 0; k < dst.size(); ++k) dst_index[dst[k]] = k;
  RingMatrixBuilder b(dst.size(), src.size());
  const PrimeField& F = R.field();
  for (std::size_t c = 0; c < src.size(); ++c) {
    auto mem = subset_members(src[c]);
    for (std::size_t j = 0; j < mem.size(); ++j) {
      Subset rest = src[c] & ~(Subset{1} << mem[j]);
      RingElement x = R.var(mem[j]);
      b.add(dst_index[rest], c, j % 2 == 0 ? x : R.scale(x, F.neg(1)));
    }
  }
  return b.build(R);
}

KoszulElement KoszulComplex::zero(std::size_t i) const {
  if (i > n_) throw KoszulError("Koszul degree out of range");
  return KoszulElement{i, std::vector<RingElement>(rank(static_cast<std::ptrdiff_t>(i)))};
}

KoszulElement KoszulComplex::basis_element(Subset s, const RingElement& c) const {
  if (s >= (Subset{1} << n_)) throw KoszulError("subset outside variable range");
  KoszulElement e = zero(static_cast<std::size_t>(subset_size(s)));
  e.coords[index(s)] = c;
  return e;
}

KoszulElement KoszulComplex::add(const KoszulElement& a, const KoszulElement& b) const {
  if (a.degree != b.degree) throw KoszulError("adding Koszul elements of different degrees");
  KoszulElement out = a;
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] = R_->add(a.coords[k], b.coords[k]);
  return out;
}

KoszulElement KoszulComplex::scale(const KoszulElement& a, Fp s) const {
  KoszulElement out = a;
  for (auto& c : out.coords) c = R_->scale(c, s);
  return out;
}

KoszulElement KoszulComplex::multiply(const RingElement& r, const KoszulElement& a) const {
  KoszulElement out = a;
  for (auto& c : out.coords) c = R_->mul(r, c);
  return out;
}

KoszulElement KoszulComplex::boundary(const KoszulElement& a) const {
  if (a.degree == 0) return zero(0);
  KoszulElement out = zero(a.degree - 1);
  for (std::size_t c = 0; c < a.coords.size(); ++c) {
    if (a.coords[c].is_zero()) continue;
    for (const auto& [r, e] : diff_[a.degree].column(c)) out.coords[r] = R_->add(out.coords[r], R_->mul(e, a.coords[c]));
  }
  return out;
}

KoszulElement KoszulComplex::wedge(const KoszulElement& a, const KoszulElement& b, bool strict) const {
  if (a.degree + b.degree > n_) {
    if (strict) throw KoszulError("wedge degree exceeds the number of variables");
    return zero(n_);
  }
  KoszulElement out = zero(a.degree + b.degree);
  const auto& sa = basis_[a.degree];
  const auto& sb = basis_[b.degree];
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (a.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (b.coords[j].is_zero()) continue;
      int s = wedge_sign(sa[i], sb[j]);
      if (!s) continue;
      RingElement p = R_->mul(a.coords[i], b.coords[j]);
      if (s < 0) p = R_->neg(p);
      auto& slot = out.coords[index(sa[i] | sb[j])];
      slot = R_->add(slot, p);
    }
  }
  return out;
}

RingMatrix KoszulComplex::wedge_matrix(const KoszulElement& a, std::size_t i) const {
  if (i < a.degree) throw KoszulError("target degree below entry degree");
  const std::size_t src_deg = i - a.degree;
  const std::size_t rows = rank(static_cast<std::ptrdiff_t>(i));
  const std::size_t cols = rank(static_cast<std::ptrdiff_t>(src_deg));
  RingMatrixBuilder b(rows, cols);
  if (i > n_) return b.build(*R_);
  const auto& sa = basis_[a.degree];
  const auto& st = basis_[src_deg];
  for (std::size_t c = 0; c < st.size(); ++c)
    for (std::size_t k = 0; k < sa.size(); ++k) {
      if (a.coords[k].is_zero()) continue;
      int s = wedge_sign(sa[k], st[c]);
      if (!s) continue;
      b.add(index(sa[k] | st[c]), c, s > 0 ? a.coords[k] : R_->neg(a.coords[k]));
    }
  return b.build(*R_);
}

SparseVec KoszulComplex::flatten(const KoszulElement& a) const {
  const std::size_t N = R_->dim();
  SparseVec v;
  for (std::size_t k = 0; k < a.coords.size(); ++k)
    for (auto [m, c] : a.coords[k].terms) v.emplace_back(static_cast<std::uint32_t>(k * N + m), c);
  return v;
}

KoszulElement KoszulComplex::unflatten(std::size_t degree, const SparseVec& v) const {
  const std::size_t N = R_->dim();
  KoszulElement e = zero(degree);
  for (auto [idx, c] : v) e.coords[idx / N].terms.emplace_back(static_cast<std::uint32_t>(idx % N), c);
  for (auto& c : e.coords) std::sort(c.terms.begin(), c.terms.end());
  return e;
}

std::string KoszulComplex::format(const KoszulElement& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    const auto& c = a.coords[k];
    if (c.is_zero()) continue;
    std::string cs = R_->format(c);
    std::string e;
    if (a.degree > 0) {
      e = "e[";
      auto mem = subset_members(basis_[a.degree][k]);
      for (std::size_t t = 0; t < mem.size(); ++t) e += (t ? "," : "") + std::to_string(mem[t] + 1);
      e += "]";
    }
    bool negative = false;
    if (c.terms.size() == 1 && cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    if (c.terms.size() > 1) cs = "(" + cs + ")";
    if (e.empty()) os << cs;
    else if (cs == "1") os << e;
    else os << cs << "*" << e;
    first = false;
  }
  return first ? "0" : os.str();
}

// ---- CycleMatrix ----

CycleMatrix::CycleMatrix(const KoszulComplex& K, std::size_t rows, std::size_t cols, std::size_t degree,
                         std::vector<PaletteItem> palette, std::vector<CycleEntry> entries)
    : rows_(rows), cols_(cols), degree_(degree), palette_(std::move(palette)), entries_(std::move(entries)) {
  for (const auto& p : palette_) {
    if (p.element.degree != degree_)
      throw CycleMatrixError("entry " + p.label + " has degree " + std::to_string(p.element.degree) + ", expected " +
                             std::to_string(degree_));
    if (p.element.coords.size() != K.rank(static_cast<std::ptrdiff_t>(degree_)))
      throw CycleMatrixError("entry " + p.label + " has the wrong number of coordinates");
    if (!K.is_cycle(p.element)) throw CycleMatrixError("entry " + p.label + " is not a cycle");
  }
  normalize();
}

CycleMatrix CycleMatrix::unvalidated(std::size_t rows, std::size_t cols, std::size_t degree,
                                     std::vector<PaletteItem> palette, std::vector<CycleEntry> entries) {
  CycleMatrix m(rows, cols, degree);
  m.palette_ = std::move(palette);
  m.entries_ = std::move(entries);
  m.normalize();
  return m;
}

void CycleMatrix::normalize() {
  std::erase_if(entries_, [&](const CycleEntry& e) { return palette_.at(e.palette).element.is_zero(); });
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.row >= rows_ || e.col >= cols_) throw CycleMatrixError("entry outside matrix extents");
    if (i && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
      throw CycleMatrixError("duplicate matrix entry");
  }
  auto clean = [](std::vector<std::size_t>& cuts, std::size_t ext) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::erase_if(cuts, [&](std::size_t c) { return c == 0 || c >= ext; });
  };
  clean(row_cuts_, rows_);
  clean(col_cuts_, cols_);
}

std::optional<std::size_t> CycleMatrix::at(std::size_t r, std::size_t c) const {
  CycleEntry key{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key);
  if (it != entries_.end() && it->row == r && it->col == c) return it->palette;
  return std::nullopt;
}

std::string CycleMatrix::label_at(std::size_t r, std::size_t c) const {
  auto p = at(r, c);
  return p ? palette_[*p].label : "0";
}

bool CycleMatrix::same_entries(const CycleMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || degree_ != o.degree_ || entries_.size() != o.entries_.size())
    return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& a = entries_[i];
    const auto& b = o.entries_[i];
    if (a.row != b.row || a.col != b.col) return false;
    if (palette_[a.palette].element != o.palette_[b.palette].element) return false;
  }
  return true;
}

namespace {

// palette of b appended to a's, reusing equal items
std::vector<std::uint32_t> merge_palette(std::vector<PaletteItem>& into, const std::vector<PaletteItem>& from) {
  std::vector<std::uint32_t> remap;
  for (const auto& p : from) {
    auto it = std::find(into.begin(), into.end(), p);
    if (it == into.end()) {
      remap.push_back(static_cast<std::uint32_t>(into.size()));
      into.push_back(p);
    } else {
      remap.push_back(static_cast<std::uint32_t>(it - into.begin()));
    }
  }
  return remap;
}

void check_degree(const CycleMatrix& a, const CycleMatrix& b) {
  if (a.degree() != b.degree()) throw CycleMatrixError("concatenating cycle matrices of different degrees");
}

}  // namespace

CycleMatrix hconcat(const CycleMatrix& a, const CycleMatrix& b) {
  check_degree(a, b);
  if (a.rows_ != b.rows_) throw CycleMatrixError("hconcat: row extents differ");
  CycleMatrix m(a.rows_, a.cols_ + b.cols_, a.degree_);
  m.palette_ = a.palette_;
  m.entries_ = a.entries_;
  auto remap = merge_palette(m.palette_, b.palette_);
  for (auto e : b.entries_) m.entries_.push_back({e.row, e.col + static_cast<std::uint32_t>(a.cols_), remap[e.palette]});
  m.row_cuts_ = a.row_cuts_;
  m.row_cuts_.insert(m.row_cuts_.end(), b.row_cuts_.begin(), b.row_cuts_.end());
  m.col_cuts_ = a.col_cuts_;
  m.col_cuts_.push_back(a.cols_);
  for (auto c : b.col_cuts_) m.col_cuts_.push_back(c + a.cols_);
  m.normalize();
  return m;
}

CycleMatrix vconcat(const CycleMatrix& a, const CycleMatrix& b) {
  check_degree(a, b);
  if (a.cols_ != b.cols_) throw CycleMatrixError("vconcat: column extents differ");
  CycleMatrix m(a.rows_ + b.rows_, a.cols_, a.degree_);
  m.palette_ = a.palette_;
  m.entries_ = a.entries_;
  auto remap = merge_palette(m.palette_, b.palette_);
  for (auto e : b.entries_) m.entries_.push_back({e.row + static_cast<std::uint32_t>(a.rows_), e.col, remap[e.palette]});
  m.col_cuts_ = a.col_cuts_;
  m.col_cuts_.insert(m.col_cuts_.end(), b.col_cuts_.begin(), b.col_cuts_.end());
  m.row_cuts_ = a.row_cuts_;
  m.row_cuts_.push_back(a.rows_);
  for (auto c : b.row_cuts_) m.row_cuts_.push_back(c + a.rows_);
  m.normalize();
  return m;
}

CycleMatrix block_diag(const CycleMatrix& a, const CycleMatrix& b) {
  check_degree(a, b);
  CycleMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_, a.degree_);
  m.palette_ = a.palette_;
  m.entries_ = a.entries_;
  auto remap = merge_palette(m.palette_, b.palette_);
  for (auto e : b.entries_)
    m.entries_.push_back({e.row + static_cast<std::uint32_t>(a.rows_), e.col + static_cast<std::uint32_t>(a.cols_),
                          remap[e.palette]});
  m.row_cuts_ = a.row_cuts_;
  m.row_cuts_.push_back(a.rows_);
  for (auto c : b.row_cuts_) m.row_cuts_.push_back(c + a.rows_);
  m.col_cuts_ = a.col_cuts_;
  m.col_cuts_.push_back(a.cols_);
  for (auto c : b.col_cuts_) m.col_cuts_.push_back(c + a.cols_);
  m.normalize();
  return m;
}

CycleMatrix repeat_diag(const CycleMatrix& a, std::size_t copies) {
  std::vector<CycleEntry> entries;
  entries.reserve(a.entries().size() * copies);
  for (std::size_t t = 0; t < copies; ++t)
    for (auto e : a.entries())
      entries.push_back({static_cast<std::uint32_t>(e.row + t * a.rows()),
                         static_cast<std::uint32_t>(e.col + t * a.cols()), e.palette});
  CycleMatrix m = CycleMatrix::unvalidated(a.rows() * copies, a.cols() * copies, a.degree(), a.palette(),
                                           std::move(entries));
  // palette already validated in a
  return copies == 1 ? a : m;
}

RingMatrix cycle_matrix_action(const CycleMatrix& theta, std::size_t i, const KoszulComplex& K) {
  if (i < theta.degree()) throw KoszulError("action target degree below entry degree");
  const std::size_t ri = K.rank(static_cast<std::ptrdiff_t>(i));
  const std::size_t rs = K.rank(static_cast<std::ptrdiff_t>(i - theta.degree()));
  RingMatrixBuilder b(theta.rows() * ri, theta.cols() * rs);
  append_action(b, theta, i, 1, 0, 0, 1, K);
  return b.build(K.ring());
}

void append_action(RingMatrixBuilder& out, const CycleMatrix& theta, std::size_t i, std::size_t copies,
                   std::size_t row_off, std::size_t col_off, Fp sign, const KoszulComplex& K) {
  if (i < theta.degree()) throw KoszulError("action target degree below entry degree");
  if (i > K.n()) return;
  const std::size_t ri = K.rank(static_cast<std::ptrdiff_t>(i));
  const std::size_t rs = K.rank(static_cast<std::ptrdiff_t>(i - theta.degree()));
  std::vector<std::optional<RingMatrix>> w(theta.palette().size());
  for (const auto& e : theta.entries())
    if (!w[e.palette]) w[e.palette] = K.wedge_matrix(theta.palette()[e.palette].element, i);
  for (std::size_t t = 0; t < copies; ++t)
    for (const auto& e : theta.entries())
      out.add_block(row_off + (t * theta.rows() + e.row) * ri, col_off + (t * theta.cols() + e.col) * rs, *w[e.palette],
                    sign, K.ring());
}

void append_differential(RingMatrixBuilder& out, std::size_t i, std::size_t copies, std::size_t row_off,
                         std::size_t col_off, Fp sign, const KoszulComplex& K) {
  if (i == 0 || i > K.n()) return;
  const auto& d = K.differential(i);
  for (std::size_t t = 0; t < copies; ++t) out.add_block(row_off + t * d.rows(), col_off + t * d.cols(), d, sign, K.ring());
}

std::vector<std::vector<KoszulElement>> wedge_product(const CycleMatrix& a, const CycleMatrix& b,
                                                      const KoszulComplex& K) {
  if (a.cols() != b.rows()) throw CycleMatrixError("wedge product: extent mismatch");
  const std::size_t deg = std::min(a.degree() + b.degree(), K.n());
  std::vector<std::vector<KoszulElement>> out(a.rows(), std::vector<KoszulElement>(b.cols(), K.zero(deg)));
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) {
      if (ea.col != eb.row) continue;
      auto& slot = out[ea.row][eb.col];
      slot = K.add(slot, K.wedge(a.palette()[ea.palette].element, b.palette()[eb.palette].element));
    }
  return out;
}

ChainMapReport verify_chain_map(const CycleMatrix& theta, std::size_t lo, std::size_t hi, const KoszulComplex& K) {
  ChainMapReport rep;
  const QuotientRing& R = K.ring();
  const std::size_t j = theta.degree();
  const std::size_t u = theta.rows(), v = theta.cols();
  const Fp sign = j % 2 ? R.field().neg(1) : 1;
  for (std::size_t i = std::max(lo, j); i <= std::min(hi, K.n()); ++i) {
    rep.degrees.push_back(i);
    const std::size_t r_im1 = K.rank(static_cast<std::ptrdiff_t>(i) - 1);
    const std::size_t r_src = K.rank(static_cast<std::ptrdiff_t>(i - j));
    const std::size_t r_src1 = K.rank(static_cast<std::ptrdiff_t>(i - j) - 1);
    const std::size_t r_i = K.rank(static_cast<std::ptrdiff_t>(i));

    RingMatrixBuilder d_tgt(u * r_im1, u * r_i);
    append_differential(d_tgt, i, u, 0, 0, 1, K);
    RingMatrix lhs = multiply(d_tgt.build(R), cycle_matrix_action(theta, i, K), R);

    RingMatrix rhs(u * r_im1, v * r_src);
    if (i >= 1 && i - 1 >= j && i - j >= 1) {
      RingMatrixBuilder d_src(v * r_src1, v * r_src);
      append_differential(d_src, i - j, v, 0, 0, 1, K);
      rhs = multiply(cycle_matrix_action(theta, i - 1, K), d_src.build(R), R);
    }
    RingMatrix diff = add(lhs, scale(rhs, R.field().neg(sign), R), R);
    if (auto pos = diff.first_nonzero()) {
      rep.passed = false;
      rep.failed_degree = i;
      rep.failed_entry = std::make_pair(pos->first / std::max<std::size_t>(r_im1, 1),
                                        pos->second / std::max<std::size_t>(r_src, 1));
      rep.message = "chain map identity fails in degree " + std::to_string(i) + " at theta entry (" +
                    std::to_string(rep.failed_entry->first) + "," + std::to_string(rep.failed_entry->second) + ")";
      return rep;
    }
  }
  return rep;
}

ChainMapReport verify_chain_map(const CycleMatrix& theta, const KoszulComplex& K) {
  return verify_chain_map(theta, theta.degree(), K.n(), K);
}

}  // namespace kres
