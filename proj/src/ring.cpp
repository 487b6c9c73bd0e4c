#include "kres/ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace kres {

Monomial Monomial::var(std::size_t n, std::size_t i) {
  Monomial m = one(n);
  m.exps[i] = 1;
  return m;
}

std::uint32_t Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > o.exps[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) m.exps[i] += o.exps[i];
  return m;
}

bool deglex_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps > b.exps;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (!m.exps[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial Polynomial::term(const Monomial& m, Fp c) {
  Polynomial p(m.nvars());
  if (c) p.terms[m] = c;
  return p;
}

Polynomial add(const Polynomial& a, const Polynomial& b, const PrimeField& F) {
  if (a.nvars != b.nvars) throw RingError("polynomial variable count mismatch");
  Polynomial out = a;
  for (const auto& [m, c] : b.terms) {
    Fp v = F.add(out.terms.count(m) ? out.terms[m] : 0, c);
    if (v) out.terms[m] = v;
    else out.terms.erase(m);
  }
  return out;
}

Polynomial scale(const Polynomial& a, Fp s, const PrimeField& F) {
  Polynomial out(a.nvars);
  if (!s) return out;
  for (const auto& [m, c] : a.terms) out.terms[m] = F.mul(c, s);
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const PrimeField& F) {
  if (a.nvars != b.nvars) throw RingError("polynomial variable count mismatch");
  Polynomial out(a.nvars);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) out = add(out, Polynomial::term(ma * mb, F.mul(ca, cb)), F);
  return out;
}

Fp RingElement::coeff(std::uint32_t i) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), std::make_pair(i, Fp{0}));
  return it != terms.end() && it->first == i ? it->second : 0;
}

QuotientRing::QuotientRing(PrimeField F, std::vector<std::string> vars, std::vector<Monomial> gens)
    : F_(F), vars_(std::move(vars)) {
  const std::size_t n = vars_.size();
  if (n == 0) throw RingError("ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : vars_)
    if (v.empty() || !seen.insert(v).second) throw RingError("variable names must be distinct and nonempty");
  for (const auto& g : gens) {
    if (g.nvars() != n) throw RingError("ideal generator has wrong number of variables");
    if (g.degree() == 0) throw RingError("ideal is the unit ideal");
    if (g.degree() == 1)
      throw RingError("ideal contains the variable " + format_monomial(g, vars_) +
                      "; generators must lie in m^2");
  }
  // minimal generators in deglex order
  std::sort(gens.begin(), gens.end(), deglex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const auto& g : gens) {
    bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& h) { return h.divides(g); });
    if (!redundant) gens_.push_back(g);
  }

  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& g : gens_) {
      bool pure = g.exps[i] > 0 && g.degree() == g.exps[i];
      if (pure) bound[i] = bound[i] ? std::min(bound[i], g.exps[i]) : g.exps[i];
    }
    if (!bound[i])
      throw NonArtinianError("variable " + vars_[i] + " has no pure power in the ideal; ring is not Artinian");
  }

  Monomial cur = Monomial::one(n);
  while (true) {
    if (!in_ideal(cur)) basis_.push_back(cur);
    std::size_t i = 0;
    while (i < n && ++cur.exps[i] == bound[i]) cur.exps[i++] = 0;
    if (i == n) break;
  }
  std::sort(basis_.begin(), basis_.end(), deglex_less);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<std::uint32_t>(i);

  const std::size_t N = basis_.size();
  table_.assign(N * N, -1);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      auto idx = index_of(basis_[a] * basis_[b]);
      if (idx) table_[a * N + b] = static_cast<std::int32_t>(*idx);
    }
  for (std::size_t i = 0; i < n; ++i) var_index_.push_back(*index_of(Monomial::var(n, i)));
}

bool QuotientRing::in_ideal(const Monomial& m) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
}

std::optional<std::uint32_t> QuotientRing::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Polynomial QuotientRing::normal_form(const Polynomial& f) const {
  if (f.nvars != nvars()) throw RingError("polynomial has " + std::to_string(f.nvars) + " variables, ring has " +
                                          std::to_string(nvars()));
  Polynomial out(nvars());
  for (const auto& [m, c] : f.terms)
    if (!in_ideal(m)) out.terms[m] = c;
  return out;
}

RingElement QuotientRing::reduce(const Polynomial& f) const {
  Polynomial nf = normal_form(f);
  RingElement e;
  for (const auto& [m, c] : nf.terms) e.terms.emplace_back(index_.at(m), c);
  std::sort(e.terms.begin(), e.terms.end());
  return e;
}

Polynomial QuotientRing::lift(const RingElement& e) const {
  Polynomial p(nvars());
  for (auto [i, c] : e.terms) p.terms[basis_[i]] = c;
  return p;
}

RingElement QuotientRing::constant(Fp c) const {
  c %= F_.p();
  return c ? RingElement{{{0u, c}}} : RingElement{};
}

RingElement QuotientRing::monomial(const Monomial& m, Fp c) const {
  auto idx = index_of(m);
  c %= F_.p();
  if (!idx || !c) return {};
  return RingElement{{{*idx, c}}};
}

RingElement QuotientRing::add(const RingElement& a, const RingElement& b) const {
  return RingElement{sparse_axpy(a.terms, 1, b.terms, F_)};
}

RingElement QuotientRing::sub(const RingElement& a, const RingElement& b) const {
  return RingElement{sparse_axpy(a.terms, F_.neg(1), b.terms, F_)};
}

RingElement QuotientRing::neg(const RingElement& a) const { return scale(a, F_.neg(1)); }

RingElement QuotientRing::scale(const RingElement& a, Fp s) const {
  RingElement out;
  if (!s) return out;
  for (auto [i, c] : a.terms) out.terms.emplace_back(i, F_.mul(c, s));
  return out;
}

RingElement QuotientRing::mul(const RingElement& a, const RingElement& b) const {
  SparseVec acc;
  acc.reserve(a.terms.size() * b.terms.size());
  for (auto [i, ca] : a.terms)
    for (auto [j, cb] : b.terms) {
      auto k = product(i, j);
      if (k >= 0) acc.emplace_back(static_cast<std::uint32_t>(k), F_.mul(ca, cb));
    }
  std::sort(acc.begin(), acc.end());
  RingElement out;
  for (std::size_t i = 0; i < acc.size();) {
    std::size_t j = i;
    Fp v = 0;
    while (j < acc.size() && acc[j].first == acc[i].first) v = F_.add(v, acc[j++].second);
    if (v) out.terms.emplace_back(acc[i].first, v);
    i = j;
  }
  return out;
}

std::string QuotientRing::format(const RingElement& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [i, c] : a.terms) {
    std::int64_t s = F_.to_signed(c);
    if (first) {
      if (s < 0) os << "-";
    } else {
      os << (s < 0 ? " - " : " + ");
    }
    std::int64_t mag = s < 0 ? -s : s;
    bool unit = basis_[i].degree() == 0;
    if (mag != 1 || unit) os << mag;
    if (!unit) os << (mag != 1 ? "*" : "") << format_monomial(basis_[i], vars_);
    first = false;
  }
  return os.str();
}

RingMatrix RingMatrix::identity(std::size_t n, const QuotientRing& R) {
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].emplace_back(static_cast<std::uint32_t>(i), R.one());
  return m;
}

RingElement RingMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t v) { return e.first < v; });
  return it != col.end() && it->first == r ? it->second : RingElement{};
}

std::size_t RingMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

std::optional<std::pair<std::size_t, std::size_t>> RingMatrix::first_nonzero() const {
  for (std::size_t c = 0; c < cols_; ++c)
    if (!columns_[c].empty()) return std::make_pair(static_cast<std::size_t>(columns_[c].front().first), c);
  return std::nullopt;
}

RingMatrix RingMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  RingMatrix out(nr, nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& [r, e] : columns_[c0 + c])
      if (r >= r0 && r < r0 + nr) out.columns_[c].emplace_back(static_cast<std::uint32_t>(r - r0), e);
  return out;
}

void RingMatrixBuilder::add(std::size_t r, std::size_t c, RingElement e) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("builder entry outside matrix");
  if (e.is_zero()) return;
  entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), std::move(e)});
}

void RingMatrixBuilder::add_block(std::size_t r0, std::size_t c0, const RingMatrix& m, Fp sign,
                                  const QuotientRing& R) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, e] : m.column(c)) add(r0 + r, c0 + c, sign == 1 ? e : R.scale(e, sign));
}

RingMatrix RingMatrixBuilder::build(const QuotientRing& R) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  RingMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size();) {
    std::size_t j = i + 1;
    RingElement acc = std::move(entries_[i].val);
    while (j < entries_.size() && entries_[j].col == entries_[i].col && entries_[j].row == entries_[i].row)
      acc = R.add(acc, entries_[j++].val);
    if (!acc.is_zero()) m.columns_[entries_[i].col].emplace_back(entries_[i].row, std::move(acc));
    i = j;
  }
  entries_.clear();
  return m;
}

RingMatrix multiply(const RingMatrix& a, const RingMatrix& b, const QuotientRing& R) {
  if (a.cols() != b.rows()) throw std::invalid_argument("ring matrix multiply: extent mismatch");
  RingMatrixBuilder out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::map<std::uint32_t, RingElement> acc;
    for (const auto& [k, eb] : b.column(j))
      for (const auto& [r, ea] : a.column(k)) {
        auto& slot = acc[r];
        slot = R.add(slot, R.mul(ea, eb));
      }
    for (auto& [r, e] : acc) out.add(r, j, std::move(e));
  }
  return out.build(R);
}

RingMatrix add(const RingMatrix& a, const RingMatrix& b, const QuotientRing& R) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("ring matrix add: extent mismatch");
  RingMatrixBuilder out(a.rows(), a.cols());
  out.add_block(0, 0, a, 1, R);
  out.add_block(0, 0, b, 1, R);
  return out.build(R);
}

RingMatrix scale(const RingMatrix& a, Fp s, const QuotientRing& R) {
  RingMatrixBuilder out(a.rows(), a.cols());
  out.add_block(0, 0, a, s, R);
  return out.build(R);
}

SparseMatrix flatten(const RingMatrix& m, const QuotientRing& R) {
  const std::size_t N = R.dim();
  const PrimeField& F = R.field();
  SparseMatrix out(m.rows() * N, m.cols() * N);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t b = 0; b < N; ++b) {
      SparseVec col;
      for (const auto& [r, e] : m.column(c))
        for (auto [a, v] : e.terms) {
          auto k = R.product(a, b);
          if (k >= 0) col.emplace_back(static_cast<std::uint32_t>(r * N + static_cast<std::size_t>(k)), v);
        }
      std::sort(col.begin(), col.end());
      SparseVec merged;
      for (std::size_t i = 0; i < col.size();) {
        std::size_t j = i;
        Fp v = 0;
        while (j < col.size() && col[j].first == col[i].first) v = F.add(v, col[j++].second);
        if (v) merged.emplace_back(col[i].first, v);
        i = j;
      }
      out.column(c * N + b) = std::move(merged);
    }
  return out;
}

}  // namespace kres
