#include "kres/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace kres {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& F) {
  if (a.cols != b.rows) throw std::invalid_argument("dense multiply: extent mismatch");
  DenseMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      Fp v = a.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) = F.add(out.at(i, j), F.mul(v, b.at(k, j)));
    }
  return out;
}

SparseVec sparse_axpy(const SparseVec& x, Fp a, const SparseVec& y, const PrimeField& F) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      Fp v = F.mul(a, y[j].second);
      if (v) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      Fp v = F.add(x[i].second, F.mul(a, y[j].second));
      if (v) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t,
                                         const PrimeField& F) {
  SparseMatrix m(rows, cols);
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    Fp acc = 0;
    while (j < t.size() && t[j].col == t[i].col && t[j].row == t[i].row) acc = F.add(acc, t[j++].val);
    if (t[i].row >= rows || t[i].col >= cols) throw std::out_of_range("triplet outside matrix");
    if (acc) m.columns_[t[i].col].emplace_back(t[i].row, acc);
    i = j;
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d) {
  SparseMatrix m(d.rows, d.cols);
  for (std::size_t c = 0; c < d.cols; ++c)
    for (std::size_t r = 0; r < d.rows; ++r)
      if (d.at(r, c)) m.columns_[c].emplace_back(static_cast<std::uint32_t>(r), d.at(r, c));
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (auto [r, v] : columns_[c]) d.at(r, c) = v;
  return d;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& F) {
  if (a.cols() != b.rows()) throw std::invalid_argument("sparse multiply: extent mismatch");
  SparseMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    SparseVec acc;
    for (auto [k, v] : b.column(j)) acc = sparse_axpy(acc, v, a.column(k), F);
    out.column(j) = std::move(acc);
  }
  return out;
}

std::size_t rank(const DenseMatrix& m, const PrimeField& F, Backend b) {
  return b == Backend::Serial ? linalg::serial::rank(m, F) : linalg::parallel::rank(m, F);
}

std::vector<std::vector<Fp>> kernel_basis(const DenseMatrix& m, const PrimeField& F, Backend b) {
  Echelon e = b == Backend::Serial ? linalg::serial::rref(m, F) : linalg::parallel::rref(m, F);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Fp>> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fp> v(m.cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = F.neg(e.reduced.at(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

DenseMatrix densify(const SparseMatrix& m, const Component& comp) {
  std::vector<std::int64_t> local(m.rows(), -1);
  for (std::size_t i = 0; i < comp.rows.size(); ++i) local[comp.rows[i]] = static_cast<std::int64_t>(i);
  DenseMatrix d(comp.rows.size(), comp.cols.size());
  for (std::size_t j = 0; j < comp.cols.size(); ++j)
    for (auto [r, v] : m.column(comp.cols[j])) d.at(static_cast<std::size_t>(local[r]), j) = v;
  return d;
}

}  // namespace

std::vector<Component> components(const SparseMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  UnionFind uf(R + C);
  for (std::size_t c = 0; c < C; ++c)
    for (auto [r, v] : m.column(c)) uf.unite(static_cast<std::uint32_t>(R + c), r);
  std::vector<std::int64_t> comp_of_root(R + C, -1);
  std::vector<Component> out;
  for (std::size_t c = 0; c < C; ++c) {
    auto root = uf.find(static_cast<std::uint32_t>(R + c));
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(comp_of_root[root])].cols.push_back(static_cast<std::uint32_t>(c));
  }
  for (std::size_t r = 0; r < R; ++r) {
    auto root = uf.find(static_cast<std::uint32_t>(r));
    if (comp_of_root[root] >= 0) out[static_cast<std::size_t>(comp_of_root[root])].rows.push_back(static_cast<std::uint32_t>(r));
  }
  return out;
}

std::size_t rank(const SparseMatrix& m, const PrimeField& F, Backend b) {
  auto comps = components(m);
  const long long n = static_cast<long long>(comps.size());
  std::size_t total = 0;
  if (b == Backend::Serial) {
    for (const auto& c : comps)
      if (!c.rows.empty()) total += linalg::serial::rank(densify(m, c), F);
    return total;
  }
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (long long i = 0; i < n; ++i) {
    const auto& c = comps[static_cast<std::size_t>(i)];
    if (!c.rows.empty()) total += linalg::serial::rank(densify(m, c), F);
  }
  return total;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const PrimeField& F, Backend b) {
  auto comps = components(m);
  std::vector<std::vector<SparseVec>> parts(comps.size());
  auto work = [&](std::size_t i) {
    const auto& c = comps[i];
    auto ker = kernel_basis(densify(m, c), F, Backend::Serial);
    for (auto& v : ker) {
      SparseVec s;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) s.emplace_back(c.cols[j], v[j]);
      std::sort(s.begin(), s.end());
      parts[i].push_back(std::move(s));
    }
  };
  const long long n = static_cast<long long>(comps.size());
  if (b == Backend::Serial) {
    for (std::size_t i = 0; i < comps.size(); ++i) work(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  }
  std::vector<SparseVec> out;
  for (auto& p : parts)
    for (auto& v : p) out.push_back(std::move(v));
  return out;
}

LinearSolver::LinearSolver(const DenseMatrix& a, const PrimeField& F) : F_(F), m_(a.rows), n_(a.cols) {
  DenseMatrix aug(m_, n_ + m_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n_ + i) = 1;
  }
  Echelon e = linalg::serial::rref(std::move(aug), F);
  for (auto c : e.pivots)
    if (c < n_) pivots_.push_back(c);
  transform_ = DenseMatrix(m_, m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) transform_.at(i, j) = e.reduced.at(i, n_ + j);
}

std::optional<std::vector<Fp>> LinearSolver::solve(const std::vector<Fp>& b) const {
  if (b.size() != m_) throw std::invalid_argument("solve: rhs length mismatch");
  std::vector<Fp> c(m_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    Fp acc = 0;
    const Fp* row = transform_.row(i);
    for (std::size_t j = 0; j < m_; ++j)
      if (b[j]) acc = F_.add(acc, F_.mul(row[j], b[j]));
    c[i] = acc;
  }
  for (std::size_t i = pivots_.size(); i < m_; ++i)
    if (c[i]) return std::nullopt;
  std::vector<Fp> x(n_, 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = c[i];
  return x;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = lead_.find(v[pos].first);
    if (it == lead_.end()) {
      ++pos;
      continue;
    }
    // entries before pos are untouched since rows start at their lead
    v = sparse_axpy(v, F_.neg(v[pos].second), rows_[it->second], F_);
  }
  return v;
}

bool EchelonBasis::insert(SparseVec v) {
  SparseVec r = reduce(std::move(v));
  if (r.empty()) return false;
  Fp s = F_.inv(r.front().second);
  for (auto& e : r) e.second = F_.mul(e.second, s);
  lead_[r.front().first] = rows_.size();
  rows_.push_back(std::move(r));
  return true;
}

}  // namespace kres
