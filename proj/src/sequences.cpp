#include "kres/sequences.hpp"

#include <algorithm>

namespace kres {

std::string to_string(ClassMode m) { return m == ClassMode::T ? "T" : "CI"; }

BigInt big_binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

BigInt at(const std::vector<BigInt>& v, long k) {
  if (k < 0 || static_cast<std::size_t>(k) >= v.size()) return 0;
  return v[static_cast<std::size_t>(k)];
}

}  // namespace

BigInt SequencePack::b_at(long k) const { return at(b, k); }
BigInt SequencePack::ell_at(long k) const { return at(ell, k); }
BigInt SequencePack::d_at(long k) const { return at(d, k); }
BigInt SequencePack::ellp_at(long k) const { return at(ellp, k); }
BigInt SequencePack::ellpp_at(long k) const { return at(ellpp, k); }

BigInt SequencePack::ell_kr(long k, long r) const {
  if (r == k) return ell_at(k);
  if (r == k + 1) return ellp_at(k);
  if (r == k + 2) return ellpp_at(k);
  return 0;
}

SequencePack ci_tables(long c, std::size_t k_max) {
  if (c < 1) throw SequenceError("codepth must be positive");
  SequencePack p;
  p.mode = ClassMode::CI;
  p.c = c;
  p.a1 = c;
  p.k_max = k_max;
  for (std::size_t k = 0; k <= k_max; ++k) p.b.push_back(big_binomial(static_cast<long>(k) + c - 1, c - 1));
  return p;
}

SequencePack sequence_tables(long c, long a1, long a2, long a3, std::size_t k_max) {
  if (c != 3) throw SequenceError("class T has codepth 3");
  if (a1 < 3) throw SequenceError("class T needs a1 >= 3 (a1 - 3 = " + std::to_string(a1 - 3) + ")");
  if (a2 < 3) throw SequenceError("class T needs a2 >= 3");
  if (a3 < 0) throw SequenceError("a3 must be non-negative");
  SequencePack p = ci_tables(c, k_max);
  p.mode = ClassMode::T;
  p.a1 = a1;
  p.a2 = a2;
  p.a3 = a3;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const long kk = static_cast<long>(k);
    p.d.push_back(k == 0 ? BigInt(1) : BigInt(a1 - 3) * p.ell[k - 1]);
    BigInt l = 0;
    for (std::size_t i = 0; i <= k; ++i) l += p.b[k - i] * p.d[i];
    p.ell.push_back(l);
    p.ellp.push_back(k == 0 ? BigInt(0) : p.ell_at(kk - 2) + BigInt(a2 - 3) * p.ell[k - 1]);
    p.ellpp.push_back(k == 0 ? BigInt(0) : BigInt(a3) * p.ell[k - 1]);
  }
  return p;
}

void CheckReport::add(std::string name, const BigInt& expected, const BigInt& actual) {
  bool ok = expected == actual;
  items.push_back({std::move(name), expected, actual, ok});
  passed = passed && ok;
}

CheckReport closed_form_check(const SequencePack& p) {
  if (p.mode != ClassMode::T) throw SequenceError("closed forms are for class T tables");
  if (p.k_max < 3) throw SequenceError("closed form check needs k_max >= 3");
  CheckReport r;
  const BigInt a1 = p.a1, a2 = p.a2, a3 = p.a3;
  r.add("l_2 = a1^2 - 3", a1 * a1 - 3, p.ell[2]);
  r.add("l_3 = a1^3 - 6a1 + 1", a1 * a1 * a1 - 6 * a1 + 1, p.ell[3]);
  r.add("l'_2 = a1a2 - 3a1 + 1", a1 * a2 - 3 * a1 + 1, p.ellp[2]);
  r.add("l''_2 = a1a3", a1 * a3, p.ellpp[2]);
  r.add("d_3 = (a1-3)(a1^2-3)", (a1 - 3) * (a1 * a1 - 3), p.d[3]);
  r.add("l'_3 = a1^2a2 - 3a1^2 - 3a2 + a1 + 9", a1 * a1 * a2 - 3 * a1 * a1 - 3 * a2 + a1 + 9, p.ellp[3]);
  r.add("l''_3 = a1^2a3 - 3a3", a1 * a1 * a3 - 3 * a3, p.ellpp[3]);
  return r;
}

// ---- tree ----

int TreeMonomial::deg1() const {
  int s = 0;
  for (auto [k, r] : factors) s += k;
  return s;
}

int TreeMonomial::deg2() const {
  int s = 0;
  for (auto [k, r] : factors) s += r;
  return s;
}

BigInt TreeMonomial::deg3(const SequencePack& pack) const {
  BigInt p = 1;
  for (auto [k, r] : factors) p *= pack.ell_kr(k, r);
  return p;
}

std::string TreeMonomial::to_string() const {
  if (factors.empty()) return "1";
  std::string s;
  for (auto [k, r] : factors) s += "X_{" + std::to_string(k) + "," + std::to_string(r) + "}";
  return s;
}

std::vector<TreeMonomial> tree_children(const TreeMonomial& m) {
  int j = 0;
  std::vector<std::pair<int, int>> rest = m.factors;
  if (!m.factors.empty() && m.factors.front().first == m.factors.front().second) {
    j = m.factors.front().first;
    rest.erase(rest.begin());
  }
  std::vector<TreeMonomial> out;
  for (int r = j + 1; r <= j + 3; ++r) {
    TreeMonomial c;
    c.factors.emplace_back(j + 1, r);
    c.factors.insert(c.factors.end(), rest.begin(), rest.end());
    out.push_back(std::move(c));
  }
  return out;
}

TreeArrow tree_parent(const TreeMonomial& m) {
  if (m.factors.empty()) throw SequenceError("the root has no parent");
  TreeArrow a;
  a.i = m.factors.front().first;
  a.r = m.factors.front().second;
  a.cofactor.factors.assign(m.factors.begin() + 1, m.factors.end());
  a.parent = a.cofactor;
  if (a.i >= 2) a.parent.factors.insert(a.parent.factors.begin(), {a.i - 1, a.i - 1});
  return a;
}

std::vector<TreeMonomial> tree_layer(std::size_t k) {
  std::vector<TreeMonomial> layer{TreeMonomial{}};
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<TreeMonomial> next;
    next.reserve(layer.size() * 3);
    for (const auto& m : layer)
      for (auto& c : tree_children(m)) next.push_back(std::move(c));
    layer = std::move(next);
  }
  return layer;
}

BigInt u_closed_form(int k, int s, const SequencePack& p) {
  auto l = [&](long i) { return p.ell_at(i); };
  auto lp = [&](long i) { return p.ellp_at(i); };
  auto lpp = [&](long i) { return p.ellpp_at(i); };
  if (s < k || s > 3 * k) return 0;
  switch (k) {
    case 0:
      return 1;
    case 1:
      return p.ell_kr(1, s);
    case 2:
      switch (s) {
        case 2: return l(2);
        case 3: return lp(2) + l(1) * lp(1);
        case 4: return lpp(2) + lp(1) * lp(1) + l(1) * lpp(1);
        case 5: return 2 * lp(1) * lpp(1);
        case 6: return lpp(1) * lpp(1);
      }
      break;
    case 3:
      switch (s) {
        case 3: return l(3);
        case 4: return lp(3) + l(1) * lp(2) + l(2) * lp(1);
        case 5: return lpp(3) + l(1) * lp(1) * lp(1) + l(1) * lpp(2) + 2 * lp(1) * lp(2) + l(2) * lpp(1);
        case 6: return 2 * l(1) * lp(1) * lpp(1) + 2 * lp(1) * lpp(2) + 2 * lpp(1) * lp(2) + lp(1) * lp(1) * lp(1);
        case 7: return 3 * lp(1) * lp(1) * lpp(1) + 2 * lpp(1) * lpp(2) + l(1) * lpp(1) * lpp(1);
        case 8: return 3 * lp(1) * lpp(1) * lpp(1);
        case 9: return lpp(1) * lpp(1) * lpp(1);
      }
      break;
  }
  throw SequenceError("no closed form for u_{" + std::to_string(k) + "," + std::to_string(s) + "}");
}

UTable u_table(std::size_t k_max, std::size_t s_max, const SequencePack& pack) {
  if (pack.mode != ClassMode::T) throw SequenceError("u table needs class T tables");
  if (k_max > pack.k_max) throw SequenceError("u table beyond the sequence tables");
  UTable u(k_max + 1, std::vector<BigInt>(s_max + 1, 0));
  for (std::size_t k = 0; k <= k_max; ++k)
    for (const auto& m : tree_layer(k)) {
      auto s = static_cast<std::size_t>(m.deg2());
      if (s <= s_max) u[k][s] += m.deg3(pack);
    }
  for (std::size_t k = 0; k <= std::min<std::size_t>(k_max, 3); ++k)
    for (std::size_t s = 0; s <= s_max; ++s) {
      BigInt closed = u_closed_form(static_cast<int>(k), static_cast<int>(s), pack);
      if (closed != u[k][s])
        throw SequenceError("u_{" + std::to_string(k) + "," + std::to_string(s) + "}: tree gives " + u[k][s].str() +
                            ", closed form gives " + closed.str());
    }
  return u;
}

// ---- series ----

PowerSeries::PowerSeries(std::size_t order, std::vector<BigInt> coeffs) : order_(order), c_(std::move(coeffs)) {
  c_.resize(order + 1, 0);
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  PowerSeries r(std::min(order_, o.order_), {});
  for (std::size_t k = 0; k <= r.order_; ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  PowerSeries r(std::min(order_, o.order_), {});
  for (std::size_t k = 0; k <= r.order_; ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  PowerSeries r(std::min(order_, o.order_), {});
  for (std::size_t i = 0; i <= r.order_; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= r.order_; ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

PowerSeries PowerSeries::reciprocal() const {
  if (c_[0] != 1 && c_[0] != -1) throw SequenceError("reciprocal needs constant term +-1");
  PowerSeries r(order_, {});
  const BigInt u = c_[0];
  r.c_[0] = u;
  for (std::size_t k = 1; k <= order_; ++k) {
    BigInt acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -u * acc;
  }
  return r;
}

PowerSeries PowerSeries::pow(unsigned e) const {
  PowerSeries r = one(order_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

BivariateSeries BivariateSeries::one(std::size_t order) {
  BivariateSeries s(order);
  s.c_[0] = {1};
  return s;
}

BigInt BivariateSeries::coeff(std::size_t k, std::size_t s) const {
  if (k > order_ || s >= c_[k].size()) return 0;
  return c_[k][s];
}

void BivariateSeries::set(std::size_t k, std::size_t s, const BigInt& v) {
  if (k > order_) return;
  if (c_[k].size() <= s) c_[k].resize(s + 1, 0);
  c_[k][s] = v;
}

BivariateSeries BivariateSeries::operator+(const BivariateSeries& o) const {
  BivariateSeries r(std::min(order_, o.order_));
  for (std::size_t k = 0; k <= r.order_; ++k) {
    std::size_t len = std::max(c_[k].size(), o.c_[k].size());
    for (std::size_t s = 0; s < len; ++s) r.set(k, s, coeff(k, s) + o.coeff(k, s));
  }
  return r;
}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& o) const {
  BivariateSeries r(std::min(order_, o.order_));
  for (std::size_t i = 0; i <= r.order_; ++i)
    for (std::size_t j = 0; i + j <= r.order_; ++j) {
      const auto& a = c_[i];
      const auto& b = o.c_[j];
      if (a.empty() || b.empty()) continue;
      auto& dst = r.c_[i + j];
      if (dst.size() < a.size() + b.size() - 1) dst.resize(a.size() + b.size() - 1, 0);
      for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t) dst[s + t] += a[s] * b[t];
    }
  return r;
}

BivariateSeries BivariateSeries::reciprocal() const {
  BigInt u = coeff(0, 0);
  for (std::size_t s = 1; s < c_[0].size(); ++s)
    if (c_[0][s] != 0) throw SequenceError("reciprocal needs a constant t^0 part");
  if (u != 1 && u != -1) throw SequenceError("reciprocal needs constant term +-1");
  BivariateSeries r(order_);
  r.c_[0] = {u};
  for (std::size_t k = 1; k <= order_; ++k) {
    std::vector<BigInt> acc;
    for (std::size_t j = 1; j <= k; ++j) {
      const auto& a = c_[j];
      const auto& b = r.c_[k - j];
      if (a.empty() || b.empty()) continue;
      if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1, 0);
      for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t) acc[s + t] += a[s] * b[t];
    }
    for (auto& v : acc) v = -u * v;
    r.c_[k] = std::move(acc);
  }
  return r;
}

PowerSeries BivariateSeries::diagonal_sub() const {
  PowerSeries r(order_, {});
  for (std::size_t k = 0; k <= order_; ++k)
    for (std::size_t s = 0; s < c_[k].size() && k + s <= order_; ++s) r[k + s] += c_[k][s];
  return r;
}

PowerSeries BivariateSeries::at_z_one() const {
  PowerSeries r(order_, {});
  for (std::size_t k = 0; k <= order_; ++k)
    for (const auto& v : c_[k]) r[k] += v;
  return r;
}

bool BivariateSeries::operator==(const BivariateSeries& o) const {
  if (order_ != o.order_) return false;
  for (std::size_t k = 0; k <= order_; ++k) {
    std::size_t len = std::max(c_[k].size(), o.c_[k].size());
    for (std::size_t s = 0; s < len; ++s)
      if (coeff(k, s) != o.coeff(k, s)) return false;
  }
  return true;
}

namespace {

PowerSeries one_plus_t_pow(long n, std::size_t order) { return PowerSeries(order, {1, 1}).pow(static_cast<unsigned>(n)); }

}  // namespace

PoincarePair poincare_T(long a1, long a2, long a3, long n, std::size_t order) {
  if (order < 1) throw SequenceError("series order must be at least 1");
  BivariateSeries D = BivariateSeries::one(order);
  D.set(1, 1, -a1);
  D.set(1, 2, -(a2 - 3));
  D.set(1, 3, -a3);
  D.set(2, 2, 3);
  D.set(2, 3, -1);
  if (order >= 3) D.set(3, 3, -1);
  PoincarePair out;
  out.PA = D.reciprocal();
  out.PR = one_plus_t_pow(n, order) * out.PA.diagonal_sub();
  return out;
}

PowerSeries poincare_R_closed_T(long a1, long a2, long a3, long n, std::size_t order) {
  PowerSeries den(order, {1, 0, -a1, -(a2 - 3), -(a3 - 3), -1, -1});
  return one_plus_t_pow(n, order) * den.reciprocal();
}

PoincarePair poincare_CI(long c, long n, std::size_t order) {
  if (c < 1) throw SequenceError("codepth must be positive");
  if (order < 1) throw SequenceError("series order must be at least 1");
  BivariateSeries lin = BivariateSeries::one(order);
  lin.set(1, 1, -1);
  BivariateSeries D = BivariateSeries::one(order);
  for (long i = 0; i < c; ++i) D = D * lin;
  PoincarePair out;
  out.PA = D.reciprocal();
  PowerSeries den = PowerSeries(order, {1, 0, -1}).pow(static_cast<unsigned>(c));
  out.PR = one_plus_t_pow(n, order) * den.reciprocal();
  return out;
}

CheckReport generating_function_check(const SequencePack& p, std::size_t order) {
  if (order > p.k_max) throw SequenceError("generating function check beyond the tables");
  CheckReport r;
  PowerSeries bden = PowerSeries(order, {1, -1}).pow(static_cast<unsigned>(p.c));
  PowerSeries bser = bden.reciprocal();
  for (std::size_t k = 0; k <= order; ++k) r.add("b_" + std::to_string(k), bser[k], p.b[k]);
  if (p.mode != ClassMode::T) return r;

  PowerSeries den = PowerSeries(order, {1, -1}).pow(3) - PowerSeries(order, {0, p.a1 - 3});
  PowerSeries f = den.reciprocal();
  PowerSeries g = PowerSeries(order, {0, p.a2 - 3, 1}) * f;
  PowerSeries h = PowerSeries(order, {0, p.a3}) * f;
  PowerSeries dser = PowerSeries(order, {0, p.a1 - 3}) * f + PowerSeries::one(order);
  for (std::size_t k = 0; k <= order; ++k) {
    auto ks = std::to_string(k);
    r.add("l_" + ks, f[k], p.ell[k]);
    r.add("l'_" + ks, g[k], p.ellp[k]);
    r.add("l''_" + ks, h[k], p.ellpp[k]);
    r.add("d_" + ks, dser[k], p.d[k]);
  }
  // L(t,z) = sum l_{k,r} t^k z^r against f(tz) + z g(tz) + z^2 h(tz)
  BivariateSeries L(order), rhs(order);
  for (std::size_t k = 0; k <= order; ++k) {
    for (long r2 = 0; r2 <= 2; ++r2)
      L.set(k, k + static_cast<std::size_t>(r2), p.ell_kr(static_cast<long>(k), static_cast<long>(k) + r2));
    rhs.set(k, k, f[k]);
    rhs.set(k, k + 1, g[k]);
    rhs.set(k, k + 2, h[k]);
  }
  bool same = L == rhs;
  r.add("L(t,z) = f(tz) + z g(tz) + z^2 h(tz)", 1, same ? 1 : 0);
  PowerSeries l1 = L.at_z_one(), r1 = f + g + h;
  for (std::size_t k = 0; k <= order; ++k) r.add("L(t,1)_" + std::to_string(k), r1[k], l1[k]);
  return r;
}

}  // namespace kres
