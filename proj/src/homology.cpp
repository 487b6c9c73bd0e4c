#include "kres/homology.hpp"

#include <algorithm>
#include <functional>

namespace kres {

namespace {

SparseMatrix flat_differential(const KoszulComplex& K, std::size_t i) {
  return flatten(K.differential(i), K.ring());
}

std::string join_class(const std::vector<Fp>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

HomologyRanks homology_ranks(const KoszulComplex& K) {
  HomologyRanks out;
  const std::size_t n = K.n(), N = K.ring().dim();
  const PrimeField& F = K.ring().field();
  std::vector<std::size_t> rk(n + 2, 0);
  for (std::size_t i = 1; i <= n; ++i) rk[i] = rank(flat_differential(K, i), F);
  for (std::size_t i = 0; i <= n; ++i) {
    std::size_t dim = K.rank(static_cast<std::ptrdiff_t>(i)) * N;
    out.a.push_back(dim - rk[i] - rk[i + 1]);
    if (out.a.back()) out.codepth = i;
  }
  return out;
}

HomologyRanks homology_ranks(std::shared_ptr<const QuotientRing> R) { return homology_ranks(KoszulComplex(std::move(R))); }

void HomologyAlgebra::build_levels(const std::vector<std::vector<SparseVec>>& boundaries) {
  const std::size_t N = K_->ring().dim();
  levels_.clear();
  for (std::size_t i = 0; i <= K_->n(); ++i) {
    const std::size_t dim = K_->rank(static_cast<std::ptrdiff_t>(i)) * N;
    const auto& bd = boundaries[i];
    DenseMatrix M(dim, bd.size() + reps_[i].size());
    for (std::size_t c = 0; c < bd.size(); ++c)
      for (auto [r, v] : bd[c]) M.at(r, c) = v;
    for (std::size_t c = 0; c < reps_[i].size(); ++c)
      for (auto [r, v] : K_->flatten(reps_[i][c])) M.at(r, bd.size() + c) = v;
    Level L;
    L.boundary_dim = bd.size();
    L.solver = std::make_shared<LinearSolver>(M, K_->ring().field());
    levels_.push_back(std::move(L));
  }
}

namespace {

struct Spaces {
  std::vector<std::vector<SparseVec>> boundaries;  // independent columns of flat d_{i+1}
  std::vector<std::vector<SparseVec>> kernels;
};

Spaces spaces(const KoszulComplex& K) {
  const std::size_t n = K.n(), N = K.ring().dim();
  const PrimeField& F = K.ring().field();
  Spaces s;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t dim = K.rank(static_cast<std::ptrdiff_t>(i)) * N;
    s.kernels.push_back(kernel_basis(flat_differential(K, i), F));
    std::vector<SparseVec> bd;
    if (i < n) {
      SparseMatrix up = flat_differential(K, i + 1);
      EchelonBasis E(dim, F);
      for (std::size_t c = 0; c < up.cols(); ++c)
        if (E.insert(up.column(c))) bd.push_back(up.column(c));
    }
    s.boundaries.push_back(std::move(bd));
  }
  return s;
}

}  // namespace

HomologyAlgebra HomologyAlgebra::compute(std::shared_ptr<const KoszulComplex> K) {
  HomologyAlgebra H;
  H.K_ = std::move(K);
  const std::size_t n = H.K_->n(), N = H.K_->ring().dim();
  Spaces s = spaces(*H.K_);
  H.reps_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    EchelonBasis E(H.K_->rank(static_cast<std::ptrdiff_t>(i)) * N, H.K_->ring().field());
    for (const auto& b : s.boundaries[i]) E.insert(b);
    for (const auto& v : s.kernels[i])
      if (E.insert(v)) H.reps_[i].push_back(H.K_->unflatten(i, v));
    H.ranks_.a.push_back(H.reps_[i].size());
    if (!H.reps_[i].empty()) H.ranks_.codepth = i;
  }
  H.build_levels(s.boundaries);
  return H;
}

HomologyAlgebra HomologyAlgebra::with_representatives(std::shared_ptr<const KoszulComplex> K,
                                                      std::vector<std::vector<KoszulElement>> reps) {
  HomologyAlgebra H;
  H.K_ = std::move(K);
  const std::size_t n = H.K_->n(), N = H.K_->ring().dim();
  Spaces s = spaces(*H.K_);
  reps.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    EchelonBasis E(H.K_->rank(static_cast<std::ptrdiff_t>(i)) * N, H.K_->ring().field());
    for (const auto& b : s.boundaries[i]) E.insert(b);
    std::size_t cycles = 0;
    for (const auto& v : s.kernels[i])
      if (E.insert(v)) ++cycles;
    EchelonBasis Q(H.K_->rank(static_cast<std::ptrdiff_t>(i)) * N, H.K_->ring().field());
    for (const auto& b : s.boundaries[i]) Q.insert(b);
    for (std::size_t k = 0; k < reps[i].size(); ++k) {
      const auto& z = reps[i][k];
      if (z.degree != i) throw HomologyError("representative in degree " + std::to_string(i) + " has degree " + std::to_string(z.degree));
      if (!H.K_->is_cycle(z)) throw NotACycleError("representative " + std::to_string(k + 1) + " in degree " + std::to_string(i) + " is not a cycle");
      if (!Q.insert(H.K_->flatten(z)))
        throw HomologyError("representatives in degree " + std::to_string(i) + " are dependent modulo boundaries");
    }
    if (reps[i].size() != cycles)
      throw HomologyError("degree " + std::to_string(i) + " needs " + std::to_string(cycles) + " representatives, got " +
                          std::to_string(reps[i].size()));
    H.ranks_.a.push_back(cycles);
    if (cycles) H.ranks_.codepth = i;
  }
  H.reps_ = std::move(reps);
  H.build_levels(s.boundaries);
  return H;
}

std::vector<Fp> HomologyAlgebra::class_of(const KoszulElement& z) const {
  if (z.degree > K_->n()) throw HomologyError("degree exceeds the Koszul complex");
  if (!K_->is_cycle(z)) throw NotACycleError("element is not a cycle");
  const Level& L = levels_[z.degree];
  const std::size_t dim = K_->rank(static_cast<std::ptrdiff_t>(z.degree)) * K_->ring().dim();
  std::vector<Fp> b(dim, 0);
  for (auto [r, v] : K_->flatten(z)) b[r] = v;
  auto x = L.solver->solve(b);
  if (!x) throw HomologyError("cycle outside the span of boundaries and representatives");
  return std::vector<Fp>(x->begin() + static_cast<std::ptrdiff_t>(L.boundary_dim), x->end());
}

std::vector<Fp> HomologyAlgebra::product_class(const KoszulElement& z, const KoszulElement& w) const {
  if (!K_->is_cycle(z) || !K_->is_cycle(w)) throw NotACycleError("factor is not a cycle");
  if (z.degree + w.degree > ranks_.codepth) throw HomologyError("product degree exceeds the codepth");
  return class_of(K_->wedge(z, w, true));
}

std::vector<Fp> homology_class(const KoszulElement& z, const HomologyAlgebra& H) { return H.class_of(z); }
std::vector<Fp> product_class(const KoszulElement& z, const KoszulElement& w, const HomologyAlgebra& H) {
  return H.product_class(z, w);
}

void ClassTBasis::fill_names() {
  auto fill = [](std::vector<std::string>& names, std::size_t count, int deg) {
    names.clear();
    for (std::size_t u = 0; u < count; ++u) names.push_back("z" + std::to_string(deg) + "_" + std::to_string(u + 1));
  };
  fill(names1, z1.size(), 1);
  fill(names2, z2.size(), 2);
  fill(names3, z3.size(), 3);
}

void ClassCIBasis::fill_names() {
  names1.clear();
  for (std::size_t u = 0; u < z1.size(); ++u) names1.push_back("z1_" + std::to_string(u + 1));
}

ClassCertificate verify_class_T(const ClassTBasis& basis, std::shared_ptr<const KoszulComplex> K) {
  ClassCertificate cert;
  cert.mode = "T";
  auto canon = HomologyAlgebra::compute(K);
  cert.ranks = canon.ranks().a;
  cert.codepth = canon.codepth();
  auto fail = [&](std::string why) {
    cert.passed = false;
    cert.failure = std::move(why);
    return cert;
  };
  if (cert.codepth != 3) return fail("codepth is " + std::to_string(cert.codepth) + ", class T needs 3");
  const std::size_t a1 = canon.rank(1), a2 = canon.rank(2), a3 = canon.rank(3);
  if (a1 < 3 || a2 < 3) return fail("class T needs a1 >= 3 and a2 >= 3");
  if (basis.z1.size() != a1) return fail("expected " + std::to_string(a1) + " degree-1 cycles, got " + std::to_string(basis.z1.size()));
  if (basis.z2.size() != a2 - 3)
    return fail("expected " + std::to_string(a2 - 3) + " degree-2 cycles, got " + std::to_string(basis.z2.size()));
  if (basis.z3.size() != a3) return fail("expected " + std::to_string(a3) + " degree-3 cycles, got " + std::to_string(basis.z3.size()));

  ClassTBasis b = basis;
  if (b.names1.size() != b.z1.size() || b.names2.size() != b.z2.size() || b.names3.size() != b.z3.size()) b.fill_names();
  auto check_cycles = [&](const std::vector<KoszulElement>& zs, const std::vector<std::string>& names,
                          std::size_t deg) -> std::string {
    for (std::size_t u = 0; u < zs.size(); ++u) {
      if (zs[u].degree != deg) return names[u] + " has degree " + std::to_string(zs[u].degree);
      if (!K->is_cycle(zs[u])) return names[u] + " is not a cycle";
    }
    return "";
  };
  for (auto msg : {check_cycles(b.z1, b.names1, 1), check_cycles(b.z2, b.names2, 2), check_cycles(b.z3, b.names3, 3)})
    if (!msg.empty()) return fail(msg);

  const auto& z = b.z1;
  KoszulElement p12 = K->wedge(z[0], z[1]), p23 = K->wedge(z[1], z[2]), p13 = K->wedge(z[0], z[2]);
  std::vector<std::vector<KoszulElement>> reps(K->n() + 1);
  reps[0] = {K->basis_element(0, K->ring().one())};
  reps[1] = b.z1;
  reps[2] = {p12, p23, p13};
  reps[2].insert(reps[2].end(), b.z2.begin(), b.z2.end());
  reps[3] = b.z3;
  std::shared_ptr<HomologyAlgebra> H;
  try {
    H = std::make_shared<HomologyAlgebra>(HomologyAlgebra::with_representatives(K, reps));
  } catch (const HomologyError& e) {
    std::string what = e.what();
    if (what.find("degree 2") != std::string::npos)
      return fail("products of the distinguished triple " + b.names1[0] + "," + b.names1[1] + "," + b.names1[2] +
                  " together with the degree-2 cycles are not a basis of A_2 (" + what + ")");
    return fail(what);
  }

  auto record = [&](const std::string& l, const std::string& r, const KoszulElement& x, const KoszulElement& y,
                    std::vector<Fp> expected, const std::string& expected_name) {
    ProductCheck pc;
    pc.left = l;
    pc.right = r;
    pc.degree = x.degree + y.degree;
    pc.cls = H->product_class(x, y);
    pc.expected = expected_name;
    pc.ok = pc.cls == expected;
    cert.products.push_back(pc);
    return pc.ok;
  };
  bool ok = true;
  std::string first_bad;
  auto note = [&](bool good, const std::string& what) {
    if (!good && ok) first_bad = what;
    ok = ok && good;
  };
  for (std::size_t i = 0; i < a1; ++i)
    for (std::size_t j = i; j < a1; ++j) {
      std::vector<Fp> expected(a2, 0);
      std::string name = "0";
      if (i == 0 && j == 1) expected[0] = 1, name = "[" + b.names1[0] + " " + b.names1[1] + "]";
      if (i == 1 && j == 2) expected[1] = 1, name = "[" + b.names1[1] + " " + b.names1[2] + "]";
      if (i == 0 && j == 2) expected[2] = 1, name = "[" + b.names1[0] + " " + b.names1[2] + "]";
      bool g = record(b.names1[i], b.names1[j], z[i], z[j], expected, name);
      note(g, "[" + b.names1[i] + "][" + b.names1[j] + "] has class " + join_class(cert.products.back().cls) +
                  ", expected " + name);
    }
  const std::vector<std::pair<std::string, KoszulElement>> b2 = {
      {b.names1[0] + "^" + b.names1[1], p12}, {b.names1[1] + "^" + b.names1[2], p23}, {b.names1[0] + "^" + b.names1[2], p13}};
  for (std::size_t i = 0; i < a1; ++i) {
    for (std::size_t u = 0; u < b.z2.size(); ++u) {
      bool g = record(b.names1[i], b.names2[u], z[i], b.z2[u], std::vector<Fp>(a3, 0), "0");
      note(g, "[" + b.names1[i] + "][" + b.names2[u] + "] is nonzero");
    }
    for (const auto& [nm, el] : b2) {
      bool g = record(b.names1[i], nm, z[i], el, std::vector<Fp>(a3, 0), "0");
      note(g, "[" + b.names1[i] + "][" + nm + "] is nonzero");
    }
  }
  cert.passed = ok;
  cert.failure = first_bad;
  cert.adapted = H;
  return cert;
}

ClassCertificate verify_class_CI(const ClassCIBasis& basis, std::shared_ptr<const KoszulComplex> K) {
  ClassCertificate cert;
  cert.mode = "CI";
  auto canon = std::make_shared<HomologyAlgebra>(HomologyAlgebra::compute(K));
  cert.ranks = canon->ranks().a;
  cert.codepth = canon->codepth();
  const std::size_t c = cert.codepth;
  if (canon->rank(1) != c || basis.z1.size() != c) {
    cert.failure = "complete intersection gate: a1 = " + std::to_string(canon->rank(1)) + ", codepth = " +
                   std::to_string(c) + ", basis size = " + std::to_string(basis.z1.size());
    return cert;
  }
  ClassCIBasis b = basis;
  if (b.names1.size() != b.z1.size()) b.fill_names();
  for (std::size_t u = 0; u < c; ++u)
    if (b.z1[u].degree != 1 || !K->is_cycle(b.z1[u])) {
      cert.failure = b.names1[u] + " is not a degree-1 cycle";
      return cert;
    }
  // wedge monomials z_S for every subset S of the basis
  for (std::size_t i = 1; i <= c; ++i) {
    const std::size_t expect = binomial(c, i);
    if (canon->rank(i) != expect) {
      cert.failure = "a" + std::to_string(i) + " = " + std::to_string(canon->rank(i)) + " but the exterior algebra needs " +
                     std::to_string(expect);
      return cert;
    }
    std::vector<std::vector<Fp>> cols;
    std::function<void(std::size_t, std::size_t, KoszulElement, std::string)> rec =
        [&](std::size_t start, std::size_t left, KoszulElement acc, std::string name) {
          if (left == 0) {
            ProductCheck pc;
            pc.left = name;
            pc.degree = i;
            pc.cls = canon->class_of(acc);
            pc.expected = "independent";
            cols.push_back(pc.cls);
            cert.products.push_back(pc);
            return;
          }
          for (std::size_t u = start; u + left <= c; ++u)
            rec(u + 1, left - 1, K->wedge(acc, b.z1[u]), name.empty() ? b.names1[u] : name + "^" + b.names1[u]);
        };
    rec(0, i, K->basis_element(0, K->ring().one()), "");
    DenseMatrix A(canon->rank(i), cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (std::size_t r = 0; r < cols[k].size(); ++r) A.at(r, k) = cols[k][r];
    if (rank(A, K->ring().field()) != expect) {
      for (auto& pc : cert.products)
        if (pc.degree == i) pc.ok = false;
      cert.failure = "wedge monomials of degree " + std::to_string(i) + " are dependent in homology";
      return cert;
    }
  }
  cert.passed = true;
  cert.adapted = canon;
  return cert;
}

ClassTDiscovery discover_class_T(std::shared_ptr<const KoszulComplex> K) {
  ClassTDiscovery out;
  auto H = HomologyAlgebra::compute(K);
  const PrimeField& F = K->ring().field();
  if (H.codepth() != 3) {
    out.diagnostic = "codepth " + std::to_string(H.codepth()) + " is not 3";
    return out;
  }
  const std::size_t a1 = H.rank(1), a2 = H.rank(2);
  const auto& w = H.representatives(1);
  // multiplication A1 x A1 -> A2; column i stacks the classes of w_i w_j
  DenseMatrix M(a1 * a2, a1);
  for (std::size_t i = 0; i < a1; ++i)
    for (std::size_t j = 0; j < a1; ++j) {
      auto cls = H.product_class(w[i], w[j]);
      for (std::size_t r = 0; r < a2; ++r) M.at(j * a2 + r, i) = cls[r];
    }
  auto ann = kernel_basis(M, F);
  if (a1 < 3 || ann.size() != a1 - 3) {
    out.diagnostic = "annihilator of A1 in A1 has dimension " + std::to_string(ann.size()) + ", expected a1 - 3; supply representatives";
    return out;
  }
  auto combine = [&](const std::vector<KoszulElement>& base, const std::vector<Fp>& coef, std::size_t deg) {
    KoszulElement e = K->zero(deg);
    for (std::size_t i = 0; i < coef.size(); ++i)
      if (coef[i]) e = K->add(e, K->scale(base[i], coef[i]));
    return e;
  };
  EchelonBasis E(a1, F);
  for (const auto& v : ann) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    E.insert(s);
  }
  ClassTBasis b;
  for (std::size_t i = 0; i < a1 && b.z1.size() < 3; ++i)
    if (E.insert({{static_cast<std::uint32_t>(i), 1u}})) b.z1.push_back(w[i]);
  for (const auto& v : ann) b.z1.push_back(combine(w, v, 1));

  EchelonBasis P(a2, F);
  auto to_sparse = [](const std::vector<Fp>& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return s;
  };
  bool independent = P.insert(to_sparse(H.product_class(b.z1[0], b.z1[1]))) &&
                     P.insert(to_sparse(H.product_class(b.z1[1], b.z1[2]))) &&
                     P.insert(to_sparse(H.product_class(b.z1[0], b.z1[2])));
  if (!independent) {
    out.diagnostic = "products of the chosen triple are dependent; supply representatives";
    return out;
  }
  const auto& w2 = H.representatives(2);
  for (std::size_t j = 0; j < a2; ++j)
    if (P.insert({{static_cast<std::uint32_t>(j), 1u}})) b.z2.push_back(w2[j]);
  b.z3 = H.representatives(3);
  b.fill_names();
  out.certificate = verify_class_T(b, K);
  if (!out.certificate.passed) {
    out.diagnostic = "greedy choice failed certification (" + out.certificate.failure + "); supply representatives";
    return out;
  }
  out.basis = std::move(b);
  return out;
}

std::optional<ClassCIBasis> discover_class_CI(std::shared_ptr<const KoszulComplex> K, ClassCertificate* cert) {
  auto H = HomologyAlgebra::compute(K);
  ClassCIBasis b;
  b.z1 = H.representatives(1);
  b.fill_names();
  auto c = verify_class_CI(b, K);
  if (cert) *cert = c;
  if (!c.passed) return std::nullopt;
  return b;
}

}  // namespace kres
