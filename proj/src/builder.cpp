#include "kres/builder.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace kres {

std::size_t to_size(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max()))
    throw AssemblyError("count " + v.str() + " does not fit the matrix index range");
  return static_cast<std::size_t>(v);
}

WordIndex::WordIndex(std::size_t c, std::size_t k) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int low) {
    if (cur.size() == k) {
      index_[cur] = words_.size();
      words_.push_back(cur);
      return;
    }
    for (int u = low; u <= static_cast<int>(c); ++u) {
      cur.push_back(u);
      rec(u);
      cur.pop_back();
    }
  };
  rec(1);
}

std::vector<int> WordIndex::bracket(std::vector<int> v, int u) {
  v.insert(std::upper_bound(v.begin(), v.end(), u), u);
  return v;
}

namespace {

std::size_t bsize(std::size_t c, long k) { return k < 0 ? 0 : binomial(static_cast<std::size_t>(k) + c - 1, c - 1); }

}  // namespace

CycleMatrix beta(std::size_t k, std::size_t c, const std::vector<KoszulElement>& z, const std::vector<std::string>& names,
                 const KoszulComplex& K) {
  if (z.size() < c) throw AssemblyError("beta needs " + std::to_string(c) + " degree-1 cycles");
  const std::size_t rows = bsize(c, static_cast<long>(k) - 1), cols = bsize(c, static_cast<long>(k));
  std::vector<PaletteItem> palette;
  for (std::size_t u = 0; u < c; ++u) palette.push_back({z[u], u < names.size() ? names[u] : "z1_" + std::to_string(u + 1)});
  std::vector<CycleEntry> entries;
  if (k >= 1) {
    WordIndex V(c, k - 1), U(c, k);
    for (std::size_t row = 0; row < V.size(); ++row)
      for (int u = 1; u <= static_cast<int>(c); ++u)
        entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(U.rank(WordIndex::bracket(V.word(row), u))),
                           static_cast<std::uint32_t>(u - 1)});
  }
  return CycleMatrix(K, rows, cols, 1, std::move(palette), std::move(entries));
}

CycleMatrix beta_prime(std::size_t k, const std::vector<KoszulElement>& t, const std::vector<std::string>& names,
                       const KoszulComplex& K) {
  if (t.size() < 3) throw AssemblyError("beta' needs the distinguished triple");
  const std::size_t rows = bsize(3, static_cast<long>(k) - 1), cols = bsize(3, static_cast<long>(k) - 2);
  auto nm = [&](std::size_t u) { return u < names.size() ? names[u] : "z1_" + std::to_string(u + 1); };
  std::vector<PaletteItem> palette = {{K.wedge(t[1], t[2]), nm(1) + "^" + nm(2)},
                                      {K.wedge(t[0], t[2]), nm(0) + "^" + nm(2)},
                                      {K.wedge(t[0], t[1]), nm(0) + "^" + nm(1)}};
  std::vector<CycleEntry> entries;
  if (k >= 2) {
    WordIndex V(3, k - 2), W(3, k - 1);
    for (std::size_t col = 0; col < V.size(); ++col)
      for (int u = 1; u <= 3; ++u)
        entries.push_back({static_cast<std::uint32_t>(W.rank(WordIndex::bracket(V.word(col), u))),
                           static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(u - 1)});
  }
  return CycleMatrix(K, rows, cols, 2, std::move(palette), std::move(entries));
}

CycleMatrix gamma(int j, const ClassTBasis& basis, const KoszulComplex& K) {
  ClassTBasis b = basis;
  if (b.names1.size() != b.z1.size() || b.names2.size() != b.z2.size() || b.names3.size() != b.z3.size()) b.fill_names();
  std::vector<PaletteItem> palette;
  std::size_t first = 0;
  const std::vector<KoszulElement>* src = nullptr;
  const std::vector<std::string>* names = nullptr;
  switch (j) {
    case 1:
      if (b.z1.size() < 3) throw AssemblyError("gamma_1 needs a1 >= 3");
      first = 3, src = &b.z1, names = &b.names1;
      break;
    case 2:
      src = &b.z2, names = &b.names2;
      break;
    case 3:
      src = &b.z3, names = &b.names3;
      break;
    default:
      throw AssemblyError("gamma index must be 1, 2 or 3");
  }
  std::vector<CycleEntry> entries;
  for (std::size_t u = first; u < src->size(); ++u) {
    entries.push_back({0, static_cast<std::uint32_t>(u - first), static_cast<std::uint32_t>(palette.size())});
    palette.push_back({(*src)[u], (*names)[u]});
  }
  return CycleMatrix(K, 1, src->size() - first, static_cast<std::size_t>(j), std::move(palette), std::move(entries));
}

AlphaFamily::AlphaFamily(std::shared_ptr<const KoszulComplex> K, ClassTBasis basis, SequencePack pack,
                         ZeroBlockPlacement placement)
    : K_(std::move(K)), basis_(std::move(basis)), pack_(std::move(pack)), placement_(placement) {
  if (pack_.mode != ClassMode::T) throw AssemblyError("alpha family needs class T tables");
  if (basis_.names1.size() != basis_.z1.size() || basis_.names2.size() != basis_.z2.size() ||
      basis_.names3.size() != basis_.z3.size())
    basis_.fill_names();
}

const CycleMatrix& AlphaFamily::beta(std::size_t k) {
  auto it = beta_.find(k);
  if (it == beta_.end()) it = beta_.emplace(k, kres::beta(k, 3, basis_.z1, basis_.names1, *K_)).first;
  return it->second;
}

const CycleMatrix& AlphaFamily::beta_prime(std::size_t k) {
  auto it = beta_prime_.find(k);
  if (it == beta_prime_.end()) it = beta_prime_.emplace(k, kres::beta_prime(k, basis_.z1, basis_.names1, *K_)).first;
  return it->second;
}

const CycleMatrix& AlphaFamily::gamma(int j) {
  auto it = gamma_.find(j);
  if (it == gamma_.end()) it = gamma_.emplace(j, kres::gamma(j, basis_, *K_)).first;
  return it->second;
}

const CycleMatrix& AlphaFamily::alpha(long k, long r) {
  auto key = std::make_pair(k, r);
  if (auto it = alpha_.find(key); it != alpha_.end()) return it->second;
  if (r < k || r > k + 2) throw AssemblyError("alpha_{k,r} needs k <= r <= k+2");
  if (k > static_cast<long>(pack_.k_max)) throw AssemblyError("alpha beyond the sequence tables");
  const std::size_t deg = static_cast<std::size_t>(r - k + 1);
  const std::size_t rows = to_size(pack_.ell_at(k - 1)), cols = to_size(pack_.ell_kr(k, r));
  CycleMatrix m(rows, cols, deg);
  if (k >= 1) {
    if (r == k) {
      CycleMatrix left(0, 0, 1);
      for (long i = 0; i < k; ++i) left = block_diag(left, repeat_diag(beta(static_cast<std::size_t>(k - i)), to_size(pack_.d_at(i))));
      m = hconcat(left, repeat_diag(gamma(1), to_size(pack_.ell_at(k - 1))));
    } else if (r == k + 1) {
      CycleMatrix left(0, 0, 2);
      for (long i = 0; i + 2 <= k; ++i)
        left = block_diag(left, repeat_diag(beta_prime(static_cast<std::size_t>(k - i)), to_size(pack_.d_at(i))));
      CycleMatrix zero(to_size(pack_.d_at(k - 1)), to_size(pack_.ell_at(k - 2)), 2);
      left = placement_ == ZeroBlockPlacement::Bottom ? vconcat(left, zero) : vconcat(zero, left);
      m = hconcat(left, repeat_diag(gamma(2), to_size(pack_.ell_at(k - 1))));
    } else {
      m = repeat_diag(gamma(3), to_size(pack_.ell_at(k - 1)));
    }
  }
  if (m.rows() != rows || m.cols() != cols)
    throw AssemblyError("alpha_{" + std::to_string(k) + "," + std::to_string(r) + "} has extents " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()) + ", tables give " + std::to_string(rows) + "x" + std::to_string(cols));
  return alpha_.emplace(key, std::move(m)).first->second;
}

CycleMatrix alpha(long k, long r, const SequencePack& pack, const ClassTBasis& basis, std::shared_ptr<const KoszulComplex> K,
                  ZeroBlockPlacement placement) {
  AlphaFamily fam(std::move(K), basis, pack, placement);
  return fam.alpha(k, r);
}

DeltaBlock delta(std::size_t k, AlphaFamily& fam) {
  if (k < 1) throw AssemblyError("Delta_k needs k >= 1");
  const long kk = static_cast<long>(k);
  return DeltaBlock{k, fam.alpha(kk, kk), fam.alpha(kk, kk + 1), fam.alpha(kk, kk + 2)};
}

std::vector<PhiBlock> phi(std::size_t k, const SequencePack& pack) {
  if (k < 1) throw AssemblyError("phi^(k) needs k >= 1");
  auto upper = tree_layer(k - 1), lower = tree_layer(k);
  std::map<TreeMonomial, std::size_t> pos;
  for (std::size_t i = 0; i < upper.size(); ++i) pos[upper[i]] = i;
  std::vector<PhiBlock> out;
  for (std::size_t c = 0; c < lower.size(); ++c) {
    TreeArrow a = tree_parent(lower[c]);
    std::size_t p = pos.at(a.parent);
    if (out.empty() || out.back().parent != p) {
      PhiBlock b;
      b.parent = p;
      b.delta_index = static_cast<std::size_t>(a.i);
      b.copies = a.cofactor.deg3(pack);
      out.push_back(std::move(b));
    }
    out.back().children.push_back(c);
  }
  if (out.size() != upper.size()) throw AssemblyError("phi: every node of the upper layer needs one block");
  return out;
}

std::vector<CBlock> component_C(std::size_t k, const SequencePack& pack) {
  std::vector<CBlock> out;
  for (auto& m : tree_layer(k)) {
    CBlock b;
    b.shift = m.deg2();
    b.copies = m.deg3(pack);
    b.m = std::move(m);
    out.push_back(std::move(b));
  }
  return out;
}

std::string to_string(SignRegime r) {
  switch (r) {
    case SignRegime::ShiftOnlyPlus: return "shift-sign diagonal, +phi";
    case SignRegime::ShiftOnlyMinus: return "shift-sign diagonal, -phi";
    case SignRegime::ConePlus: return "cone-sign diagonal, +phi";
    case SignRegime::ConeMinus: return "cone-sign diagonal, -phi";
  }
  return "?";
}

std::vector<SignRegime> arbiter_order() {
  return {SignRegime::ShiftOnlyPlus, SignRegime::ShiftOnlyMinus, SignRegime::ConePlus, SignRegime::ConeMinus};
}

const FBlock* ResolutionAssembly::block_at(std::size_t r, std::size_t pos) const {
  const std::size_t n = K->n();
  for (const auto& b : blocks.at(r)) {
    std::size_t len = b.copies * binomial(n, b.koszul_degree);
    if (pos >= b.offset && pos < b.offset + len) return &b;
  }
  return nullptr;
}

std::string ResolutionAssembly::describe(std::size_t r, std::size_t pos) const {
  const FBlock* b = block_at(r, pos);
  if (!b) return "F_" + std::to_string(r) + "[" + std::to_string(pos) + "]";
  std::size_t rk = binomial(K->n(), b->koszul_degree);
  return "F_" + std::to_string(r) + " block " + b->label + " (C^(" + std::to_string(b->layer) + "), K_" +
         std::to_string(b->koszul_degree) + ", copy " + std::to_string((pos - b->offset) / rk) + ")";
}

std::optional<SquareDefect> first_square_defect(const ResolutionAssembly& F, std::size_t up_to) {
  const QuotientRing& R = F.K->ring();
  for (std::size_t r = 1; r + 1 <= std::min(up_to, F.i_max); ++r) {
    RingMatrix P = multiply(F.differentials[r], F.differentials[r + 1], R);
    if (auto pos = P.first_nonzero()) {
      SquareDefect d;
      d.r = r;
      d.row = pos->first;
      d.col = pos->second;
      d.where = "d_" + std::to_string(r) + "*d_" + std::to_string(r + 1) + " nonzero from " + F.describe(r + 1, d.col) +
                " to " + F.describe(r - 1, d.row);
      return d;
    }
  }
  return std::nullopt;
}

namespace {

struct ConeNode {
  std::string label;
  TreeMonomial m;
  int shift = 0;
  BigInt deg3;
};

struct ConeArrow {
  std::size_t parent = 0;
  const CycleMatrix* theta = nullptr;
  std::size_t rep = 0;
};

struct ConeSpec {
  ClassMode mode;
  std::vector<std::vector<ConeNode>> layers;
  std::vector<std::vector<std::optional<ConeArrow>>> arrows;  // arrows[j][node] into layer j-1
};

ResolutionAssembly build_cone(const ConeSpec& cone, std::shared_ptr<const KoszulComplex> K, std::size_t i_max,
                              SignRegime regime) {
  ResolutionAssembly F;
  F.mode = cone.mode;
  F.i_max = i_max;
  F.K = K;
  F.regime = regime;
  const QuotientRing& R = K->ring();
  const PrimeField& Fd = R.field();
  const std::size_t n = K->n();
  const Fp minus = Fd.neg(1);

  F.blocks.resize(i_max + 1);
  F.ranks.assign(i_max + 1, 0);
  for (std::size_t r = 0; r <= i_max; ++r) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < cone.layers.size(); ++j)
      for (std::size_t idx = 0; idx < cone.layers[j].size(); ++idx) {
        const auto& node = cone.layers[j][idx];
        long q = static_cast<long>(r) - static_cast<long>(j) - node.shift;
        if (q < 0 || q > static_cast<long>(n)) continue;
        FBlock b;
        b.layer = j;
        b.node = idx;
        b.label = node.label;
        b.shift = node.shift;
        b.koszul_degree = static_cast<std::size_t>(q);
        b.copies = to_size(node.deg3);
        b.offset = off;
        b.deg1 = node.m.deg1();
        b.deg2 = node.m.deg2();
        b.deg3 = node.deg3;
        off += b.copies * binomial(n, b.koszul_degree);
        F.blocks[r].push_back(std::move(b));
      }
    F.ranks[r] = off;
  }

  F.differentials.resize(i_max + 1);
  for (std::size_t r = 1; r <= i_max; ++r) {
    std::map<std::pair<std::size_t, std::size_t>, const FBlock*> below;
    for (const auto& b : F.blocks[r - 1]) below[{b.layer, b.node}] = &b;
    RingMatrixBuilder out(F.ranks[r - 1], F.ranks[r]);
    for (const auto& b : F.blocks[r]) {
      bool cone_sign = regime == SignRegime::ConePlus || regime == SignRegime::ConeMinus;
      int e = b.shift + (cone_sign ? static_cast<int>(b.layer) : 0);
      Fp sd = e % 2 ? minus : 1;
      if (b.koszul_degree >= 1) {
        const FBlock* t = below.at({b.layer, b.node});
        append_differential(out, b.koszul_degree, b.copies, t->offset, b.offset, sd, *K);
      }
      if (b.layer == 0) continue;
      const auto& arrow = cone.arrows[b.layer][b.node];
      if (!arrow) throw AssemblyError("missing arrow for block " + b.label);
      std::size_t q2 = b.koszul_degree + arrow->theta->degree();
      if (q2 > n) continue;
      auto it = below.find({b.layer - 1, arrow->parent});
      if (it == below.end()) throw AssemblyError("parent block of " + b.label + " missing in F_" + std::to_string(r - 1));
      const FBlock* t = it->second;
      if (t->koszul_degree != q2) throw AssemblyError("parent block of " + b.label + " has the wrong Koszul degree");
      if (t->copies != arrow->rep * arrow->theta->rows() || b.copies != arrow->rep * arrow->theta->cols())
        throw AssemblyError("arrow extents do not match the blocks of " + b.label);
      Fp sp = (regime == SignRegime::ShiftOnlyMinus || regime == SignRegime::ConeMinus) ? minus : 1;
      append_action(out, *arrow->theta, q2, arrow->rep, t->offset, b.offset, sp, *K);
    }
    F.differentials[r] = out.build(R);
  }
  return F;
}

ResolutionAssembly arbitrate(const ConeSpec& cone, std::shared_ptr<const KoszulComplex> K, std::size_t i_max,
                             const AssemblyOptions& opt) {
  if (opt.force_regime) {
    ResolutionAssembly F = build_cone(cone, K, i_max, *opt.force_regime);
    F.arbiter.push_back({*opt.force_regime, true, "forced"});
    return F;
  }
  std::vector<ArbiterStep> trace;
  for (SignRegime reg : arbiter_order()) {
    ResolutionAssembly F = build_cone(cone, K, i_max, reg);
    auto defect = first_square_defect(F, i_max);
    trace.push_back({reg, !defect, defect ? defect->where : "d^2 = 0 through degree " + std::to_string(i_max)});
    if (!defect) {
      F.arbiter = trace;
      return F;
    }
  }
  std::string msg = "no sign regime gives d^2 = 0:";
  for (const auto& s : trace) msg += " [" + to_string(s.regime) + ": " + s.detail + "]";
  throw AssemblyError(msg);
}

}  // namespace

ResolutionAssembly assemble_T(std::shared_ptr<const KoszulComplex> K, const ClassTBasis& basis, const SequencePack& pack,
                              std::size_t i_max, const AssemblyOptions& opt) {
  if (i_max < 1) throw AssemblyError("i_max must be at least 1");
  const std::size_t J = i_max / 2;
  if (pack.k_max < J) throw AssemblyError("sequence tables too short for this degree range");
  auto fam = std::make_shared<AlphaFamily>(K, basis, pack, opt.placement);
  ConeSpec cone;
  cone.mode = ClassMode::T;
  for (std::size_t j = 0; j <= J; ++j) {
    auto layer = tree_layer(j);
    std::vector<ConeNode> nodes;
    std::vector<std::optional<ConeArrow>> arrows;
    std::map<TreeMonomial, std::size_t> upper;
    if (j >= 1)
      for (std::size_t i = 0; i < cone.layers[j - 1].size(); ++i) upper[cone.layers[j - 1][i].m] = i;
    for (auto& m : layer) {
      ConeNode node;
      node.label = m.to_string();
      node.shift = m.deg2();
      node.deg3 = m.deg3(pack);
      std::optional<ConeArrow> arrow;
      bool used = static_cast<int>(j) + node.shift <= static_cast<int>(i_max);
      if (j >= 1 && used) {
        TreeArrow a = tree_parent(m);
        ConeArrow ca;
        ca.parent = upper.at(a.parent);
        ca.theta = &fam->alpha(a.i, a.r);
        ca.rep = to_size(a.cofactor.deg3(pack));
        arrow = ca;
      }
      node.m = std::move(m);
      nodes.push_back(std::move(node));
      arrows.push_back(arrow);
    }
    cone.layers.push_back(std::move(nodes));
    cone.arrows.push_back(std::move(arrows));
  }
  return arbitrate(cone, K, i_max, opt);
}

ResolutionAssembly assemble_CI(std::shared_ptr<const KoszulComplex> K, const ClassCIBasis& basis, std::size_t i_max,
                               const AssemblyOptions& opt) {
  if (i_max < 1) throw AssemblyError("i_max must be at least 1");
  const std::size_t c = basis.z1.size();
  if (c == 0) throw AssemblyError("empty complete intersection basis");
  ClassCIBasis b = basis;
  if (b.names1.size() != b.z1.size()) b.fill_names();
  const std::size_t J = i_max / 2;
  SequencePack pack = ci_tables(static_cast<long>(c), J);
  std::map<std::size_t, CycleMatrix> betas;
  ConeSpec cone;
  cone.mode = ClassMode::CI;
  for (std::size_t j = 0; j <= J; ++j) {
    ConeNode node;
    node.label = "b_" + std::to_string(j);
    if (j) node.m.factors.emplace_back(static_cast<int>(j), static_cast<int>(j));
    node.shift = static_cast<int>(j);
    node.deg3 = pack.b[j];
    std::optional<ConeArrow> arrow;
    if (j >= 1) {
      auto it = betas.emplace(j, beta(j, c, b.z1, b.names1, *K)).first;
      arrow = ConeArrow{0, &it->second, 1};
    }
    cone.layers.push_back({node});
    cone.arrows.push_back({arrow});
  }
  return arbitrate(cone, K, i_max, opt);
}

}  // namespace kres
