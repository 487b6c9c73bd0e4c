#include "kres/verifier.hpp"

#include <algorithm>
#include <chrono>

namespace kres {

namespace {

CheckSection section(std::string name) {
  CheckSection s;
  s.name = std::move(name);
  return s;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

CheckSection check_complex(const ResolutionAssembly& F) {
  CheckSection s = section("complex");
  if (auto d = first_square_defect(F, F.i_max)) {
    s.status = Status::Fail;
    s.detail = d->where;
  } else {
    s.detail = "d_i d_{i+1} = 0 for 1 <= i < " + std::to_string(F.i_max);
  }
  return s;
}

CheckSection check_minimality(const ResolutionAssembly& F) {
  CheckSection s = section("minimality");
  const QuotientRing& R = F.K->ring();
  for (std::size_t r = 1; r < F.differentials.size(); ++r) {
    const RingMatrix& d = F.differentials[r];
    for (std::size_t c = 0; c < d.cols(); ++c)
      for (const auto& [row, e] : d.column(c))
        if (!R.in_maximal_ideal(e)) {
          s.status = Status::Fail;
          s.detail = "unit entry " + R.format(e) + " in d_" + std::to_string(r) + " from " + F.describe(r, c) + " to " +
                     F.describe(r - 1, row);
          return s;
        }
  }
  s.detail = "all entries of d_1..d_" + std::to_string(F.i_max) + " lie in m";
  return s;
}

CheckSection check_exactness(const ResolutionAssembly& F, bool complex_ok) {
  CheckSection s = section("exactness");
  if (!complex_ok) {
    s.status = Status::Skipped;
    s.detail = "not a complex";
    return s;
  }
  const QuotientRing& R = F.K->ring();
  const std::size_t N = R.dim();
  std::vector<std::size_t> rk(F.i_max + 2, 0);
  for (std::size_t r = 1; r <= F.i_max; ++r) rk[r] = rank(flatten(F.differentials[r], R), R.field());
  for (std::size_t r = 0; r < F.i_max; ++r) {
    DegreeData d;
    d.degree = r;
    d.free_rank = F.ranks[r];
    d.flat_dim = F.ranks[r] * N;
    d.rank_out = rk[r];
    d.kernel_dim = d.flat_dim - rk[r];
    d.image_dim = rk[r + 1];
    d.homology = d.kernel_dim - d.image_dim;
    std::size_t want = r == 0 ? 1 : 0;
    if (d.homology != want && s.status == Status::Pass) {
      s.status = Status::Fail;
      s.detail = "H_" + std::to_string(r) + " has dimension " + std::to_string(d.homology) + ", expected " +
                 std::to_string(want);
    }
    s.degrees.push_back(d);
  }
  if (s.passed()) s.detail = "H_0 = k, H_i = 0 for 1 <= i <= " + std::to_string(F.i_max - 1);
  return s;
}

CheckSection check_rank_agreement(const ResolutionAssembly& F, const PowerSeries& PR) {
  CheckSection s = section("rank_agreement");
  for (std::size_t r = 0; r <= F.i_max; ++r) {
    if (r > PR.order()) {
      s.status = Status::Fail;
      s.detail = "series order " + std::to_string(PR.order()) + " is below the assembled range";
      return s;
    }
    if (BigInt(F.ranks[r]) != PR[r]) {
      s.status = Status::Fail;
      s.detail = "rank F_" + std::to_string(r) + " = " + std::to_string(F.ranks[r]) + ", series gives " + PR[r].str();
      return s;
    }
  }
  s.detail = "rank F_i equals the Poincare coefficient for i <= " + std::to_string(F.i_max);
  return s;
}

CheckSection check_graded_exactness(const GradedComplexes& G) {
  CheckSection s = section("graded_exactness");
  std::size_t count = 0;
  auto run = [&](const FiniteComplex& C, const PrimeField& Fd) {
    std::vector<std::size_t> rk;
    for (const auto& m : C.maps) rk.push_back(rank(m, Fd));
    for (std::size_t t = 0; t + 1 < C.maps.size(); ++t) {
      DenseMatrix prod = multiply(C.maps[t + 1], C.maps[t], Fd);
      if (std::any_of(prod.data.begin(), prod.data.end(), [](Fp v) { return v != 0; })) {
        if (s.passed()) s.detail = C.name + ": consecutive maps do not compose to zero at position " +
                                   std::to_string(C.positions[t + 1]);
        s.status = Status::Fail;
        return;
      }
    }
    for (std::size_t t = 0; t < C.dims.size(); ++t) {
      std::size_t ker = C.dims[t] - (t < rk.size() ? rk[t] : 0);
      std::size_t im = t > 0 ? rk[t - 1] : 0;
      if (ker != im) {
        if (s.passed())
          s.detail = C.name + ": homology of dimension " + std::to_string(ker - im) + " at position " +
                     std::to_string(C.positions[t]);
        s.status = Status::Fail;
        return;
      }
    }
    ++count;
  };
  for (const auto* list : {&G.B, &G.C, &G.A})
    for (const auto& C : *list) run(C, G.field);
  for (const auto& rep : G.decomposition)
    if (!rep.passed) {
      for (const auto& it : rep.items)
        if (!it.ok && s.passed())
          s.detail = it.name + ": dimension " + it.expected.str() + ", summands give " + it.actual.str();
      s.status = Status::Fail;
    }
  if (s.passed()) s.detail = std::to_string(count) + " complexes exact, summand dimensions agree";
  return s;
}

CheckSection check_chain_maps(AlphaFamily& fam, std::size_t k_max) {
  CheckSection s = section("chain_maps");
  std::size_t count = 0;
  for (std::size_t k = 1; k <= k_max; ++k)
    for (long r = static_cast<long>(k); r <= static_cast<long>(k) + 2; ++r) {
      auto rep = verify_chain_map(fam.alpha(static_cast<long>(k), r), fam.koszul());
      ++count;
      if (!rep.passed && s.passed()) {
        s.status = Status::Fail;
        s.detail = "alpha_{" + std::to_string(k) + "," + std::to_string(r) + "}: " + rep.message;
      }
    }
  if (s.passed()) s.detail = std::to_string(count) + " alpha maps commute with d up to sign";
  return s;
}

OracleResolution oracle_resolution(std::shared_ptr<const QuotientRing> R, std::size_t i_max) {
  OracleResolution out;
  const PrimeField& F = R->field();
  const std::size_t N = R->dim(), n = R->nvars();
  out.betti.push_back(1);
  out.differentials.emplace_back();
  if (i_max == 0) return out;
  RingMatrixBuilder d1(1, n);
  for (std::size_t j = 0; j < n; ++j) d1.add(0, j, R->var(j));
  out.differentials.push_back(d1.build(*R));
  out.betti.push_back(n);
  for (std::size_t i = 1; i < i_max; ++i) {
    const RingMatrix& d = out.differentials[i];
    auto ker = kernel_basis(flatten(d, *R), F);
    const std::size_t dim = d.cols() * N;
    EchelonBasis E(dim, F);
    for (const auto& v : ker)
      for (std::size_t j = 0; j < n; ++j) {
        SparseVec w;
        for (const auto& [q, val] : v) {
          std::int32_t m = R->product(q % N, R->variable_index(j));
          if (m >= 0) w.emplace_back(static_cast<std::uint32_t>((q / N) * N + static_cast<std::size_t>(m)), val);
        }
        std::sort(w.begin(), w.end());
        E.insert(std::move(w));
      }
    std::vector<SparseVec> gens;
    for (const auto& v : ker)
      if (E.insert(v)) gens.push_back(v);
    RingMatrixBuilder next(d.cols(), gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::size_t blk = SIZE_MAX;
      RingElement e;
      for (const auto& [q, val] : gens[g]) {
        if (q / N != blk) {
          if (!e.is_zero()) next.add(blk, g, std::move(e));
          e = RingElement{};
          blk = q / N;
        }
        e.terms.emplace_back(static_cast<std::uint32_t>(q % N), val);
      }
      if (!e.is_zero()) next.add(blk, g, std::move(e));
    }
    out.differentials.push_back(next.build(*R));
    out.betti.push_back(gens.size());
    if (dim > 200000 && out.warning.empty()) out.warning = "oracle kernels above 200000 coordinates; expect long runs";
  }
  return out;
}

ResolutionAssembly with_unit_summand(const ResolutionAssembly& F, std::size_t r) {
  if (r < 1 || r > F.i_max) throw AssemblyError("unit summand degree out of range");
  ResolutionAssembly G = F;
  const QuotientRing& R = F.K->ring();
  auto grow = [&](std::size_t deg) {
    FBlock b;
    b.label = "unit";
    b.layer = SIZE_MAX;
    b.koszul_degree = 0;
    b.copies = 1;
    b.offset = G.ranks[deg];
    G.blocks[deg].push_back(b);
    G.ranks[deg] += 1;
  };
  grow(r);
  grow(r - 1);
  for (std::size_t t = 1; t <= G.i_max; ++t) {
    const RingMatrix& old = F.differentials[t];
    RingMatrixBuilder b(G.ranks[t - 1], G.ranks[t]);
    b.add_block(0, 0, old, 1, R);
    if (t == r) b.add(G.ranks[t - 1] - 1, G.ranks[t] - 1, R.one());
    G.differentials[t] = b.build(R);
  }
  return G;
}

ResolutionAssembly with_dropped_block(const ResolutionAssembly& F, std::size_t r, std::size_t block) {
  if (r < 1 || r > F.i_max || block >= F.blocks[r].size()) throw AssemblyError("dropped block out of range");
  ResolutionAssembly G = F;
  const QuotientRing& R = F.K->ring();
  G.i_max = r;
  G.blocks.resize(r + 1);
  G.ranks.resize(r + 1);
  G.differentials.resize(r + 1);
  const FBlock gone = F.blocks[r][block];
  const std::size_t len = gone.copies * binomial(F.K->n(), gone.koszul_degree);
  G.blocks[r].erase(G.blocks[r].begin() + static_cast<long>(block));
  for (auto& b : G.blocks[r])
    if (b.offset > gone.offset) b.offset -= len;
  G.ranks[r] -= len;
  const RingMatrix& old = F.differentials[r];
  RingMatrixBuilder b(old.rows(), G.ranks[r]);
  for (std::size_t c = 0, k = 0; c < old.cols(); ++c) {
    if (c >= gone.offset && c < gone.offset + len) continue;
    for (const auto& [row, e] : old.column(c)) b.add(row, k, e);
    ++k;
  }
  G.differentials[r] = b.build(R);
  return G;
}

bool VerificationReport::all_passed() const {
  if (!class_ok) return false;
  return std::all_of(sections.begin(), sections.end(), [](const CheckSection& s) { return s.passed(); });
}

namespace {

std::string resolve_mode(const RingFile& rf, const VerifyOptions& opt, const HomologyRanks& H, std::size_t n) {
  std::string m = opt.mode != "auto" ? opt.mode : rf.mode;
  if (m != "auto") return m;
  if (H.a.size() > 1 && H.a[1] == n && H.codepth == n) {
    bool exterior = true;
    for (std::size_t i = 0; i < H.a.size(); ++i) exterior = exterior && BigInt(H.a[i]) == big_binomial(static_cast<long>(n), static_cast<long>(i));
    if (exterior) return "CI";
  }
  return "T";
}

}  // namespace

VerificationReport full_verify(const RingFile& rf, const VerifyOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  auto R = build_ring(rf);
  auto K = std::make_shared<const KoszulComplex>(R);
  rep.n = R->nvars();
  rep.homology = homology_ranks(*K);
  rep.mode = resolve_mode(rf, opt, rep.homology, rep.n);
  if (rep.mode != "T" && rep.mode != "CI") throw RingFileError("mode must be T, CI or auto");
  const std::size_t i_max = opt.i_max;
  const std::size_t order = std::max(opt.order, i_max);
  auto finish = [&] {
    rep.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };

  std::optional<ClassTBasis> tb;
  std::optional<ClassCIBasis> cb;
  if (rep.mode == "T") {
    tb = class_T_basis(rf, *K);
    rep.basis_supplied = tb.has_value();
    if (tb) {
      rep.certificate = verify_class_T(*tb, K);
    } else {
      auto d = discover_class_T(K);
      rep.certificate = d.certificate;
      tb = d.basis;
      if (!tb) rep.certificate.failure = d.diagnostic.empty() ? rep.certificate.failure : d.diagnostic;
    }
  } else {
    cb = class_CI_basis(rf, *K);
    rep.basis_supplied = cb.has_value();
    if (cb) {
      rep.certificate = verify_class_CI(*cb, K);
    } else {
      cb = discover_class_CI(K, &rep.certificate);
    }
  }
  rep.class_ok = rep.certificate.passed;
  if (!rep.class_ok) {
    rep.class_diagnostic = rep.certificate.failure.empty() ? "class " + rep.mode + " structure not certified"
                                                           : rep.certificate.failure;
    if (!rep.basis_supplied) rep.class_diagnostic += "; supply representatives in the ring file";
    return finish();
  }

  AssemblyOptions aopt;
  aopt.force_regime = opt.force_regime;
  aopt.placement = opt.placement;
  std::shared_ptr<AlphaFamily> fam;
  try {
    if (rep.mode == "T") {
      const auto& H = rep.homology;
      rep.pack = sequence_tables(3, static_cast<long>(H.a[1]), static_cast<long>(H.a[2]), static_cast<long>(H.a[3]), order);
      rep.u = u_table(std::min<std::size_t>(order, 6), 3 * std::min<std::size_t>(order, 6), *rep.pack);
      rep.poincare = poincare_R_closed_T(rep.pack->a1, rep.pack->a2, rep.pack->a3, static_cast<long>(rep.n), order);
      fam = std::make_shared<AlphaFamily>(K, *tb, *rep.pack, opt.placement);
      rep.assembly = assemble_T(K, *tb, *rep.pack, i_max, aopt);
      if (rep.pack->a1 == 4 && rep.pack->a2 == 6 && rep.pack->a3 == 3 && order >= 5)
        rep.notes.push_back("l'_5 = " + rep.pack->ellp_at(5).str() +
                            " follows the recurrence; the printed example list has 1347, a typo");
    } else {
      const std::size_t c = cb->z1.size();
      rep.pack = ci_tables(static_cast<long>(c), order);
      rep.poincare = poincare_CI(static_cast<long>(c), static_cast<long>(rep.n), order).PR;
      rep.assembly = assemble_CI(K, *cb, i_max, aopt);
    }
  } catch (const AssemblyError& e) {
    rep.sections.push_back({"assembly", Status::Fail, e.what(), {}});
    return finish();
  }
  const auto& F = *rep.assembly;
  rep.notes.push_back("sign regime: " + to_string(F.regime));
  rep.notes.push_back("exactness certified for degrees 0.." + std::to_string(i_max - 1) + " only");

  rep.sections.push_back(check_complex(F));
  bool cx = rep.sections.back().passed();
  rep.sections.push_back(check_minimality(F));
  rep.sections.push_back(check_exactness(F, cx));
  rep.sections.push_back(check_rank_agreement(F, *rep.poincare));

  if (rep.mode == "T") {
    CheckSection s = section("series");
    auto g = generating_function_check(*rep.pack, std::min<std::size_t>(order, 10));
    auto cf = closed_form_check(*rep.pack);
    PowerSeries viaA = poincare_T(rep.pack->a1, rep.pack->a2, rep.pack->a3, static_cast<long>(rep.n), order).PR;
    if (!g.passed || !cf.passed) {
      s.status = Status::Fail;
      for (const auto* r : {&g, &cf})
        for (const auto& it : r->items)
          if (!it.ok && s.detail.empty()) s.detail = it.name + ": expected " + it.expected.str() + ", got " + it.actual.str();
    } else if (!(viaA == *rep.poincare)) {
      s.status = Status::Fail;
      s.detail = "(1+t)^n P^A(t,t) differs from the closed form";
    } else {
      s.detail = "generating functions, closed forms and P^R(t) = (1+t)^n P^A(t,t) agree";
    }
    rep.sections.push_back(s);
    rep.sections.push_back(check_chain_maps(*fam, std::min<std::size_t>(3, order)));
    if (opt.graded) {
      try {
        auto G = graded_A_complexes(std::min<std::size_t>(6, order), std::min<std::size_t>(5, order), rep.certificate, *fam);
        rep.sections.push_back(check_graded_exactness(G));
      } catch (const AssemblyError& e) {
        rep.sections.push_back({"graded_exactness", Status::Fail, e.what(), {}});
      }
    }
  } else {
    CheckSection s = section("series");
    auto PA = poincare_CI(static_cast<long>(cb->z1.size()), static_cast<long>(rep.n), order).PA;
    for (std::size_t k = 0; k <= order; ++k)
      if (PA.coeff(k, k) != rep.pack->b_at(static_cast<long>(k)) && s.passed()) {
        s.status = Status::Fail;
        s.detail = "diagonal coefficient " + std::to_string(k) + " of P^A differs from b_k";
      }
    if (s.passed()) s.detail = "P^A = 1/(1-tz)^c with diagonal b_k";
    rep.sections.push_back(s);
  }

  if (opt.oracle) {
    std::size_t top = std::min(opt.oracle_max, i_max);
    rep.oracle = oracle_resolution(R, top);
    CheckSection s = section("oracle");
    for (std::size_t r = 0; r <= top; ++r)
      if (rep.oracle->betti[r] != F.ranks[r] && s.passed()) {
        s.status = Status::Fail;
        s.detail = "degree " + std::to_string(r) + ": oracle " + std::to_string(rep.oracle->betti[r]) + ", assembled " +
                   std::to_string(F.ranks[r]);
      }
    if (s.passed()) s.detail = "oracle Betti numbers equal assembled ranks through degree " + std::to_string(top);
    rep.sections.push_back(s);
  }
  return finish();
}

}  // namespace kres
