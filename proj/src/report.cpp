#include "kres/report.hpp"

#include <chrono>
#include <ctime>
#include <limits>

namespace kres {

using nlohmann::json;

json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json series_json(const PowerSeries& s) {
  json a = json::array();
  for (const auto& c : s.coeffs()) a.push_back(big_json(c));
  return a;
}

json document(const std::string& kind, bool timestamp) {
  json d;
  d["schema_version"] = kSchemaVersion;
  d["kind"] = kind;
  if (timestamp) {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    d["timestamp"] = buf;
  }
  return d;
}

json ring_json(const RingFile& rf) {
  json r;
  r["characteristic"] = rf.characteristic;
  r["variables"] = rf.variables;
  json ideal = json::array();
  for (const auto& e : rf.ideal) ideal.push_back(format_monomial(Monomial(e), rf.variables));
  r["ideal"] = ideal;
  json cyc = json::object();
  for (const auto& c : rf.cycles) cyc[c.name] = c.expr;
  r["cycles"] = cyc;
  return r;
}

json pack_json(const SequencePack& p) {
  json j;
  j["mode"] = to_string(p.mode);
  j["c"] = p.c;
  if (p.mode == ClassMode::T) {
    j["a"] = {p.a1, p.a2, p.a3};
  }
  auto arr = [](const std::vector<BigInt>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(big_json(x));
    return a;
  };
  j["b"] = arr(p.b);
  if (p.mode == ClassMode::T) {
    j["l"] = arr(p.ell);
    j["l_prime"] = arr(p.ellp);
    j["l_double_prime"] = arr(p.ellpp);
    j["d"] = arr(p.d);
  }
  return j;
}

json u_json(const UTable& u) {
  json rows = json::array();
  for (const auto& row : u) {
    json r = json::array();
    for (const auto& x : row) r.push_back(big_json(x));
    rows.push_back(r);
  }
  return rows;
}

json cycle_matrix_json(const CycleMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["degree"] = m.degree();
  json e = json::array();
  for (const auto& x : m.entries()) e.push_back({x.row, x.col, m.palette()[x.palette].label});
  j["entries"] = e;
  return j;
}

json assembly_json(const ResolutionAssembly& F, bool emit_matrices) {
  json j;
  j["i_max"] = F.i_max;
  j["ranks"] = F.ranks;
  j["sign_regime"] = to_string(F.regime);
  json arb = json::array();
  for (const auto& s : F.arbiter) arb.push_back({{"regime", to_string(s.regime)}, {"passed", s.passed}, {"detail", s.detail}});
  j["arbiter"] = arb;
  json degs = json::array();
  for (std::size_t r = 0; r < F.blocks.size(); ++r) {
    json blocks = json::array();
    for (const auto& b : F.blocks[r]) {
      json x;
      x["block"] = b.label;
      x["layer"] = b.layer;
      x["shift"] = b.shift;
      x["koszul_degree"] = b.koszul_degree;
      x["copies"] = b.copies;
      x["offset"] = b.offset;
      x["deg"] = {b.deg1, b.deg2, big_json(b.deg3)};
      blocks.push_back(x);
    }
    degs.push_back({{"degree", r}, {"rank", F.ranks[r]}, {"blocks", blocks}});
  }
  j["components"] = degs;
  if (emit_matrices) {
    const QuotientRing& R = F.K->ring();
    json mats = json::array();
    for (std::size_t r = 1; r < F.differentials.size(); ++r) {
      const RingMatrix& d = F.differentials[r];
      json e = json::array();
      for (std::size_t c = 0; c < d.cols(); ++c)
        for (const auto& [row, v] : d.column(c)) e.push_back({row, c, R.format(v)});
      mats.push_back({{"degree", r}, {"rows", d.rows()}, {"cols", d.cols()}, {"entries", e}});
    }
    j["differentials"] = mats;
  }
  return j;
}

json section_json(const CheckSection& s) {
  json j;
  j["name"] = s.name;
  j["status"] = to_string(s.status);
  j["detail"] = s.detail;
  if (!s.degrees.empty()) {
    json d = json::array();
    for (const auto& x : s.degrees)
      d.push_back({{"degree", x.degree},
                   {"free_rank", x.free_rank},
                   {"flat_dim", x.flat_dim},
                   {"rank_out", x.rank_out},
                   {"kernel_dim", x.kernel_dim},
                   {"image_dim", x.image_dim},
                   {"homology", x.homology}});
    j["degrees"] = d;
  }
  return j;
}

json report_json(const RingFile& rf, const VerificationReport& rep, const ReportOptions& opt) {
  json d = document("resolution", opt.timestamp);
  d["ring"] = ring_json(rf);
  d["mode"] = rep.mode;
  d["n"] = rep.n;
  d["a"] = rep.homology.a;
  d["codepth"] = rep.homology.codepth;
  json cls;
  cls["passed"] = rep.class_ok;
  cls["basis_supplied"] = rep.basis_supplied;
  if (!rep.class_ok) cls["diagnostic"] = rep.class_diagnostic;
  json prods = json::array();
  for (const auto& p : rep.certificate.products)
    prods.push_back({{"left", p.left}, {"right", p.right}, {"expected", p.expected}, {"ok", p.ok}});
  cls["products"] = prods;
  d["class"] = cls;
  if (rep.pack) d["sequences"] = pack_json(*rep.pack);
  if (rep.u) d["u"] = u_json(*rep.u);
  if (rep.poincare) d["poincare"] = series_json(*rep.poincare);
  if (rep.assembly) d["assembly"] = assembly_json(*rep.assembly, opt.emit_matrices);
  json secs = json::array();
  for (const auto& s : rep.sections) secs.push_back(section_json(s));
  d["verification"] = secs;
  if (rep.oracle) {
    d["oracle"] = {{"betti", rep.oracle->betti}};
    if (!rep.oracle->warning.empty()) d["oracle"]["warning"] = rep.oracle->warning;
  }
  d["notes"] = rep.notes;
  d["all_passed"] = rep.all_passed();
  if (opt.timestamp) d["elapsed_ms"] = rep.elapsed_ms;
  return d;
}

json betti_json(const std::string& mode, long n, long c, long a1, long a2, long a3, const PowerSeries& PR, const UTable* u,
                bool timestamp) {
  json d = document("betti", timestamp);
  d["mode"] = mode;
  d["n"] = n;
  d["c"] = c;
  if (mode == "T") d["a"] = {a1, a2, a3};
  d["betti"] = series_json(PR);
  if (u) d["u"] = u_json(*u);
  return d;
}

}  // namespace kres
