// kres: minimal resolutions of the residue field over small Artinian monomial rings

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kres/report.hpp"

using namespace kres;

namespace {

enum Exit { kOk = 0, kInput = 2, kClass = 3, kVerify = 4 };

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class T>
std::string join_num(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) {
    std::ostringstream o;
    o << x;
    s.push_back(o.str());
  }
  return join(s);
}

std::string ring_line(const RingFile& rf) {
  std::vector<std::string> g;
  for (const auto& e : rf.ideal) g.push_back(format_monomial(Monomial(e), rf.variables));
  return "F_" + std::to_string(rf.characteristic) + "[" + join(rf.variables, ",") + "]/(" + join(g) + ")";
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw RingFileError("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

// dashed block layout, one row per line
std::string pretty(const CycleMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t w = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells[r][c] = m.label_at(r, c);
      w = std::max(w, cells[r][c].size());
    }
  auto is_cut = [](const std::vector<std::size_t>& cuts, std::size_t i) {
    return std::find(cuts.begin(), cuts.end(), i) != cuts.end();
  };
  std::ostringstream o;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r && is_cut(m.row_cuts(), r)) {
      std::size_t len = m.cols() * (w + 1) + 2 * m.col_cuts().size();
      o << "  " << std::string(len, '-') << "\n";
    }
    o << "  ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c && is_cut(m.col_cuts(), c)) o << "| ";
      o << cells[r][c] << std::string(w + 1 - cells[r][c].size(), ' ');
    }
    o << "\n";
  }
  if (m.rows() == 0) o << "  (" << m.rows() << "x" << m.cols() << ")\n";
  return o.str();
}

void print_summary(const RingFile& rf, const VerificationReport& rep) {
  std::cout << "ring: " << ring_line(rf) << "\n";
  std::cout << "mode: " << rep.mode << "   a = " << join_num(rep.homology.a) << "   codepth " << rep.homology.codepth
            << "\n";
  std::cout << "class " << rep.mode << " certificate: " << (rep.class_ok ? "pass" : "fail")
            << (rep.basis_supplied ? " (supplied cycles)" : " (computed cycles)") << "\n";
  if (!rep.class_ok) std::cout << "  " << rep.class_diagnostic << "\n";
  if (rep.assembly) {
    std::cout << "sign regime: " << to_string(rep.assembly->regime) << "\n";
    for (const auto& s : rep.assembly->arbiter)
      std::cout << "  arbiter " << to_string(s.regime) << ": " << (s.passed ? "ok" : "rejected") << " (" << s.detail
                << ")\n";
    std::cout << "ranks: " << join_num(rep.assembly->ranks) << "\n";
  }
  for (const auto& s : rep.sections) {
    std::string name = s.name;
    name.resize(18, ' ');
    std::cout << name << to_string(s.status) << "  " << s.detail << "\n";
  }
  if (rep.oracle) {
    std::cout << "oracle betti: " << join_num(rep.oracle->betti) << "\n";
    if (!rep.oracle->warning.empty()) std::cout << "  " << rep.oracle->warning << "\n";
  }
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
}

int exit_for(const VerificationReport& rep) {
  if (!rep.class_ok) return kClass;
  return rep.all_passed() ? kOk : kVerify;
}

std::string series_line(const PowerSeries& s) {
  std::vector<std::string> v;
  for (const auto& c : s.coeffs()) v.push_back(c.str());
  return join(v);
}

std::string big_line(const std::vector<BigInt>& s) {
  std::vector<std::string> v;
  for (const auto& c : s) v.push_back(c.str());
  return join(v, ",");
}

void print_u(const UTable& u) {
  std::cout << "u_{k,s} (rows k, columns s):\n";
  for (std::size_t k = 0; k < u.size(); ++k) {
    std::cout << "  k=" << k << ":";
    for (const auto& x : u[k]) std::cout << " " << x;
    std::cout << "\n";
  }
}

struct Common {
  std::string ring, mode = "auto", out;
  std::optional<std::size_t> max_degree, order;
  std::optional<std::uint32_t> characteristic;
  bool no_timestamp = false;
};

RingFile load(const Common& c) {
  RingFile rf = load_ring_file(c.ring);
  if (c.characteristic) {
    if (!is_prime(*c.characteristic)) throw RingFileError("--char must be prime");
    rf.characteristic = *c.characteristic;
  }
  return rf;
}

VerifyOptions verify_options(const Common& c, const RingFile& rf) {
  VerifyOptions o;
  o.mode = c.mode;
  o.i_max = c.max_degree ? *c.max_degree : rf.max_degree.value_or(8);
  o.order = c.order ? *c.order : rf.order.value_or(12);
  if (o.i_max < 2) throw RingFileError("max degree must be at least 2");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kres: minimal free resolutions of k over codepth 3 class T and complete intersection rings"};
  app.require_subcommand(1);

  Common betti_c, res_c, ver_c;
  std::optional<long> n_opt, c_opt;
  std::vector<long> a_opt;
  auto* betti = app.add_subcommand("betti", "Betti numbers from the Poincare series");
  betti->add_option("--ring", betti_c.ring, "ring file");
  betti->add_option("--mode", betti_c.mode, "T, CI or auto")->check(CLI::IsMember({"T", "CI", "auto"}));
  betti->add_option("--order", betti_c.order, "series order");
  betti->add_option("--out", betti_c.out, "JSON output path, - for stdout");
  betti->add_option("--char", betti_c.characteristic, "override the characteristic");
  betti->add_flag("--no-timestamp", betti_c.no_timestamp);
  betti->add_option("--n", n_opt, "embedding dimension");
  betti->add_option("--c", c_opt, "codepth");
  betti->add_option("--a", a_opt, "a1 a2 a3 (class T)")->expected(3)->delimiter(',');

  bool emit = false, oracle = false, res_oracle = false, flip = false;
  auto* resolve = app.add_subcommand("resolve", "assemble and verify the resolution");
  auto* verify = app.add_subcommand("verify", "verification report only");
  for (auto [cmd, c] : {std::pair{resolve, &res_c}, std::pair{verify, &ver_c}}) {
    cmd->add_option("--ring", c->ring, "ring file")->required();
    cmd->add_option("--mode", c->mode, "T, CI or auto")->check(CLI::IsMember({"T", "CI", "auto"}));
    cmd->add_option("--max-degree", c->max_degree, "top homological degree");
    cmd->add_option("--order", c->order, "series order");
    cmd->add_option("--out", c->out, "JSON output path, - for stdout");
    cmd->add_option("--char", c->characteristic, "override the characteristic");
    cmd->add_flag("--no-timestamp", c->no_timestamp);
  }
  resolve->add_flag("--emit-matrices", emit, "include every differential in the JSON");
  resolve->add_flag("--oracle", res_oracle, "compare with the brute-force syzygy oracle");
  verify->add_flag("--oracle", oracle, "compare with the brute-force syzygy oracle");
  verify->add_flag("--flip-sign", flip)->group("");  // test hook

  Common demo_c;
  auto* demo = app.add_subcommand("demo", "built-in class T example x^2, y^2, z^2, xyz");
  demo->add_option("--out", demo_c.out, "JSON output path, - for stdout");
  demo->add_option("--char", demo_c.characteristic, "characteristic");
  demo->add_flag("--no-timestamp", demo_c.no_timestamp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  try {
    if (*betti) {
      std::size_t order = betti_c.order.value_or(12);
      long n = 0, c = 0, a1 = 0, a2 = 0, a3 = 0;
      std::string mode = betti_c.mode;
      RingFile rf;
      if (!betti_c.ring.empty()) {
        rf = load(betti_c);
        if (!betti_c.order && rf.order) order = *rf.order;
        auto R = build_ring(rf);
        KoszulComplex K(R);
        auto H = homology_ranks(K);
        n = static_cast<long>(R->nvars());
        c = static_cast<long>(H.codepth);
        if (mode == "auto") mode = rf.mode;
        if (mode == "auto") {
          bool ext = true;
          for (std::size_t i = 0; i < H.a.size(); ++i)
            ext = ext && BigInt(H.a[i]) == big_binomial(n, static_cast<long>(i));
          mode = ext ? "CI" : "T";
        }
        if (mode == "T") {
          if (H.codepth != 3) throw SequenceError("class T needs codepth 3");
          a1 = static_cast<long>(H.a[1]), a2 = static_cast<long>(H.a[2]), a3 = static_cast<long>(H.a[3]);
        }
      } else {
        if (!n_opt) throw SequenceError("give --ring or --n with --c or --a");
        n = *n_opt;
        if (mode == "auto") mode = a_opt.empty() ? "CI" : "T";
        if (mode == "T") {
          if (a_opt.size() != 3) throw SequenceError("class T needs --a a1,a2,a3");
          c = 3, a1 = a_opt[0], a2 = a_opt[1], a3 = a_opt[2];
        } else {
          if (!c_opt) throw SequenceError("complete intersection needs --c");
          c = *c_opt;
        }
        if (n < c || c < 1) throw SequenceError("need 1 <= c <= n");
      }
      PowerSeries PR;
      std::optional<UTable> u;
      if (mode == "T") {
        auto pack = sequence_tables(3, a1, a2, a3, std::max<std::size_t>(order, 1));
        PR = poincare_R_closed_T(a1, a2, a3, n, order);
        std::size_t k = std::min<std::size_t>(order, 6);
        u = u_table(k, 3 * k, pack);
      } else {
        PR = poincare_CI(c, n, order).PR;
      }
      std::cout << "mode: " << mode << "  n = " << n << "  c = " << c;
      if (mode == "T") std::cout << "  a = " << a1 << "," << a2 << "," << a3;
      std::cout << "\nbetti: " << series_line(PR) << "\n";
      if (u) print_u(*u);
      write_json(betti_json(mode, n, c, a1, a2, a3, PR, u ? &*u : nullptr, !betti_c.no_timestamp), betti_c.out);
      return kOk;
    }

    if (*resolve || *verify) {
      const Common& c = *resolve ? res_c : ver_c;
      RingFile rf = load(c);
      VerifyOptions o = verify_options(c, rf);
      o.oracle = *resolve ? res_oracle : oracle;
      if (flip) o.force_regime = SignRegime::ShiftOnlyPlus;
      auto rep = full_verify(rf, o);
      print_summary(rf, rep);
      ReportOptions ro;
      ro.timestamp = !c.no_timestamp;
      ro.emit_matrices = *resolve && emit;
      write_json(report_json(rf, rep, ro), c.out);
      return exit_for(rep);
    }

    if (*demo) {
      RingFile rf = example_T_ring(demo_c.characteristic.value_or(32003));
      if (!is_prime(rf.characteristic)) throw RingFileError("--char must be prime");
      VerifyOptions o;
      o.mode = "T";
      o.i_max = 7;
      o.order = 10;
      auto rep = full_verify(rf, o);
      print_summary(rf, rep);
      if (rep.class_ok && rep.pack) {
        auto R = build_ring(rf);
        auto K = std::make_shared<const KoszulComplex>(R);
        auto basis = *class_T_basis(rf, *K);
        AlphaFamily fam(K, basis, *rep.pack);
        std::cout << "\ncycles:\n";
        auto show = [&](const std::vector<KoszulElement>& z, const std::vector<std::string>& names) {
          for (std::size_t i = 0; i < z.size(); ++i) std::cout << "  " << names[i] << " = " << K->format(z[i]) << "\n";
        };
        show(basis.z1, basis.names1);
        show(basis.z2, basis.names2);
        show(basis.z3, basis.names3);
        for (int j = 1; j <= 3; ++j) std::cout << "gamma_" << j << ":\n" << pretty(fam.gamma(j));
        for (long k = 1; k <= 3; ++k)
          for (long r = k; r <= k + 2; ++r) {
            if (k == 3 && r == 5) continue;
            const auto& a = fam.alpha(k, r);
            std::cout << "alpha_{" << k << "," << r << "} (" << a.rows() << "x" << a.cols() << "):\n" << pretty(a);
          }
        const auto& P = *rep.pack;
        std::vector<BigInt> b(P.b.begin(), P.b.begin() + 6), l(P.ell.begin(), P.ell.begin() + 6),
            lp(P.ellp.begin(), P.ellp.begin() + 6), lpp(P.ellpp.begin(), P.ellpp.begin() + 7);
        std::cout << "b_k: " << big_line(b) << "\n";
        std::cout << "l_{k,k}: " << big_line(l) << "\n";
        std::cout << "l_{k,k+1}: " << big_line(lp) << "\n";
        std::cout << "l_{k,k+2}: " << big_line(lpp) << "\n";
        if (rep.assembly) std::cout << "betti: " << join_num(rep.assembly->ranks) << "\n";
      }
      ReportOptions ro;
      ro.timestamp = !demo_c.no_timestamp;
      write_json(report_json(rf, rep, ro), demo_c.out);
      return exit_for(rep);
    }
  } catch (const RingFileError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NonArtinianError& e) {
    std::cerr << "non-Artinian ring: " << e.what() << "\n";
    return kInput;
  } catch (const RingError& e) {
    std::cerr << "ring error: " << e.what() << "\n";
    return kInput;
  } catch (const FieldError& e) {
    std::cerr << "field error: " << e.what() << "\n";
    return kInput;
  } catch (const SequenceError& e) {
    std::cerr << "invalid invariants: " << e.what() << "\n";
    return kInput;
  } catch (const HomologyError& e) {
    std::cerr << "class verification failed: " << e.what() << "\n";
    return kClass;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerify;
  }
  return kOk;
}
