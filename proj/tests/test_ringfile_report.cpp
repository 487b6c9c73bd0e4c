#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "kres/report.hpp"

using namespace kres;

namespace {

std::string fixture(const std::string& name) { return std::string(KRES_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t error_line(const std::string& text) {
  try {
    parse_ring_file(text);
  } catch (const RingFileError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("ring file round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(KRES_FIXTURE_DIR)) {
    if (entry.path().extension() != ".ring") continue;
    INFO(entry.path().filename().string());
    RingFile rf = load_ring_file(entry.path().string());
    std::string canon = serialize(rf);
    CHECK(parse_ring_file(canon) == rf);
    CHECK(serialize(parse_ring_file(canon)) == canon);
  }
  RingFile ex = example_T_ring();
  CHECK(parse_ring_file(serialize(ex)) == ex);
}

TEST_CASE("the shipped example matches the built-in one") {
  RingFile a = load_ring_file(fixture("example_T.ring")), b = example_T_ring();
  CHECK(a.variables == b.variables);
  CHECK(a.ideal == b.ideal);
  CHECK(a.cycles == b.cycles);
  CHECK(a.max_degree == std::optional<std::size_t>(8));
}

TEST_CASE("ring file grammar") {
  auto rf = parse_ring_file(
      "# comment\n"
      "characteristic: 7\n"
      "variables: a, b\n"
      "ideal: a^2, b^3  # trailing\n"
      "order: 5\n"
      "cycles:\n"
      "  z1_1 = a * e[1]\n"
      "  z1_2 = b^2*e[2]\n");
  CHECK(rf.characteristic == 7);
  CHECK(rf.variables == std::vector<std::string>{"a", "b"});
  CHECK(rf.ideal == std::vector<std::vector<std::uint32_t>>{{2, 0}, {0, 3}});
  CHECK(rf.order == std::optional<std::size_t>(5));
  CHECK_FALSE(rf.max_degree);
  REQUIRE(rf.cycles.size() == 2);
  CHECK(rf.cycles[0].expr == "a*e[1]");
  CHECK(rf.cycles[1].degree == 1);
  CHECK(rf.cycles[1].index == 2);
  CHECK(rf.mode == "auto");

  CHECK(error_line("variables: x\nideal: x^2\ncolour: red\n") == 3);
  CHECK(error_line("variables: x\nvariables: y\nideal: x^2\n") == 2);
  CHECK(error_line("characteristic: 6\nvariables: x\nideal: x^2\n") == 1);
  CHECK(error_line("variables: x\nideal: x^2\nmode: B\n") == 3);
  CHECK(error_line("variables: x\nideal: x^2\ncycles:\n  w = x*e[1]\n") == 4);
  CHECK(error_line("variables: x\nideal: x^2\ncycles:\n  z1_1 = x*e[1]\n  z1_1 = x*e[1]\n") == 5);
  CHECK(error_line("variables: x\nideal: x^2\nmax_degree: -1\n") == 3);
  CHECK(error_line("variables: x\nideal: q^2\n") != 0);
  CHECK_THROWS_AS(parse_ring_file("variables: x\n"), RingFileError);
  CHECK_THROWS_AS(load_ring_file(fixture("missing.ring")), RingFileError);
}

TEST_CASE("monomials, polynomials and Koszul elements") {
  std::vector<std::string> v = {"x", "y", "z"};
  CHECK(parse_monomial("x*y^2", v).exps == std::vector<std::uint32_t>{1, 2, 0});
  CHECK_THROWS_AS(parse_monomial("1", v), RingFileError);
  CHECK_THROWS_AS(parse_monomial("x*", v), RingFileError);
  CHECK_THROWS_AS(parse_monomial("w", v), RingFileError);
  PrimeField F;
  Polynomial p = parse_polynomial("(x + y)*(x - y) + 3", v, F);
  CHECK(p.terms.size() == 3);
  CHECK(p.terms.at(Monomial({2, 0, 0})) == 1);
  CHECK(p.terms.at(Monomial({0, 2, 0})) == F.neg(1));
  CHECK(p.terms.at(Monomial({0, 0, 0})) == 3);

  const auto& E = kres::test::example();
  const auto& K = *E.K;
  const auto& R = K.ring();
  auto z = parse_koszul_element("y*z*e[1,2] - x*e[1,3]*z", 2, K);
  auto want = K.add(K.basis_element(0b011, R.mul(R.var(1), R.var(2))),
                    K.basis_element(0b101, R.neg(R.mul(R.var(0), R.var(2)))));
  CHECK(z == want);
  CHECK_THROWS_AS(parse_koszul_element("x*e[2,1]", 2, K), RingFileError);
  CHECK_THROWS_AS(parse_koszul_element("x", 1, K), RingFileError);
  CHECK_THROWS_AS(parse_koszul_element("x*e[1,2]", 1, K), RingFileError);
  CHECK_THROWS_AS(parse_koszul_element("e[1]*e[2]", 2, K), RingFileError);
  CHECK_THROWS_AS(parse_koszul_element("x*e[1] + y", 1, K), RingFileError);
}

TEST_CASE("class bases from a ring file") {
  RingFile rf = example_T_ring();
  auto R = build_ring(rf);
  auto K = std::make_shared<KoszulComplex>(R);
  auto b = class_T_basis(rf, *K);
  REQUIRE(b);
  CHECK(b->z1.size() == 4);
  CHECK(b->names2 == std::vector<std::string>{"z2_1", "z2_2", "z2_3"});
  CHECK(verify_class_T(*b, K).passed);

  RingFile gap = rf;
  gap.cycles.erase(gap.cycles.begin() + 1);
  CHECK_THROWS_AS(class_T_basis(gap, *K), RingFileError);

  RingFile none = rf;
  none.cycles.clear();
  CHECK_FALSE(class_T_basis(none, *K));
  CHECK_FALSE(class_CI_basis(none, *K));

  auto ci = class_CI_basis(load_ring_file(fixture("ci_xyz.ring")), *std::make_shared<KoszulComplex>(
                                                                          build_ring(load_ring_file(fixture("ci_xyz.ring")))));
  REQUIRE(ci);
  CHECK(ci->z1.size() == 3);

  CHECK_THROWS_AS(build_ring(load_ring_file(fixture("non_artinian.ring"))), NonArtinianError);
}

TEST_CASE("reports") {
  CHECK(big_json(BigInt(42)) == 42);
  BigInt huge = BigInt(1) << 80;
  CHECK(big_json(huge) == huge.str());

  auto d = document("x", false);
  CHECK(d["schema_version"] == kSchemaVersion);
  CHECK_FALSE(d.contains("timestamp"));
  CHECK(document("x", true).contains("timestamp"));

  RingFile rf = example_T_ring();
  VerifyOptions o;
  o.i_max = 5;
  auto rep = full_verify(rf, o);
  ReportOptions ro;
  ro.timestamp = false;
  auto j = report_json(rf, rep, ro);
  CHECK(j["all_passed"] == true);
  CHECK(j["mode"] == "T");
  CHECK(j["assembly"]["sign_regime"] == "cone-sign diagonal, +phi");
  CHECK(j["assembly"]["ranks"] == nlohmann::json({1, 3, 7, 16, 37, 86}));
  CHECK(j["sequences"]["l_prime"][5] == 428);
  CHECK(j["ring"]["cycles"]["z1_4"] == "y*z*e[1]");
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK_FALSE(j["assembly"].contains("differentials"));
  for (const auto& s : j["verification"]) CHECK(s["status"] == "pass");

  // identical input gives identical output
  auto again = report_json(rf, full_verify(rf, o), ro);
  CHECK(j.dump() == again.dump());

  ro.emit_matrices = true;
  auto m = report_json(rf, rep, ro);
  REQUIRE(m["assembly"].contains("differentials"));
  CHECK(m["assembly"]["differentials"][0]["rows"] == 1);
  CHECK(m["assembly"]["differentials"][0]["cols"] == 3);

  auto PR = poincare_T(4, 6, 3, 3, 10).PR;
  auto b = betti_json("T", 3, 3, 4, 6, 3, PR, nullptr, false);
  CHECK(b["betti"][10] == 5842);
  CHECK(b["a"] == nlohmann::json({4, 6, 3}));
  CHECK_FALSE(b.contains("u"));
}
