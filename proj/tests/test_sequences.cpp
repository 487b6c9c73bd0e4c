#include <algorithm>
#include <doctest.h>

#include <random>

#include "kres/sequences.hpp"

using namespace kres;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<BigInt> head(const std::vector<BigInt>& v, std::size_t n) { return {v.begin(), v.begin() + n}; }

std::vector<std::string> names(const std::vector<TreeMonomial>& layer) {
  std::vector<std::string> out;
  for (const auto& m : layer) out.push_back(m.to_string());
  return out;
}

}  // namespace

TEST_CASE("sequence tables for a = (4, 6, 3)") {
  auto p = sequence_tables(3, 4, 6, 3, 10);
  CHECK(head(p.b, 6) == big({1, 3, 6, 10, 15, 21}));
  CHECK(head(p.ell, 6) == big({1, 4, 13, 41, 129, 406}));
  CHECK(head(p.ellpp, 7) == big({0, 3, 12, 39, 123, 387, 1218}));
  CHECK(head(p.ellp, 5) == big({0, 3, 13, 43, 136}));
  // the recurrence l'_5 = l_3 + 3 l_4
  CHECK(p.ellp[5] == 428);
  CHECK(p.ellp[5] == p.ell[3] + 3 * p.ell[4]);
  for (long k = 1; k <= 10; ++k) CHECK(p.d_at(k) == p.ell_at(k - 1));
  CHECK(p.d_at(0) == 1);
  CHECK(p.ell_kr(2, 3) == 13);
  CHECK(p.ell_kr(2, 4) == 12);
  CHECK(p.ell_kr(2, 5) == 0);
  CHECK(p.ell_at(-1) == 0);
  CHECK(p.ell_at(11) == 0);
}

TEST_CASE("a1 = 3 collapses to the complete intersection counts") {
  auto p = sequence_tables(3, 3, 5, 2, 8);
  for (std::size_t k = 0; k <= 8; ++k) {
    CHECK(p.ell[k] == p.b[k]);
    if (k) CHECK(p.d[k] == 0);
  }
  CHECK_THROWS_AS(sequence_tables(3, 2, 5, 2, 4), SequenceError);
  CHECK_THROWS_AS(sequence_tables(4, 4, 6, 3, 4), SequenceError);
}

TEST_CASE("closed forms") {
  auto p = sequence_tables(3, 4, 6, 3, 6);
  CHECK(p.ell[2] == 16 - 3);
  CHECK(p.ellp[2] == 24 - 12 + 1);
  CHECK(closed_form_check(p).passed);
  std::mt19937 rng(2024);
  for (int t = 0; t < 25; ++t) {
    long a1 = 3 + rng() % 20, a2 = 3 + rng() % 30, a3 = rng() % 15;
    auto q = sequence_tables(3, a1, a2, a3, 12);
    CHECK(closed_form_check(q).passed);
    CHECK(generating_function_check(q, 12).passed);
  }
}

TEST_CASE("big integers do not overflow") {
  auto p = sequence_tables(3, 1000, 1000, 1000, 12);
  // l_k is at least (a1 - 3)^k
  BigInt lower = 1;
  for (int i = 0; i < 12; ++i) lower *= 997;
  CHECK(p.ell[12] > lower);
  CHECK(generating_function_check(p, 12).passed);
}

TEST_CASE("tree layers") {
  CHECK(names(tree_layer(0)) == std::vector<std::string>{"1"});
  CHECK(names(tree_layer(1)) == std::vector<std::string>{"X_{1,1}", "X_{1,2}", "X_{1,3}"});
  CHECK(names(tree_layer(2)) ==
        std::vector<std::string>{"X_{2,2}", "X_{2,3}", "X_{2,4}", "X_{1,1}X_{1,2}", "X_{1,2}X_{1,2}", "X_{1,3}X_{1,2}",
                                 "X_{1,1}X_{1,3}", "X_{1,2}X_{1,3}", "X_{1,3}X_{1,3}"});
  std::size_t expect = 1;
  for (std::size_t k = 0; k <= 8; ++k, expect *= 3) CHECK(tree_layer(k).size() == expect);

  for (std::size_t k = 1; k <= 5; ++k)
    for (const auto& m : tree_layer(k)) {
      CHECK(m.deg1() == static_cast<int>(k));
      auto a = tree_parent(m);
      CHECK(a.parent.deg1() == static_cast<int>(k) - 1);
      auto kids = tree_children(a.parent);
      CHECK(std::find(kids.begin(), kids.end(), m) != kids.end());
    }
  CHECK_THROWS_AS(tree_parent(TreeMonomial{}), SequenceError);
}

TEST_CASE("tree monomial degrees") {
  auto p = sequence_tables(3, 4, 6, 3, 8);
  TreeMonomial m{{{1, 1}, {1, 3}}};
  CHECK(m.deg1() == 2);
  CHECK(m.deg2() == 4);
  CHECK(m.deg3(p) == 4 * 3);
  CHECK(m.deg4() == 2);
  auto a = tree_parent(m);
  CHECK(a.parent.to_string() == "X_{1,3}");
  CHECK(a.i == 1);
  CHECK(a.r == 1);
  auto b = tree_parent(TreeMonomial{{{3, 4}, {1, 2}}});
  CHECK(b.parent.to_string() == "X_{2,2}X_{1,2}");
  CHECK(b.cofactor.to_string() == "X_{1,2}");
}

TEST_CASE("u table") {
  auto p = sequence_tables(3, 4, 6, 3, 8);
  auto u = u_table(8, 24, p);
  CHECK(u[1][1] == 4);
  CHECK(u[2][6] == 9);
  for (std::size_t k = 0; k <= 8; ++k)
    for (std::size_t s = 0; s <= 24; ++s)
      if (s > 3 * k || s < k) CHECK(u[k][s] == 0);
  for (int k = 0; k <= 3; ++k)
    for (int s = 0; s <= 9; ++s) CHECK(u[k][s] == u_closed_form(k, s, p));
}

TEST_CASE("class T Poincare series") {
  auto pr = poincare_T(4, 6, 3, 3, 10);
  CHECK(head(pr.PR.coeffs(), 11) == big({1, 3, 7, 16, 37, 86, 200, 465, 1081, 2513, 5842}));
  CHECK(pr.PR == poincare_R_closed_T(4, 6, 3, 3, 10));

  auto p = sequence_tables(3, 4, 6, 3, 10);
  auto u = u_table(5, 15, p);
  for (std::size_t k = 0; k <= 5; ++k)
    for (std::size_t s = 0; s <= 15; ++s) CHECK(pr.PA.coeff(k, s) == u[k][s]);

  // P^R_i = sum_j C(n, i-j) sum_{k+s=j} u_{k,s}
  auto uu = u_table(10, 30, p);
  for (long i = 0; i <= 10; ++i) {
    BigInt sum = 0;
    for (long k = 0; k <= 10; ++k)
      for (long s = 0; s <= 30; ++s)
        if (k + s <= i) sum += big_binomial(3, i - k - s) * uu[k][s];
    CHECK(sum == pr.PR[i]);
  }
  // degenerate invariants
  auto d = poincare_T(3, 3, 1, 3, 8);
  CHECK(d.PR == poincare_R_closed_T(3, 3, 1, 3, 8));
}

TEST_CASE("complete intersection series") {
  auto ci = poincare_CI(3, 3, 10);
  CHECK(head(ci.PR.coeffs(), 8) == big({1, 3, 6, 10, 15, 21, 28, 36}));
  auto p = ci_tables(3, 10);
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(ci.PA.coeff(k, k) == p.b[k]);
    for (std::size_t s = 0; s <= 12; ++s)
      if (s != k) CHECK(ci.PA.coeff(k, s) == 0);
  }
  CHECK(ci.PR == (PowerSeries(10, {1, 1}).pow(3) * ci.PA.diagonal_sub()));
  auto h = poincare_CI(1, 1, 8);
  for (std::size_t k = 0; k <= 8; ++k) {
    CHECK(h.PA.coeff(k, k) == 1);
    CHECK(h.PR[k] == 1);
  }
  CHECK(generating_function_check(p, 10).passed);
  auto x2y2 = poincare_CI(2, 2, 6);
  CHECK(head(x2y2.PR.coeffs(), 7) == big({1, 2, 3, 4, 5, 6, 7}));
}

TEST_CASE("power series arithmetic") {
  PowerSeries a(6, {1, 2, 3}), one = PowerSeries::one(6);
  CHECK((a * a.reciprocal()) == one);
  CHECK((a - a) == PowerSeries(6, {}));
  CHECK(PowerSeries(6, {1, 1}).pow(3) == PowerSeries(6, {1, 3, 3, 1}));
  CHECK_THROWS(PowerSeries(6, {2, 1}).reciprocal());
  BivariateSeries b = BivariateSeries::one(4);
  b.set(1, 2, 5);
  CHECK((b * b.reciprocal()) == BivariateSeries::one(4));
  CHECK(b.at_z_one()[1] == 5);
  CHECK(b.diagonal_sub()[3] == 5);
}

TEST_CASE("big binomials") {
  CHECK(big_binomial(5, 2) == 10);
  CHECK(big_binomial(5, 7) == 0);
  CHECK(big_binomial(100, 50) == BigInt("100891344545564193334812497256"));
}
