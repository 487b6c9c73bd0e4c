#include <doctest.h>

#include <random>

#include "common.hpp"

using namespace kres;
using kres::test::ring;

namespace {

std::vector<std::string> basis_names(const QuotientRing& R) {
  std::vector<std::string> out;
  for (const auto& m : R.std_basis()) out.push_back(format_monomial(m, R.variables()));
  return out;
}

Polynomial poly(const QuotientRing& R, std::vector<std::pair<std::vector<std::uint32_t>, std::int64_t>> terms) {
  Polynomial f(R.nvars());
  for (auto& [e, c] : terms) f = add(f, Polynomial::term(Monomial(e), R.field().from_int(c)), R.field());
  return f;
}

RingMatrix random_ring_matrix(const QuotientRing& R, std::size_t r, std::size_t c, std::mt19937& rng) {
  RingMatrixBuilder b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % 3) b.add(i, j, kres::test::random_element(R, rng));
  return b.build(R);
}

}  // namespace

TEST_CASE("standard bases") {
  auto R = ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}});
  CHECK(R->dim() == 7);
  CHECK(basis_names(*R) == std::vector<std::string>{"1", "x", "y", "z", "x*y", "x*z", "y*z"});
  CHECK(basis_names(*ring(32003, {"x"}, {{2}})) == std::vector<std::string>{"1", "x"});
  CHECK(basis_names(*ring(32003, {"x", "y"}, {{2, 0}, {0, 2}})) == std::vector<std::string>{"1", "x", "y", "x*y"});
}

TEST_CASE("normal forms in x^2, y^2, z^2, xyz") {
  auto R = ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}});
  CHECK(R->normal_form(poly(*R, {{{2, 0, 0}, 1}})).is_zero());
  CHECK(R->normal_form(poly(*R, {{{1, 1, 0}, 1}})) == poly(*R, {{{1, 1, 0}, 1}}));
  // x * (x + y)
  Polynomial xy = multiply(poly(*R, {{{1, 0, 0}, 1}}), poly(*R, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}}), R->field());
  CHECK(R->normal_form(xy) == poly(*R, {{{1, 1, 0}, 1}}));
  CHECK(R->in_ideal(Monomial({1, 1, 1})));
  CHECK_FALSE(R->in_ideal(Monomial({0, 1, 1})));
  CHECK(R->product(R->variable_index(0), R->variable_index(0)) == -1);
  CHECK(R->format(R->mul(R->var(1), R->var(2))) == "y*z");
}

TEST_CASE("normal form is linear and idempotent") {
  auto R = ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}});
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::uint32_t> e(0, 3), c(1, 32002);
  auto rand_poly = [&] {
    Polynomial f(3);
    for (int t = 0; t < 6; ++t) f = add(f, Polynomial::term(Monomial({e(rng), e(rng), e(rng)}), c(rng)), R->field());
    return f;
  };
  for (int t = 0; t < 200; ++t) {
    Polynomial f = rand_poly(), g = rand_poly();
    CHECK(R->normal_form(add(f, g, R->field())) == add(R->normal_form(f), R->normal_form(g), R->field()));
    CHECK(R->normal_form(R->normal_form(f)) == R->normal_form(f));
    CHECK(R->lift(R->reduce(f)) == R->normal_form(f));
  }
  for (const auto& g : R->ideal_gens()) CHECK(R->normal_form(Polynomial::term(g, 1)).is_zero());
}

TEST_CASE("ring arithmetic axioms on random elements") {
  for (std::uint32_t p : {2u, 32003u}) {
    auto R = ring(p, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}});
    std::mt19937 rng(p);
    for (int t = 0; t < 100; ++t) {
      auto a = kres::test::random_element(*R, rng), b = kres::test::random_element(*R, rng),
           c = kres::test::random_element(*R, rng);
      CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
      CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
      CHECK(R->mul(a, b) == R->mul(b, a));
      CHECK(R->sub(a, a).is_zero());
      CHECK(R->mul(R->one(), a) == a);
    }
  }
}

TEST_CASE("ring construction gates") {
  CHECK_THROWS_AS(ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {1, 1, 1}}), NonArtinianError);
  CHECK_THROWS_AS(ring(32003, {"x"}, {}), NonArtinianError);
  CHECK_THROWS_AS(ring(32003, {"x", "y"}, {{1, 0}, {0, 2}}), RingError);
  CHECK_THROWS_AS(ring(32003, {"x", "x"}, {{2, 0}, {0, 2}}), RingError);
}

TEST_CASE("deglex order") {
  CHECK(deglex_less(Monomial({0, 0, 1}), Monomial({1, 1, 0})));
  CHECK(deglex_less(Monomial({1, 0, 0}), Monomial({0, 1, 0})));
  CHECK(deglex_less(Monomial({1, 0, 1}), Monomial({0, 1, 1})));
  CHECK_FALSE(deglex_less(Monomial({0, 1, 0}), Monomial({1, 0, 0})));
}

TEST_CASE("flattening") {
  auto R = ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}});
  const PrimeField& F = R->field();
  RingMatrixBuilder b(1, 1);
  b.add(0, 0, R->var(0));
  DenseMatrix mx = flatten(b.build(*R), *R).to_dense();
  // basis 1, x, y, z, xy, xz, yz: x sends 1->x, y->xy, z->xz
  DenseMatrix want(7, 7);
  want.at(1, 0) = 1, want.at(4, 2) = 1, want.at(5, 3) = 1;
  CHECK(mx == want);
  CHECK(flatten(RingMatrix(2, 3), *R).is_zero());
  CHECK(flatten(RingMatrix::identity(2, *R), *R).to_dense() == DenseMatrix::identity(14));

  std::mt19937 rng(41);
  for (int t = 0; t < 20; ++t) {
    RingMatrix M = random_ring_matrix(*R, 3, 4, rng), N = random_ring_matrix(*R, 4, 2, rng);
    CHECK(flatten(multiply(M, N, *R), *R).to_dense() ==
          multiply(flatten(M, *R).to_dense(), flatten(N, *R).to_dense(), F));
    RingMatrix P = random_ring_matrix(*R, 3, 4, rng);
    CHECK(flatten(add(M, P, *R), *R).to_dense() == [&] {
      DenseMatrix a = flatten(M, *R).to_dense(), c = flatten(P, *R).to_dense();
      for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] = F.add(a.data[i], c.data[i]);
      return a;
    }());
  }
}

TEST_CASE("ring matrix blocks") {
  auto R = ring(32003, {"x", "y"}, {{2, 0}, {0, 2}});
  RingMatrixBuilder b(3, 3);
  b.add(0, 0, R->var(0));
  b.add(2, 1, R->var(1));
  b.add(2, 1, R->var(1));
  RingMatrix m = b.build(*R);
  CHECK(m.nnz() == 2);
  CHECK(m.at(2, 1) == R->scale(R->var(1), 2));
  CHECK(m.first_nonzero() == std::make_pair(std::size_t{0}, std::size_t{0}));
  RingMatrix blk = m.block(1, 1, 2, 2);
  CHECK(blk.at(1, 0) == R->scale(R->var(1), 2));
  CHECK(blk.nnz() == 1);
}
