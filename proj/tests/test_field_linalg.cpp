#include <doctest.h>

#include <random>

#include "kres/linalg.hpp"

using namespace kres;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, const PrimeField& F, std::mt19937& rng, int density = 100) {
  DenseMatrix m(r, c);
  std::uniform_int_distribution<Fp> v(0, F.p() - 1);
  for (auto& x : m.data)
    if (static_cast<int>(rng() % 100) < density) x = v(rng);
  return m;
}

// product of a random r x k and k x c matrix, rank <= k
DenseMatrix low_rank(std::size_t r, std::size_t c, std::size_t k, const PrimeField& F, std::mt19937& rng) {
  return multiply(random_matrix(r, k, F, rng), random_matrix(k, c, F, rng), F);
}

bool in_kernel(const DenseMatrix& m, const std::vector<Fp>& v, const PrimeField& F) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    Fp s = 0;
    for (std::size_t c = 0; c < m.cols; ++c) s = F.add(s, F.mul(m.at(r, c), v[c]));
    if (s) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField F;
  CHECK(F.p() == 32003);
  CHECK(F.add(32002, 5) == 4);
  CHECK(F.sub(3, 5) == 32001);
  CHECK(F.neg(0) == 0);
  CHECK(F.mul(F.inv(7), 7) == 1);
  CHECK(F.from_int(-1) == 32002);
  CHECK(F.to_signed(32002) == -1);
  CHECK(F.pow(3, 32002) == 1);
  CHECK_THROWS_AS(F.inv(0), FieldError);
  CHECK_THROWS_AS(PrimeField(32004), FieldError);
  CHECK_THROWS_AS(PrimeField(1), FieldError);

  PrimeField F2(2);
  CHECK(F2.add(1, 1) == 0);
  CHECK(F2.neg(1) == 1);
  CHECK(F2.inv(1) == 1);
}

TEST_CASE("field axioms on random samples") {
  for (std::uint32_t p : {2u, 3u, 101u, 32003u}) {
    PrimeField F(p);
    std::mt19937 rng(p);
    std::uniform_int_distribution<Fp> v(0, p - 1);
    for (int t = 0; t < 500; ++t) {
      Fp a = v(rng), b = v(rng), c = v(rng);
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(F.add(a, b), b) == a);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

TEST_CASE("rank and kernel of small matrices") {
  PrimeField F;
  CHECK(rank(DenseMatrix::identity(3), F) == 3);
  CHECK(kernel_basis(DenseMatrix::identity(3), F).empty());
  DenseMatrix z(3, 3);
  CHECK(rank(z, F) == 0);
  CHECK(kernel_basis(z, F).size() == 3);

  DenseMatrix m(2, 3);
  m.at(0, 0) = 1, m.at(0, 1) = 2, m.at(0, 2) = 3;
  m.at(1, 0) = 2, m.at(1, 1) = 4, m.at(1, 2) = 6;
  CHECK(rank(m, F) == 1);
  auto ker = kernel_basis(m, F);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) CHECK(in_kernel(m, v, F));
  // same matrix over F_2 is (1 0 1; 0 0 0)
  PrimeField F2(2);
  DenseMatrix m2 = m;
  for (auto& x : m2.data) x %= 2;
  CHECK(rank(m2, F2) == 1);
}

TEST_CASE("serial and parallel elimination agree") {
  for (std::uint32_t p : {2u, 32003u}) {
    PrimeField F(p);
    std::mt19937 rng(17 + p);
    for (int t = 0; t < 20; ++t) {
      std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40, k = rng() % 20;
      DenseMatrix m = low_rank(r, c, k, F, rng);
      auto a = linalg::serial::rref(m, F), b = linalg::parallel::rref(m, F);
      CHECK(a.pivots == b.pivots);
      CHECK(a.reduced == b.reduced);
      CHECK(linalg::serial::rank(m, F) == linalg::parallel::rank(m, F));
      CHECK(linalg::serial::rank(m, F) <= k);
    }
  }
}

TEST_CASE("rank plus nullity equals column count") {
  PrimeField F;
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
    DenseMatrix m = low_rank(r, c, rng() % 15, F, rng);
    auto ker = kernel_basis(m, F);
    CHECK(rank(m, F) + ker.size() == c);
    for (const auto& v : ker) CHECK(in_kernel(m, v, F));
    SparseMatrix s = SparseMatrix::from_dense(m);
    CHECK(s.to_dense() == m);
    CHECK(rank(s, F) == rank(m, F));
    CHECK(rank(s, F, Backend::Serial) == rank(m, F, Backend::Serial));
    auto sk = kernel_basis(s, F);
    CHECK(sk.size() == ker.size());
  }
}

TEST_CASE("sparse rank over block structured matrices") {
  PrimeField F;
  std::mt19937 rng(11);
  std::vector<Triplet> t;
  // a dense 3x3 block of rank 2 beside a 3x3 identity
  DenseMatrix a = low_rank(3, 3, 2, F, rng), b = random_matrix(3, 3, F, rng);
  b.at(0, 0) = 1, b.at(0, 1) = 0, b.at(0, 2) = 0;
  b.at(1, 0) = 0, b.at(1, 1) = 1, b.at(1, 2) = 0;
  b.at(2, 0) = 0, b.at(2, 1) = 0, b.at(2, 2) = 1;
  for (std::uint32_t r = 0; r < 3; ++r)
    for (std::uint32_t c = 0; c < 3; ++c) {
      t.push_back({r, c, a.at(r, c)});
      t.push_back({r + 3, c + 3, b.at(r, c)});
    }
  SparseMatrix s = SparseMatrix::from_triplets(6, 6, t, F);
  CHECK(components(s).size() == 4);
  CHECK(rank(s, F) == rank(a, F) + 3);
}

TEST_CASE("linear solver") {
  PrimeField F;
  std::mt19937 rng(23);
  DenseMatrix a = low_rank(8, 6, 4, F, rng);
  LinearSolver S(a, F);
  CHECK(S.rank() == rank(a, F));
  std::uniform_int_distribution<Fp> v(0, F.p() - 1);
  std::vector<Fp> x(6), b(8, 0);
  for (auto& e : x) e = v(rng);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 6; ++c) b[r] = F.add(b[r], F.mul(a.at(r, c), x[c]));
  auto y = S.solve(b);
  REQUIRE(y);
  std::vector<Fp> back(8, 0);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 6; ++c) back[r] = F.add(back[r], F.mul(a.at(r, c), (*y)[c]));
  CHECK(back == b);

  DenseMatrix e(2, 1);
  e.at(0, 0) = 1;
  LinearSolver T(e, F);
  CHECK_FALSE(T.solve({0, 1}));
}

TEST_CASE("incremental echelon basis") {
  PrimeField F;
  EchelonBasis E(4, F);
  CHECK(E.insert({{0, 1}, {2, 5}}));
  CHECK(E.insert({{1, 3}}));
  CHECK_FALSE(E.insert({{0, 2}, {1, 6}, {2, 10}}));
  CHECK(E.size() == 2);
  CHECK(E.contains({{1, 1}}));
  CHECK_FALSE(E.contains({{3, 1}}));
  CHECK(E.reduce({{0, 1}, {2, 5}}).empty());
}

TEST_CASE("sparse products match dense products") {
  PrimeField F;
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    DenseMatrix a = random_matrix(7, 5, F, rng, 30), b = random_matrix(5, 9, F, rng, 30);
    CHECK(multiply(SparseMatrix::from_dense(a), SparseMatrix::from_dense(b), F).to_dense() == multiply(a, b, F));
  }
  SparseVec x = {{0, 1}, {3, 2}}, y = {{0, 32002}, {5, 1}};
  CHECK(sparse_axpy(x, 1, y, F) == SparseVec{{3, 2}, {5, 1}});
}
