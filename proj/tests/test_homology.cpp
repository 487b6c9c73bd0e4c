#include <doctest.h>

#include <random>

#include "common.hpp"

using namespace kres;
using kres::test::example;
using kres::test::koszul;
using kres::test::ring;

namespace {

std::vector<Fp> unit(std::size_t n, std::size_t i) {
  std::vector<Fp> v(n, 0);
  v[i] = 1;
  return v;
}

bool is_zero(const std::vector<Fp>& v) {
  for (Fp x : v)
    if (x) return false;
  return true;
}

ClassCIBasis diagonal_ci(const KoszulComplex& K) {
  ClassCIBasis b;
  for (std::size_t u = 0; u < K.n(); ++u) b.z1.push_back(K.basis_element(Subset{1} << u, K.ring().var(u)));
  b.fill_names();
  return b;
}

}  // namespace

TEST_CASE("Koszul homology ranks") {
  auto H = homology_ranks(example().K->ring_ptr());
  CHECK(H.a == std::vector<std::size_t>{1, 4, 6, 3});
  CHECK(H.codepth == 3);
  CHECK(homology_ranks(ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})).a ==
        std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(homology_ranks(ring(2, {"x"}, {{2}})).a == std::vector<std::size_t>{1, 1});
  CHECK(homology_ranks(example(2).K->ring_ptr()).a == std::vector<std::size_t>{1, 4, 6, 3});
}

TEST_CASE("rank plus kernel per Koszul degree") {
  const auto& K = *example().K;
  const auto& R = K.ring();
  for (std::size_t i = 0; i <= K.n(); ++i) {
    SparseMatrix d = flatten(K.differential(i), R);
    std::size_t rk = rank(d, R.field());
    CHECK(rk + kernel_basis(d, R.field()).size() == K.rank(i) * R.dim());
  }
}

TEST_CASE("homology classes in the adapted basis") {
  const auto& E = example();
  const auto& K = *E.K;
  const auto& R = K.ring();
  REQUIRE(E.cert.passed);
  const HomologyAlgebra& H = *E.cert.adapted;
  CHECK(H.class_of(K.basis_element(0b001, R.var(0))) == unit(4, 0));
  auto bd = K.boundary(K.basis_element(0b011, R.var(2)));
  CHECK(is_zero(H.class_of(bd)));
  auto z = K.add(K.basis_element(0b001, R.var(0)), bd);
  CHECK(H.class_of(z) == unit(4, 0));
  CHECK_THROWS_AS(H.class_of(K.basis_element(0b001, R.one())), NotACycleError);

  // A_2 = [z1_1 z1_2], [z1_2 z1_3], [z1_1 z1_3], z2_1..z2_3
  const auto& z1 = E.basis.z1;
  CHECK(H.product_class(z1[0], z1[1]) == unit(6, 0));
  CHECK(H.product_class(z1[1], z1[2]) == unit(6, 1));
  CHECK(H.product_class(z1[0], z1[2]) == unit(6, 2));
  CHECK(is_zero(H.product_class(z1[0], z1[3])));
  CHECK(H.class_of(K.basis_element(0b011, R.mul(R.var(0), R.var(1)))) == unit(6, 0));
  CHECK(H.class_of(K.basis_element(0b110, R.mul(R.var(1), R.var(2)))) == unit(6, 1));
  CHECK(H.class_of(E.basis.z2[1]) == unit(6, 4));
  CHECK(H.class_of(E.basis.z3[2]) == unit(3, 2));
}

TEST_CASE("product class does not depend on representatives") {
  for (std::uint32_t p : {2u, 32003u}) {
    const auto& E = example(p);
    const auto& K = *E.K;
    const HomologyAlgebra& H = *E.cert.adapted;
    std::mt19937 rng(p + 1);
    for (int t = 0; t < 40; ++t) {
      std::size_t i = rng() % 4, j = rng() % 4;
      const auto& z = E.basis.z1[i];
      const auto& w = j < 3 ? E.basis.z1[j] : E.basis.z2[rng() % 3];
      auto bz = K.boundary(kres::test::random_koszul(K, 2, rng));
      auto bw = K.boundary(kres::test::random_koszul(K, w.degree + 1, rng));
      CHECK(H.product_class(K.add(z, bz), K.add(w, bw)) == H.product_class(z, w));
    }
  }
}

TEST_CASE("supplied representatives") {
  const auto& E = example();
  auto H = HomologyAlgebra::compute(E.K);
  CHECK(H.rank(1) == 4);
  std::vector<std::vector<KoszulElement>> reps = {{E.K->basis_element(0, E.K->ring().one())}, E.basis.z1, {}, {}};
  CHECK_THROWS_AS(HomologyAlgebra::with_representatives(E.K, reps), HomologyError);
  reps[1][1] = reps[1][0];
  reps[2] = H.representatives(2);
  reps[3] = H.representatives(3);
  CHECK_THROWS_AS(HomologyAlgebra::with_representatives(E.K, reps), HomologyError);
}

TEST_CASE("class T certificate") {
  for (std::uint32_t p : {2u, 32003u}) {
    const auto& E = example(p);
    auto cert = verify_class_T(E.basis, E.K);
    CHECK(cert.passed);
    CHECK(cert.ranks == std::vector<std::size_t>{1, 4, 6, 3});
    CHECK_FALSE(cert.products.empty());
  }
  auto swapped = example().basis;
  std::swap(swapped.z1[0], swapped.z1[3]);
  auto bad = verify_class_T(swapped, example().K);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.failure.empty());

  auto Kci = koszul(ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  ClassTBasis t;
  auto ci = diagonal_ci(*Kci);
  t.z1 = ci.z1;
  auto H = HomologyAlgebra::compute(Kci);
  t.z3 = H.representatives(3);
  t.fill_names();
  CHECK_FALSE(verify_class_T(t, Kci).passed);
}

TEST_CASE("complete intersection certificate") {
  auto Kci = koszul(ring(32003, {"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  auto cert = verify_class_CI(diagonal_ci(*Kci), Kci);
  CHECK(cert.passed);
  CHECK(cert.codepth == 3);

  auto short_basis = diagonal_ci(*Kci);
  short_basis.z1.pop_back();
  short_basis.fill_names();
  auto gate = verify_class_CI(short_basis, Kci);
  CHECK_FALSE(gate.passed);
  CHECK(gate.failure.find("gate") != std::string::npos);

  const auto& E = example();
  ClassCIBasis four;
  four.z1 = E.basis.z1;
  four.fill_names();
  CHECK_FALSE(verify_class_CI(four, E.K).passed);
  CHECK_FALSE(discover_class_CI(E.K));
  CHECK(discover_class_CI(Kci));
}

TEST_CASE("class T discovery") {
  for (std::uint32_t p : {2u, 32003u}) {
    auto d = discover_class_T(example(p).K);
    REQUIRE(d.basis);
    CHECK(d.certificate.passed);
    CHECK(d.basis->z1.size() == 4);
    CHECK(d.basis->z2.size() == 3);
    CHECK(d.basis->z3.size() == 3);
  }
  auto d = discover_class_T(koszul(ring(32003, {"x", "y"}, {{2, 0}, {0, 2}})));
  CHECK_FALSE(d.basis);
  CHECK_FALSE(d.diagnostic.empty());
}
