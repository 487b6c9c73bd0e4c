#pragma once

#include <memory>
#include <random>

#include "kres/builder.hpp"
#include "kres/ringfile.hpp"
#include "kres/verifier.hpp"

namespace kres::test {

// x^2, y^2, z^2, xyz with its cycle list
struct ExampleT {
  RingFile rf;
  std::shared_ptr<const QuotientRing> R;
  std::shared_ptr<const KoszulComplex> K;
  ClassTBasis basis;
  ClassCertificate cert;
  SequencePack pack;

  explicit ExampleT(std::uint32_t p = 32003) : rf(example_T_ring(p)) {
    R = build_ring(rf);
    K = std::make_shared<KoszulComplex>(R);
    basis = *class_T_basis(rf, *K);
    cert = verify_class_T(basis, K);
    pack = sequence_tables(3, 4, 6, 3, 12);
  }
};

inline const ExampleT& example(std::uint32_t p = 32003) {
  static const ExampleT e32003(32003), e2(2);
  return p == 2 ? e2 : e32003;
}

inline std::shared_ptr<const QuotientRing> ring(std::uint32_t p, std::vector<std::string> vars,
                                                std::vector<std::vector<std::uint32_t>> gens) {
  std::vector<Monomial> g;
  for (auto& e : gens) g.emplace_back(e);
  return std::make_shared<QuotientRing>(PrimeField(p), std::move(vars), std::move(g));
}

inline std::shared_ptr<const KoszulComplex> koszul(std::shared_ptr<const QuotientRing> R) {
  return std::make_shared<KoszulComplex>(std::move(R));
}

inline RingElement random_element(const QuotientRing& R, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> c(0, R.field().p() - 1);
  Polynomial f(R.nvars());
  for (const auto& m : R.std_basis())
    if (rng() % 2) f = add(f, Polynomial::term(m, c(rng)), R.field());
  return R.reduce(f);
}

inline KoszulElement random_koszul(const KoszulComplex& K, std::size_t i, std::mt19937& rng) {
  KoszulElement a = K.zero(i);
  for (auto& c : a.coords) c = random_element(K.ring(), rng);
  return a;
}

inline std::string labels(const CycleMatrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + m.label_at(r, c);
    s += "\n";
  }
  return s;
}

}  // namespace kres::test
