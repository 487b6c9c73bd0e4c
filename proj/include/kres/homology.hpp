#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kres/koszul.hpp"

namespace kres {

class HomologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotACycleError : public HomologyError {
 public:
  using HomologyError::HomologyError;
};

struct HomologyRanks {
  std::vector<std::size_t> a;  // a_0..a_n
  std::size_t codepth = 0;
};

HomologyRanks homology_ranks(const KoszulComplex& K);
HomologyRanks homology_ranks(std::shared_ptr<const QuotientRing> R);

// A = H(K) with chosen cycle representatives per degree
class HomologyAlgebra {
 public:
  static HomologyAlgebra compute(std::shared_ptr<const KoszulComplex> K);
  // throws HomologyError unless reps[i] is a basis of A_i for every i
  static HomologyAlgebra with_representatives(std::shared_ptr<const KoszulComplex> K,
                                              std::vector<std::vector<KoszulElement>> reps);

  const KoszulComplex& koszul() const { return *K_; }
  std::shared_ptr<const KoszulComplex> koszul_ptr() const { return K_; }
  std::size_t rank(std::size_t i) const { return i < ranks_.a.size() ? ranks_.a[i] : 0; }
  const HomologyRanks& ranks() const { return ranks_; }
  std::size_t codepth() const { return ranks_.codepth; }
  const std::vector<KoszulElement>& representatives(std::size_t i) const { return reps_.at(i); }
  std::size_t boundary_dim(std::size_t i) const { return levels_.at(i).boundary_dim; }

  // coordinates of [z] on the representatives
  std::vector<Fp> class_of(const KoszulElement& z) const;
  std::vector<Fp> product_class(const KoszulElement& z, const KoszulElement& w) const;

 private:
  struct Level {
    std::size_t boundary_dim = 0;
    std::shared_ptr<LinearSolver> solver;  // columns: boundary basis then representatives
  };
  HomologyAlgebra() = default;
  void build_levels(const std::vector<std::vector<SparseVec>>& boundaries);

  std::shared_ptr<const KoszulComplex> K_;
  HomologyRanks ranks_;
  std::vector<std::vector<KoszulElement>> reps_;
  std::vector<Level> levels_;
};

std::vector<Fp> homology_class(const KoszulElement& z, const HomologyAlgebra& H);
std::vector<Fp> product_class(const KoszulElement& z, const KoszulElement& w, const HomologyAlgebra& H);

struct ClassTBasis {
  std::vector<KoszulElement> z1, z2, z3;  // z1[0..2] is the distinguished triple
  std::vector<std::string> names1, names2, names3;

  // default names z1_1, z2_1, ...
  void fill_names();
};

struct ClassCIBasis {
  std::vector<KoszulElement> z1;
  std::vector<std::string> names1;
  void fill_names();
};

struct ProductCheck {
  std::string left, right;
  std::size_t degree = 0;
  std::vector<Fp> cls;
  std::string expected;
  bool ok = true;
};

struct ClassCertificate {
  std::string mode;
  bool passed = false;
  std::vector<std::size_t> ranks;
  std::size_t codepth = 0;
  std::vector<ProductCheck> products;
  std::string failure;
  // A with the adapted basis: A_1 = z1, A_2 = [z1_1 z1_2],[z1_2 z1_3],[z1_1 z1_3], z2, A_3 = z3
  std::shared_ptr<const HomologyAlgebra> adapted;
};

ClassCertificate verify_class_T(const ClassTBasis& basis, std::shared_ptr<const KoszulComplex> K);
ClassCertificate verify_class_CI(const ClassCIBasis& basis, std::shared_ptr<const KoszulComplex> K);

struct ClassTDiscovery {
  std::optional<ClassTBasis> basis;
  ClassCertificate certificate;
  std::string diagnostic;
};

ClassTDiscovery discover_class_T(std::shared_ptr<const KoszulComplex> K);
std::optional<ClassCIBasis> discover_class_CI(std::shared_ptr<const KoszulComplex> K, ClassCertificate* cert = nullptr);

}  // namespace kres
