#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kres/homology.hpp"
#include "kres/koszul.hpp"
#include "kres/sequences.hpp"

namespace kres {

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// non-decreasing words over {1..c} of length k, lex order
class WordIndex {
 public:
  WordIndex(std::size_t c, std::size_t k);
  std::size_t size() const { return words_.size(); }
  const std::vector<int>& word(std::size_t i) const { return words_[i]; }
  std::size_t rank(const std::vector<int>& w) const { return index_.at(w); }
  // [v u]: append and re-sort
  static std::vector<int> bracket(std::vector<int> v, int u);

 private:
  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, std::size_t> index_;
};

std::size_t to_size(const BigInt& v);

CycleMatrix beta(std::size_t k, std::size_t c, const std::vector<KoszulElement>& z, const std::vector<std::string>& names,
                 const KoszulComplex& K);
CycleMatrix beta_prime(std::size_t k, const std::vector<KoszulElement>& triple, const std::vector<std::string>& names,
                       const KoszulComplex& K);
CycleMatrix gamma(int j, const ClassTBasis& basis, const KoszulComplex& K);

enum class ZeroBlockPlacement { Bottom, Top };

// memoized alpha / beta family for one class T basis
class AlphaFamily {
 public:
  AlphaFamily(std::shared_ptr<const KoszulComplex> K, ClassTBasis basis, SequencePack pack,
              ZeroBlockPlacement placement = ZeroBlockPlacement::Bottom);

  const KoszulComplex& koszul() const { return *K_; }
  const ClassTBasis& basis() const { return basis_; }
  const SequencePack& pack() const { return pack_; }

  const CycleMatrix& beta(std::size_t k);
  const CycleMatrix& beta_prime(std::size_t k);
  const CycleMatrix& gamma(int j);
  // alpha_{k,r}, r in {k, k+1, k+2}; k <= 0 gives the zero matrix of the right extents
  const CycleMatrix& alpha(long k, long r);

 private:
  std::shared_ptr<const KoszulComplex> K_;
  ClassTBasis basis_;
  SequencePack pack_;
  ZeroBlockPlacement placement_;
  std::map<std::size_t, CycleMatrix> beta_, beta_prime_;
  std::map<int, CycleMatrix> gamma_;
  std::map<std::pair<long, long>, CycleMatrix> alpha_;
};

CycleMatrix alpha(long k, long r, const SequencePack& pack, const ClassTBasis& basis,
                  std::shared_ptr<const KoszulComplex> K, ZeroBlockPlacement placement = ZeroBlockPlacement::Bottom);

struct DeltaBlock {
  std::size_t k = 0;
  CycleMatrix a0, a1, a2;  // alpha_{k,k}, alpha_{k,k+1}, alpha_{k,k+2}
  std::size_t rows() const { return a0.rows(); }
  std::size_t cols() const { return a0.cols() + a1.cols() + a2.cols(); }
};

DeltaBlock delta(std::size_t k, AlphaFamily& fam);

// one Delta_i^{copies} block of phi^(k), mapping the three children of a parent node
struct PhiBlock {
  std::size_t parent = 0;       // index in layer k-1
  std::size_t delta_index = 0;  // i
  BigInt copies;                // deg3 of the cofactor
  std::vector<std::size_t> children;  // indices in layer k
};

std::vector<PhiBlock> phi(std::size_t k, const SequencePack& pack);

struct CBlock {
  TreeMonomial m;
  int shift = 0;
  BigInt copies;
};

std::vector<CBlock> component_C(std::size_t k, const SequencePack& pack);

enum class SignRegime { ShiftOnlyPlus, ShiftOnlyMinus, ConePlus, ConeMinus };
std::string to_string(SignRegime r);
std::vector<SignRegime> arbiter_order();

struct FBlock {
  std::size_t layer = 0;  // j: the block comes from C^(j)
  std::size_t node = 0;   // index in the layer
  std::string label;      // tree monomial or CI index
  int shift = 0;
  std::size_t koszul_degree = 0;
  std::size_t copies = 0;
  std::size_t offset = 0;  // first row/column inside F_r
  int deg1 = 0, deg2 = 0;
  BigInt deg3;
};

struct ArbiterStep {
  SignRegime regime;
  bool passed = false;
  std::string detail;
};

struct ResolutionAssembly {
  ClassMode mode = ClassMode::T;
  std::size_t i_max = 0;
  std::shared_ptr<const KoszulComplex> K;
  std::vector<std::vector<FBlock>> blocks;  // per degree 0..i_max
  std::vector<std::size_t> ranks;
  std::vector<RingMatrix> differentials;  // [r] = d_r : F_r -> F_{r-1}, r >= 1
  SignRegime regime = SignRegime::ConePlus;
  std::vector<ArbiterStep> arbiter;

  const FBlock* block_at(std::size_t r, std::size_t pos) const;
  std::string describe(std::size_t r, std::size_t pos) const;
};

// first nonzero of d_r d_{r+1}, with block coordinates
struct SquareDefect {
  std::size_t r = 0;
  std::size_t row = 0, col = 0;
  std::string where;
};
std::optional<SquareDefect> first_square_defect(const ResolutionAssembly& F, std::size_t up_to);

struct AssemblyOptions {
  std::optional<SignRegime> force_regime;
  ZeroBlockPlacement placement = ZeroBlockPlacement::Bottom;
};

ResolutionAssembly assemble_T(std::shared_ptr<const KoszulComplex> K, const ClassTBasis& basis, const SequencePack& pack,
                              std::size_t i_max, const AssemblyOptions& opt = {});
ResolutionAssembly assemble_CI(std::shared_ptr<const KoszulComplex> K, const ClassCIBasis& basis, std::size_t i_max,
                               const AssemblyOptions& opt = {});

// ---- graded complexes over k ----

// spaces listed from the highest homological position down
struct FiniteComplex {
  std::string name;
  std::vector<int> positions;
  std::vector<std::size_t> dims;
  std::vector<DenseMatrix> maps;  // maps[t]: space t -> space t+1
};

// [theta] acting A_q^cols -> A_{q+j}^rows through homology classes
DenseMatrix class_action(const CycleMatrix& theta, std::size_t q, const HomologyAlgebra& H);

struct GradedComplexes {
  PrimeField field;
  std::vector<FiniteComplex> B, C, A;
  // dimension bookkeeping of A_k against its B and C summands, per k
  std::vector<CheckReport> decomposition;
};

GradedComplexes graded_A_complexes(std::size_t kB_max, std::size_t kA_max, const ClassCertificate& cert,
                                   AlphaFamily& fam);

}  // namespace kres
