#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kres/builder.hpp"
#include "kres/ringfile.hpp"

namespace kres {

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct DegreeData {
  std::size_t degree = 0;
  std::size_t free_rank = 0;   // rank of F_i over R
  std::size_t flat_dim = 0;    // dim_k F_i
  std::size_t rank_out = 0;    // rank of flat d_i
  std::size_t kernel_dim = 0;  // dim ker flat d_i
  std::size_t image_dim = 0;   // rank of flat d_{i+1}
  std::size_t homology = 0;
};

struct CheckSection {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  std::vector<DegreeData> degrees;
  bool passed() const { return status == Status::Pass; }
};

CheckSection check_complex(const ResolutionAssembly& F);
CheckSection check_minimality(const ResolutionAssembly& F);
// H_0 = k and H_i = 0 for 1 <= i < i_max; skipped when complex_ok is false
CheckSection check_exactness(const ResolutionAssembly& F, bool complex_ok = true);
CheckSection check_rank_agreement(const ResolutionAssembly& F, const PowerSeries& PR);
CheckSection check_graded_exactness(const GradedComplexes& G);
CheckSection check_chain_maps(AlphaFamily& fam, std::size_t k_max);

struct OracleResolution {
  std::vector<std::size_t> betti;
  std::vector<RingMatrix> differentials;  // [i] = d_i, i >= 1
  std::string warning;
};

// minimal generators of each kernel, degree by degree
OracleResolution oracle_resolution(std::shared_ptr<const QuotientRing> R, std::size_t i_max);

// negative controls
ResolutionAssembly with_unit_summand(const ResolutionAssembly& F, std::size_t r);
// keeps F_0..F_r, drops one block of F_r
ResolutionAssembly with_dropped_block(const ResolutionAssembly& F, std::size_t r, std::size_t block);

struct VerifyOptions {
  std::string mode = "auto";  // T, CI, auto
  std::size_t i_max = 8;
  std::size_t order = 12;
  bool oracle = false;
  std::size_t oracle_max = 6;
  bool graded = true;
  std::optional<SignRegime> force_regime;
  ZeroBlockPlacement placement = ZeroBlockPlacement::Bottom;
};

struct VerificationReport {
  std::string mode;
  HomologyRanks homology;
  std::size_t n = 0;
  bool class_ok = false;
  std::string class_diagnostic;
  ClassCertificate certificate;
  bool basis_supplied = false;
  std::optional<SequencePack> pack;
  std::optional<UTable> u;
  std::optional<PowerSeries> poincare;
  std::optional<ResolutionAssembly> assembly;
  std::optional<OracleResolution> oracle;
  std::vector<CheckSection> sections;
  std::vector<std::string> notes;
  std::int64_t elapsed_ms = 0;

  bool all_passed() const;
};

VerificationReport full_verify(const RingFile& rf, const VerifyOptions& opt);

}  // namespace kres
