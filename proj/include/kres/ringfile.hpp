#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kres/homology.hpp"
#include "kres/koszul.hpp"
#include "kres/ring.hpp"

namespace kres {

class RingFileError : public std::invalid_argument {
 public:
  RingFileError(const std::string& msg, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CycleSpec {
  std::string name;  // zD_U
  std::size_t degree = 0, index = 0;
  std::string expr;  // whitespace-normalized
  bool operator==(const CycleSpec&) const = default;
};

// key: value text; '#' starts a comment
//   characteristic: 32003
//   variables: x, y, z
//   ideal: x^2, y^2, z^2, x*y*z
//   mode: T | CI | auto
//   max_degree: 8
//   order: 12
//   cycles:
//     z1_1 = x*e[1]
struct RingFile {
  std::uint32_t characteristic = 32003;
  std::vector<std::string> variables;
  std::vector<std::vector<std::uint32_t>> ideal;  // exponent vectors
  std::string mode = "auto";
  std::optional<std::size_t> max_degree, order;
  std::vector<CycleSpec> cycles;  // sorted by (degree, index)
  bool operator==(const RingFile&) const = default;
};

RingFile parse_ring_file(const std::string& text);
RingFile load_ring_file(const std::string& path);
std::string serialize(const RingFile& rf);

Monomial parse_monomial(const std::string& s, const std::vector<std::string>& vars);
Polynomial parse_polynomial(const std::string& s, const std::vector<std::string>& vars, const PrimeField& F);
// formal sum of ring coefficients times e[i,j,...] (1-based, increasing)
KoszulElement parse_koszul_element(const std::string& s, std::size_t degree, const KoszulComplex& K);

std::shared_ptr<const QuotientRing> build_ring(const RingFile& rf);
// throws RingFileError on gaps in the numbering or a malformed expression
std::optional<ClassTBasis> class_T_basis(const RingFile& rf, const KoszulComplex& K);
// degree-1 cycles only
std::optional<ClassCIBasis> class_CI_basis(const RingFile& rf, const KoszulComplex& K);

// the worked class T example: x^2, y^2, z^2, xyz with its published cycles
RingFile example_T_ring(std::uint32_t p = 32003);

}  // namespace kres
