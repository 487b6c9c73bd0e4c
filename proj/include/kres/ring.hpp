#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kres/field.hpp"
#include "kres/linalg.hpp"

namespace kres {

struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}
  static Monomial one(std::size_t n) { return Monomial(std::vector<std::uint32_t>(n, 0)); }
  static Monomial var(std::size_t n, std::size_t i);

  std::size_t nvars() const { return exps.size(); }
  std::uint32_t degree() const;
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  auto operator<=>(const Monomial&) const = default;
};

// degree first; within a degree x1 > x2 > ... and larger monomials come first
bool deglex_less(const Monomial& a, const Monomial& b);
struct DeglexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_less(a, b); }
};

std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars);

struct Polynomial {
  std::size_t nvars = 0;
  std::map<Monomial, Fp, DeglexLess> terms;  // no zero coefficients

  explicit Polynomial(std::size_t n = 0) : nvars(n) {}
  static Polynomial term(const Monomial& m, Fp c);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const Polynomial&) const = default;
};

Polynomial add(const Polynomial& a, const Polynomial& b, const PrimeField& F);
Polynomial scale(const Polynomial& a, Fp s, const PrimeField& F);
Polynomial multiply(const Polynomial& a, const Polynomial& b, const PrimeField& F);

// coordinates on the standard basis
struct RingElement {
  SparseVec terms;
  bool is_zero() const { return terms.empty(); }
  Fp coeff(std::uint32_t i) const;
  bool operator==(const RingElement&) const = default;
};

class NonArtinianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// k[x_1..x_n]/I with I monomial, I inside m^2, R Artinian
class QuotientRing {
 public:
  QuotientRing(PrimeField F, std::vector<std::string> vars, std::vector<Monomial> gens);

  const PrimeField& field() const { return F_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Monomial>& ideal_gens() const { return gens_; }
  const std::vector<Monomial>& std_basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  bool in_ideal(const Monomial& m) const;
  std::optional<std::uint32_t> index_of(const Monomial& m) const;
  // index of the product of two basis monomials, -1 when it lies in I
  std::int32_t product(std::size_t a, std::size_t b) const { return table_[a * basis_.size() + b]; }
  std::uint32_t variable_index(std::size_t i) const { return var_index_[i]; }

  Polynomial normal_form(const Polynomial& f) const;
  RingElement reduce(const Polynomial& f) const;
  Polynomial lift(const RingElement& e) const;

  RingElement zero() const { return {}; }
  RingElement one() const { return RingElement{{{0u, 1u}}}; }
  RingElement var(std::size_t i) const { return RingElement{{{var_index_[i], 1u}}}; }
  RingElement constant(Fp c) const;
  RingElement monomial(const Monomial& m, Fp c = 1) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement scale(const RingElement& a, Fp s) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  bool in_maximal_ideal(const RingElement& a) const { return a.coeff(0) == 0; }

  std::string format(const RingElement& a) const;

 private:
  PrimeField F_;
  std::vector<std::string> vars_;
  std::vector<Monomial> gens_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::uint32_t> index_;
  std::vector<std::int32_t> table_;
  std::vector<std::uint32_t> var_index_;
};

// free module map R^cols -> R^rows, column storage
class RingMatrix {
 public:
  using Column = std::vector<std::pair<std::uint32_t, RingElement>>;

  RingMatrix() = default;
  RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}
  static RingMatrix identity(std::size_t n, const QuotientRing& R);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Column& column(std::size_t c) const { return columns_[c]; }
  RingElement at(std::size_t r, std::size_t c) const;
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  // first nonzero in column-major order
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;
  RingMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  bool operator==(const RingMatrix&) const = default;

 private:
  friend class RingMatrixBuilder;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Column> columns_;
};

class RingMatrixBuilder {
 public:
  RingMatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  void add(std::size_t r, std::size_t c, RingElement e);
  void add_block(std::size_t r0, std::size_t c0, const RingMatrix& m, Fp sign, const QuotientRing& R);
  RingMatrix build(const QuotientRing& R);

 private:
  struct Entry {
    std::uint32_t row, col;
    RingElement val;
  };
  std::size_t rows_, cols_;
  std::vector<Entry> entries_;
};

RingMatrix multiply(const RingMatrix& a, const RingMatrix& b, const QuotientRing& R);
RingMatrix add(const RingMatrix& a, const RingMatrix& b, const QuotientRing& R);
RingMatrix scale(const RingMatrix& a, Fp s, const QuotientRing& R);

// induced k-linear map on coordinates (row, basis monomial), rows*dim x cols*dim
SparseMatrix flatten(const RingMatrix& m, const QuotientRing& R);

}  // namespace kres
