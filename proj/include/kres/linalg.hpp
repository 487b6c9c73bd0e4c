#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kres/field.hpp"

namespace kres {

// row-major
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Fp> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Fp& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Fp at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  Fp* row(std::size_t r) { return data.data() + r * cols; }
  const Fp* row(std::size_t r) const { return data.data() + r * cols; }

  static DenseMatrix identity(std::size_t n);
  bool operator==(const DenseMatrix&) const = default;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& F);

// sorted by index, no stored zeros
using SparseVec = std::vector<std::pair<std::uint32_t, Fp>>;

SparseVec sparse_axpy(const SparseVec& x, Fp a, const SparseVec& y, const PrimeField& F);  // x + a*y

struct Triplet {
  std::uint32_t row, col;
  Fp val;
};

// column storage
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t,
                                    const PrimeField& F);
  static SparseMatrix from_dense(const DenseMatrix& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVec& column(std::size_t c) const { return columns_[c]; }
  SparseVec& column(std::size_t c) { return columns_[c]; }
  std::size_t nnz() const;
  DenseMatrix to_dense() const;
  bool is_zero() const { return nnz() == 0; }
  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> columns_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& F);

enum class Backend { Serial, Parallel };

struct Echelon {
  DenseMatrix reduced;              // RREF when full, row echelon otherwise
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

namespace linalg::serial {
Echelon rref(DenseMatrix m, const PrimeField& F, bool full = true);
std::size_t rank(DenseMatrix m, const PrimeField& F);
}  // namespace linalg::serial

namespace linalg::parallel {
Echelon rref(DenseMatrix m, const PrimeField& F, bool full = true);
std::size_t rank(DenseMatrix m, const PrimeField& F);
}  // namespace linalg::parallel

std::size_t rank(const DenseMatrix& m, const PrimeField& F, Backend b = Backend::Parallel);
// columns of the result span the null space; one vector per free column, in column order
std::vector<std::vector<Fp>> kernel_basis(const DenseMatrix& m, const PrimeField& F,
                                          Backend b = Backend::Parallel);

// connected components of the row/column incidence graph
struct Component {
  std::vector<std::uint32_t> rows, cols;
};
std::vector<Component> components(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m, const PrimeField& F, Backend b = Backend::Parallel);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const PrimeField& F,
                                    Backend b = Backend::Parallel);

// x with A x = b, free variables set to 0
class LinearSolver {
 public:
  LinearSolver(const DenseMatrix& a, const PrimeField& F);
  std::optional<std::vector<Fp>> solve(const std::vector<Fp>& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  PrimeField F_;
  std::size_t m_, n_;
  DenseMatrix transform_;  // E with E*A = rref(A)
  std::vector<std::size_t> pivots_;
};

// incremental sparse echelon form, leading index = smallest index
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, const PrimeField& F) : dim_(dim), F_(F) {}

  SparseVec reduce(SparseVec v) const;
  bool insert(SparseVec v);  // true when v was independent
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  PrimeField F_;
  std::vector<SparseVec> rows_;
  std::map<std::uint32_t, std::size_t> lead_;
};

}  // namespace kres
