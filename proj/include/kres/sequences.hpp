#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kres {

using BigInt = boost::multiprecision::cpp_int;

class SequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ClassMode { T, CI };

std::string to_string(ClassMode m);
BigInt big_binomial(long n, long k);

struct SequencePack {
  ClassMode mode = ClassMode::T;
  long c = 3, a1 = 0, a2 = 0, a3 = 0;
  std::size_t k_max = 0;
  std::vector<BigInt> b, ell, d, ellp, ellpp;  // indices 0..k_max

  // zero for negative or out-of-table indices
  BigInt b_at(long k) const;
  BigInt ell_at(long k) const;
  BigInt d_at(long k) const;
  BigInt ellp_at(long k) const;
  BigInt ellpp_at(long k) const;
  // l_{k,r}: l_k, l'_k, l''_k for r = k, k+1, k+2
  BigInt ell_kr(long k, long r) const;
};

SequencePack sequence_tables(long c, long a1, long a2, long a3, std::size_t k_max);
SequencePack ci_tables(long c, std::size_t k_max);

struct CheckItem {
  std::string name;
  BigInt expected, actual;
  bool ok = true;
};

struct CheckReport {
  bool passed = true;
  std::vector<CheckItem> items;
  void add(std::string name, const BigInt& expected, const BigInt& actual);
};

CheckReport closed_form_check(const SequencePack& pack);

// word of generators X_{k,s}; first factor k <= s <= k+2, later ones k < s <= k+2
struct TreeMonomial {
  std::vector<std::pair<int, int>> factors;

  int deg1() const;
  int deg2() const;
  BigInt deg3(const SequencePack& pack) const;
  int deg4() const { return static_cast<int>(factors.size()); }
  std::string to_string() const;
  bool operator==(const TreeMonomial&) const = default;
  auto operator<=>(const TreeMonomial&) const = default;
};

// the node that receives the arrow from m, with the arrow label X_{i,r} and the cofactor n
struct TreeArrow {
  TreeMonomial parent;
  int i = 0, r = 0;
  TreeMonomial cofactor;
};

std::vector<TreeMonomial> tree_children(const TreeMonomial& m);
TreeArrow tree_parent(const TreeMonomial& m);
std::vector<TreeMonomial> tree_layer(std::size_t k);

using UTable = std::vector<std::vector<BigInt>>;  // [k][s], s in 0..s_max

// tree enumeration, cross-checked against the closed forms for k <= 3
UTable u_table(std::size_t k_max, std::size_t s_max, const SequencePack& pack);
// closed forms for k <= 3 in terms of l, l', l''
BigInt u_closed_form(int k, int s, const SequencePack& pack);

class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(std::size_t order, std::vector<BigInt> coeffs);
  static PowerSeries one(std::size_t order) { return PowerSeries(order, {1}); }

  std::size_t order() const { return order_; }
  const BigInt& operator[](std::size_t k) const { return c_[k]; }
  BigInt& operator[](std::size_t k) { return c_[k]; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries reciprocal() const;  // constant term must be +1 or -1
  PowerSeries pow(unsigned e) const;
  bool operator==(const PowerSeries&) const = default;

 private:
  std::size_t order_ = 0;
  std::vector<BigInt> c_;  // size order+1
};

// truncated in t; the z-degree is unbounded within each t-power
class BivariateSeries {
 public:
  BivariateSeries() = default;
  explicit BivariateSeries(std::size_t order) : order_(order), c_(order + 1) {}
  static BivariateSeries one(std::size_t order);

  std::size_t order() const { return order_; }
  BigInt coeff(std::size_t k, std::size_t s) const;
  void set(std::size_t k, std::size_t s, const BigInt& v);
  const std::vector<BigInt>& row(std::size_t k) const { return c_[k]; }

  BivariateSeries operator+(const BivariateSeries& o) const;
  BivariateSeries operator*(const BivariateSeries& o) const;
  BivariateSeries reciprocal() const;  // t^0 part must be the constant +-1
  PowerSeries diagonal_sub() const;     // z := t
  PowerSeries at_z_one() const;         // z := 1
  bool operator==(const BivariateSeries&) const;

 private:
  std::size_t order_ = 0;
  std::vector<std::vector<BigInt>> c_;
};

struct PoincarePair {
  BivariateSeries PA;
  PowerSeries PR;
};

PoincarePair poincare_T(long a1, long a2, long a3, long n, std::size_t order);
PoincarePair poincare_CI(long c, long n, std::size_t order);
// (1+t)^n over the one-variable class T denominator
PowerSeries poincare_R_closed_T(long a1, long a2, long a3, long n, std::size_t order);

CheckReport generating_function_check(const SequencePack& pack, std::size_t order);

}  // namespace kres
