#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kres {

using Fp = std::uint32_t;

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Z/pZ, values kept in [0, p)
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 32003);

  std::uint32_t p() const { return p_; }

  Fp add(Fp a, Fp b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const {
    return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Fp inv(Fp a) const;
  Fp pow(Fp a, std::uint64_t e) const;
  Fp from_int(std::int64_t v) const;
  // symmetric representative in (-p/2, p/2]
  std::int64_t to_signed(Fp a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace kres
