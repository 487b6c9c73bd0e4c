#include "kres/field.hpp"

namespace kres {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw FieldError("characteristic too large");
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  Fp r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp PrimeField::inv(Fp a) const {
  if (a % p_ == 0) throw FieldError("inverse of zero");
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p_, nr = a % p_;
  while (nr) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Fp>(t);
}

Fp PrimeField::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<Fp>(m);
}

}  // namespace kres
