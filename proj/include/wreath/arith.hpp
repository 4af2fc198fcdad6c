#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wreath {

/// Thrown when an exact integer computation leaves the int64 range.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

/// Canonical residue of a in [0, n).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  auto r = static_cast<__int128>(mod_floor(a, n)) * mod_floor(b, n) % n;
  return static_cast<std::int64_t>(r);
}

inline std::int64_t add_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<__int128>(mod_floor(a, n)) + mod_floor(b, n)) % n);
}

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0.
struct Bezout {
  std::int64_t g, x, y;
};
Bezout extended_gcd(std::int64_t a, std::int64_t b);

/// Inverse of a modulo n, or -1 if gcd(a, n) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t n);

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t n);

std::int64_t checked_pow(std::int64_t base, unsigned exp);

struct PrimePower {
  std::int64_t prime;
  unsigned exponent;
  std::int64_t value; // prime^exponent
};

/// Trial-division factorization, primes in increasing order.
std::vector<PrimePower> factorize(std::int64_t n);

/// p-adic valuation of a nonzero a.
unsigned valuation(std::int64_t a, std::int64_t p);

/// Solves x = r_i (mod m_i) for pairwise coprime moduli; result in [0, prod m_i).
std::int64_t crt(const std::vector<std::pair<std::int64_t, std::int64_t>>& residues_and_moduli);

} // namespace wreath
