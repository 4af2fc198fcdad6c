#include "wreath/arith.hpp"

#include <cstdlib>
#include <tuple>

namespace wreath {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? checked_neg(a) : a;
  b = b < 0 ? checked_neg(b) : b;
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    auto q = old_r / r;
    std::tie(old_r, r) = std::pair{r, checked_sub(old_r, checked_mul(q, r))};
    std::tie(old_s, s) = std::pair{s, checked_sub(old_s, checked_mul(q, s))};
    std::tie(old_t, t) = std::pair{t, checked_sub(old_t, checked_mul(q, t))};
  }
  if (old_r < 0)
    return {checked_neg(old_r), checked_neg(old_s), checked_neg(old_t)};
  return {old_r, old_s, old_t};
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1)
    return 0;
  auto [g, x, y] = extended_gcd(mod_floor(a, n), n);
  (void)y;
  if (g != 1)
    return -1;
  return mod_floor(x, n);
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t n) {
  std::int64_t result = 1 % n;
  std::int64_t base = mod_floor(a, n);
  while (e > 0) {
    if (e & 1u)
      result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    e >>= 1u;
  }
  return result;
}

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exp; ++i)
    r = checked_mul(r, base);
  return r;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0)
      continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1)
    out.push_back({n, 1, n});
  return out;
}

unsigned valuation(std::int64_t a, std::int64_t p) {
  if (a == 0)
    throw std::invalid_argument("valuation of zero");
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

std::int64_t crt(const std::vector<std::pair<std::int64_t, std::int64_t>>& residues_and_moduli) {
  std::int64_t x = 0, modulus = 1;
  for (auto [r, m] : residues_and_moduli) {
    auto inv = inverse_mod(modulus % m, m);
    if (inv < 0)
      throw std::invalid_argument("crt: moduli are not pairwise coprime");
    // x + modulus * t = r (mod m)
    auto t = mul_mod(checked_sub(mod_floor(r, m), x % m), inv, m);
    auto next = checked_mul(modulus, m);
    x = static_cast<std::int64_t>((static_cast<__int128>(modulus) * t + x) % next);
    modulus = next;
  }
  return x;
}

} // namespace wreath
