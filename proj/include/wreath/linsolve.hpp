#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace wreath {

/// Dense linear system A x = b over Z_modulus, rows = equations.
struct ModularSystem {
  std::int64_t modulus = 2;
  int unknowns = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;
};

/// Some solution of the system, or nullopt if it is inconsistent.
///
/// The modulus is split into prime powers by CRT. Over Z/p^s the system is
/// brought to echelon form with full pivoting on minimal p-adic valuation, so
/// every later entry of a pivot row is divisible by the pivot's p-power and
/// back-substitution never fails once the per-row divisibility test passes.
/// Free unknowns are set to zero.
std::optional<std::vector<std::int64_t>> solve_mod(const ModularSystem& system);

/// The same over a prime power p^s (exposed for testing).
std::optional<std::vector<std::int64_t>> solve_mod_prime_power(const ModularSystem& system, std::int64_t prime,
                                                               unsigned exponent);

} // namespace wreath
