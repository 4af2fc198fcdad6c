#include "wreath/linsolve.hpp"

#include "wreath/arith.hpp"

#include <numeric>
#include <stdexcept>

namespace wreath {

namespace {

// valuation of a residue in [0, p^s); zero has valuation s
unsigned residue_valuation(std::int64_t a, std::int64_t p, unsigned s) {
  if (a == 0)
    return s;
  return valuation(a, p);
}

} // namespace

std::optional<std::vector<std::int64_t>> solve_mod_prime_power(const ModularSystem& system, std::int64_t prime,
                                                               unsigned exponent) {
  const auto q = checked_pow(prime, exponent);
  const int n_rows = static_cast<int>(system.rows.size());
  const int n_cols = system.unknowns;

  std::vector<std::vector<std::int64_t>> a(n_rows, std::vector<std::int64_t>(n_cols));
  std::vector<std::int64_t> b(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    for (int j = 0; j < n_cols; ++j)
      a[i][j] = mod_floor(system.rows[i][j], q);
    b[i] = mod_floor(system.rhs[i], q);
  }

  std::vector<int> col_of(n_cols);
  std::iota(col_of.begin(), col_of.end(), 0);
  std::vector<unsigned> pivot_val;

  int rank = 0;
  for (; rank < std::min(n_rows, n_cols); ++rank) {
    int pi = -1, pj = -1;
    unsigned best = exponent;
    for (int i = rank; i < n_rows && best > 0; ++i)
      for (int j = rank; j < n_cols; ++j) {
        auto v = residue_valuation(a[i][j], prime, exponent);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0)
            break;
        }
      }
    if (pi < 0)
      break;
    std::swap(a[rank], a[pi]);
    std::swap(b[rank], b[pi]);
    if (pj != rank) {
      for (auto& row : a)
        std::swap(row[rank], row[pj]);
      std::swap(col_of[rank], col_of[pj]);
    }
    const auto p_v = checked_pow(prime, best);
    const auto unit_inv = inverse_mod(a[rank][rank] / p_v, q);
    for (int i = rank + 1; i < n_rows; ++i) {
      if (a[i][rank] == 0)
        continue;
      // a[i][rank] = p^v * w with v >= best
      auto factor = mul_mod(a[i][rank] / p_v, unit_inv, q);
      for (int j = rank; j < n_cols; ++j)
        a[i][j] = mod_floor(a[i][j] - mul_mod(factor, a[rank][j], q), q);
      b[i] = mod_floor(b[i] - mul_mod(factor, b[rank], q), q);
    }
    pivot_val.push_back(best);
  }

  for (int i = rank; i < n_rows; ++i)
    if (b[i] != 0)
      return std::nullopt;

  std::vector<std::int64_t> y(n_cols, 0);
  for (int r = rank - 1; r >= 0; --r) {
    std::int64_t acc = b[r];
    for (int j = r + 1; j < n_cols; ++j)
      acc = mod_floor(acc - mul_mod(a[r][j], y[j], q), q);
    const auto p_v = checked_pow(prime, pivot_val[r]);
    if (acc % p_v != 0)
      return std::nullopt;
    auto unit_inv = inverse_mod(a[r][r] / p_v, q);
    y[r] = mul_mod(acc / p_v, unit_inv, q / p_v);
  }

  std::vector<std::int64_t> x(n_cols, 0);
  for (int j = 0; j < n_cols; ++j)
    x[col_of[j]] = y[j];
  return x;
}

std::optional<std::vector<std::int64_t>> solve_mod(const ModularSystem& system) {
  if (system.modulus < 2)
    throw std::invalid_argument("solve_mod: modulus must be >= 2");
  if (system.rhs.size() != system.rows.size())
    throw std::invalid_argument("solve_mod: rhs length does not match equation count");
  for (const auto& row : system.rows)
    if (static_cast<int>(row.size()) != system.unknowns)
      throw std::invalid_argument("solve_mod: ragged coefficient rows");

  std::vector<std::vector<std::int64_t>> parts;
  std::vector<std::int64_t> moduli;
  for (const auto& pp : factorize(system.modulus)) {
    auto part = solve_mod_prime_power(system, pp.prime, pp.exponent);
    if (!part)
      return std::nullopt;
    parts.push_back(std::move(*part));
    moduli.push_back(pp.value);
  }

  std::vector<std::int64_t> x(system.unknowns);
  std::vector<std::pair<std::int64_t, std::int64_t>> residues(moduli.size());
  for (int j = 0; j < system.unknowns; ++j) {
    for (std::size_t t = 0; t < moduli.size(); ++t)
      residues[t] = {parts[t][j], moduli[t]};
    x[j] = crt(residues);
  }
  return x;
}

} // namespace wreath
