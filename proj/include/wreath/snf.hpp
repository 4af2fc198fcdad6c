#pragma once

#include "wreath/matrix.hpp"

#include <vector>

namespace wreath {

/// U * B * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SnfTriple {
  IntegerMatrix U;
  IntegerMatrix V;
  IntegerMatrix D;

  /// The min(rows, cols) diagonal entries of D.
  std::vector<std::int64_t> diagonal() const;
};

/// Smith normal form by elementary operations with minimal-|entry| pivoting.
/// Exact; throws OverflowError if an intermediate leaves int64.
SnfTriple smith_normal_form(const IntegerMatrix& b);

/// Diagonal of the Smith normal form only. Transform entries can grow far
/// beyond those of D, so callers that need just the invariants use this.
std::vector<std::int64_t> smith_diagonal(const IntegerMatrix& b);

} // namespace wreath
