#include "wreath/snf.hpp"

#include "wreath/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace wreath {

std::vector<std::int64_t> SnfTriple::diagonal() const {
  std::vector<std::int64_t> d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i)
    d.push_back(D(i, i));
  return d;
}

namespace {

// Nearest-integer quotient; keeps remainders within half the pivot.
std::int64_t round_div(std::int64_t a, std::int64_t b) {
  auto q = a / b, r = a % b;
  if (2 * std::llabs(r) > std::llabs(b))
    q += (r < 0) == (b < 0) ? 1 : -1;
  return q;
}

// Elementary operations applied simultaneously to the working matrix and the
// accumulated transforms: rows act on (A, U), columns on (A, V).
struct Reducer {
  IntegerMatrix A, U, V;

  void swap_rows(int i, int j) {
    for (int c = 0; c < A.cols(); ++c)
      std::swap(A(i, c), A(j, c));
    for (int c = 0; c < U.cols(); ++c)
      std::swap(U(i, c), U(j, c));
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < A.rows(); ++r)
      std::swap(A(r, i), A(r, j));
    for (int r = 0; r < V.rows(); ++r)
      std::swap(V(r, i), V(r, j));
  }
  // row_dst += q * row_src
  void add_row(int dst, int src, std::int64_t q) {
    for (int c = 0; c < A.cols(); ++c)
      A(dst, c) = checked_add(A(dst, c), checked_mul(q, A(src, c)));
    for (int c = 0; c < U.cols(); ++c)
      U(dst, c) = checked_add(U(dst, c), checked_mul(q, U(src, c)));
  }
  // col_dst += q * col_src
  void add_col(int dst, int src, std::int64_t q) {
    for (int r = 0; r < A.rows(); ++r)
      A(r, dst) = checked_add(A(r, dst), checked_mul(q, A(r, src)));
    for (int r = 0; r < V.rows(); ++r)
      V(r, dst) = checked_add(V(r, dst), checked_mul(q, V(r, src)));
  }
  void negate_row(int i) {
    for (int c = 0; c < A.cols(); ++c)
      A(i, c) = checked_neg(A(i, c));
    for (int c = 0; c < U.cols(); ++c)
      U(i, c) = checked_neg(U(i, c));
  }
};

void reduce(Reducer& r) {
  auto& A = r.A;
  const int rows = A.rows(), cols = A.cols();

  for (int t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: nonzero entry of least absolute value in the trailing block
      int pi = -1, pj = -1;
      std::int64_t best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (A(i, j) != 0 && (pi < 0 || std::llabs(A(i, j)) < best)) {
            pi = i;
            pj = j;
            best = std::llabs(A(i, j));
          }
      if (pi < 0)
        break;
      if (pi != t)
        r.swap_rows(t, pi);
      if (pj != t)
        r.swap_cols(t, pj);

      bool dirty = false;
      const auto p = A(t, t);
      for (int i = t + 1; i < rows; ++i) {
        if (A(i, t) == 0)
          continue;
        r.add_row(i, t, -round_div(A(i, t), p));
        dirty |= A(i, t) != 0;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (A(t, j) == 0)
          continue;
        r.add_col(j, t, -round_div(A(t, j), p));
        dirty |= A(t, j) != 0;
      }
      if (dirty)
        continue;

      // divisibility chain: fold an offending row into the pivot row
      int offending = -1;
      for (int i = t + 1; i < rows && offending < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (A(i, j) % p != 0) {
            offending = i;
            break;
          }
      if (offending < 0)
        break;
      r.add_row(t, offending, 1);
    }
    if (A(t, t) < 0)
      r.negate_row(t);
  }
}

} // namespace

SnfTriple smith_normal_form(const IntegerMatrix& b) {
  Reducer r{b, IntegerMatrix::identity(b.rows()), IntegerMatrix::identity(b.cols())};
  reduce(r);
  return {std::move(r.U), std::move(r.V), std::move(r.A)};
}

std::vector<std::int64_t> smith_diagonal(const IntegerMatrix& b) {
  // empty transforms: the row and column operations touch A alone
  Reducer r{b, IntegerMatrix(0, 0), IntegerMatrix(0, 0)};
  reduce(r);
  return SnfTriple{{}, {}, std::move(r.A)}.diagonal();
}

} // namespace wreath
