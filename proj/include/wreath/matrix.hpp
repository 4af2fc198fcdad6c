#pragma once

#include "wreath/group.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace wreath {

/// Dense integer matrix with overflow-checked arithmetic. Row-major.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  static IntegerMatrix identity(int k);
  static IntegerMatrix zero(int rows, int cols) { return IntegerMatrix(rows, cols); }
  /// Block-diagonal matrix with `copies` copies of `block`.
  static IntegerMatrix block_diagonal(const IntegerMatrix& block, int copies);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<std::vector<std::int64_t>> to_rows() const;

  IntegerMatrix operator*(const IntegerMatrix& other) const;
  IntegerMatrix operator+(const IntegerMatrix& other) const;
  IntegerMatrix operator-(const IntegerMatrix& other) const;
  IntegerMatrix operator-() const;
  LatticeVector operator*(const LatticeVector& v) const;
  IntegerMatrix transpose() const;
  IntegerMatrix power(unsigned e) const;

  /// Column i, i.e. the image of e_i.
  LatticeVector column(int j) const;

  std::int64_t determinant() const;
  bool is_unimodular() const;
  bool is_identity() const;
  /// Exact inverse of a unimodular matrix.
  IntegerMatrix inverse_unimodular() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  /// "[[a,b],[c,d]]"
  std::string to_string() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Smallest e in [1, bound] with M^e = I, or 0 if there is none.
unsigned matrix_order(const IntegerMatrix& m, unsigned bound = 720);

} // namespace wreath
