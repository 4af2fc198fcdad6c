#include "wreath/matrix.hpp"

#include "wreath/arith.hpp"
#include "wreath/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace wreath {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  IntegerMatrix m;
  m.rows_ = static_cast<int>(rows.size());
  m.cols_ = m.rows_ ? static_cast<int>(rows.front().size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m.cols_)
      throw std::invalid_argument("ragged matrix rows");
    m.data_.insert(m.data_.end(), r.begin(), r.end());
  }
  return m;
}

IntegerMatrix IntegerMatrix::identity(int k) {
  IntegerMatrix m(k, k);
  for (int i = 0; i < k; ++i)
    m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::block_diagonal(const IntegerMatrix& block, int copies) {
  IntegerMatrix m(block.rows_ * copies, block.cols_ * copies);
  for (int c = 0; c < copies; ++c)
    for (int i = 0; i < block.rows_; ++i)
      for (int j = 0; j < block.cols_; ++j)
        m(c * block.rows_ + i, c * block.cols_ + j) = block(i, j);
  return m;
}

std::vector<std::vector<std::int64_t>> IntegerMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (int i = 0; i < rows_; ++i)
    out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                  data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
  return out;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < other.cols_; ++j) {
      std::int64_t acc = 0;
      for (int t = 0; t < cols_; ++t)
        acc = checked_add(acc, checked_mul((*this)(i, t), other(t, j)));
      out(i, j) = acc;
    }
  return out;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix sum dimension mismatch");
  IntegerMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = checked_add(data_[i], other.data_[i]);
  return out;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& other) const { return *this + (-other); }

IntegerMatrix IntegerMatrix::operator-() const {
  IntegerMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = checked_neg(data_[i]);
  return out;
}

LatticeVector IntegerMatrix::operator*(const LatticeVector& v) const {
  if (v.rank() != cols_)
    throw ParameterMismatch("matrix-vector dimension mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
  return LatticeVector(std::move(out));
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      out(j, i) = (*this)(i, j);
  return out;
}

IntegerMatrix IntegerMatrix::power(unsigned e) const {
  if (!is_square())
    throw std::invalid_argument("power of a non-square matrix");
  IntegerMatrix result = identity(rows_);
  for (unsigned i = 0; i < e; ++i)
    result = result * *this;
  return result;
}

LatticeVector IntegerMatrix::column(int j) const {
  std::vector<std::int64_t> out(rows_);
  for (int i = 0; i < rows_; ++i)
    out[i] = (*this)(i, j);
  return LatticeVector(std::move(out));
}

// Bareiss fraction-free elimination; every division is exact.
std::int64_t IntegerMatrix::determinant() const {
  if (!is_square())
    throw std::invalid_argument("determinant of a non-square matrix");
  const int n = rows_;
  if (n == 0)
    return 1;
  std::vector<__int128> a(data_.begin(), data_.end());
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<std::size_t>(i) * n + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0)
        return 0;
      for (int j = 0; j < n; ++j)
        std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 lhs, rhs;
        if (__builtin_mul_overflow(at(i, j), at(k, k), &lhs) || __builtin_mul_overflow(at(i, k), at(k, j), &rhs))
          throw OverflowError("determinant overflow");
        at(i, j) = (lhs - rhs) / prev;
      }
    prev = at(k, k);
  }
  __int128 det = sign * at(n - 1, n - 1);
  if (det > INT64_MAX || det < INT64_MIN)
    throw OverflowError("determinant overflow");
  return static_cast<std::int64_t>(det);
}

bool IntegerMatrix::is_unimodular() const { return is_square() && std::llabs(determinant()) == 1; }

bool IntegerMatrix::is_identity() const { return *this == identity(rows_); }

IntegerMatrix IntegerMatrix::inverse_unimodular() const {
  if (!is_unimodular())
    throw std::invalid_argument("matrix is not unimodular: " + to_string());
  // U B V = I  =>  B^-1 = V U
  auto snf = smith_normal_form(*this);
  return snf.V * snf.U;
}

std::string IntegerMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < cols_; ++j) {
      if (j)
        s += ",";
      s += std::to_string((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

unsigned matrix_order(const IntegerMatrix& m, unsigned bound) {
  auto id = IntegerMatrix::identity(m.rows());
  auto p = m;
  for (unsigned e = 1; e <= bound; ++e) {
    if (p == id)
      return e;
    try {
      p = p * m;
    } catch (const OverflowError&) {
      return 0;
    }
  }
  return 0;
}

} // namespace wreath
