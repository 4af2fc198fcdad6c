#include "support/oracles.hpp"

#include "wreath/arith.hpp"
#include "wreath/linsolve.hpp"
#include "wreath/matrix.hpp"
#include "wreath/reidemeister.hpp"
#include "wreath/snf.hpp"

#include <doctest.h>

using namespace wreath;

namespace {

bool is_diagonal_chain(const IntegerMatrix& d) {
  std::int64_t prev = 1;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0)
        return false;
    }
  const int r = std::min(d.rows(), d.cols());
  for (int i = 0; i < r; ++i) {
    auto v = d(i, i);
    if (v < 0)
      return false;
    if (prev == 0 ? v != 0 : v % prev != 0)
      return false;
    prev = v;
  }
  return true;
}

} // namespace

TEST_CASE("matrix basics") {
  IntegerMatrix m{{0, 1}, {-1, -1}};
  CHECK(m.power(3).is_identity());
  CHECK(matrix_order(m) == 3);
  CHECK(matrix_order(IntegerMatrix{{1, 1}, {0, 1}}) == 0);
  CHECK(m.determinant() == 1);
  CHECK(m * m.inverse_unimodular() == IntegerMatrix::identity(2));
  CHECK((m * LatticeVector{1, 0}) == LatticeVector{0, -1});
  CHECK(m.column(1) == LatticeVector{1, -1});
  CHECK(IntegerMatrix::block_diagonal(m, 2).rows() == 4);
  CHECK(m.to_string() == "[[0,1],[-1,-1]]");
  CHECK_FALSE(IntegerMatrix{{2, 0}, {0, 1}}.is_unimodular());
}

TEST_CASE("determinant matches cofactor expansion") {
  oracle::Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const int k = static_cast<int>(oracle::uniform(rng, 1, 5));
    oracle::Rows rows(k, std::vector<std::int64_t>(k));
    for (auto& r : rows)
      for (auto& x : r)
        x = oracle::uniform(rng, -9, 9);
    CHECK(IntegerMatrix::from_rows(rows).determinant() == oracle::det_cofactor(rows));
  }
}

TEST_CASE("Smith normal form examples") {
  auto id = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id.D == IntegerMatrix::identity(3));
  auto s = smith_normal_form(IntegerMatrix{{1, -1}, {1, 2}});
  CHECK(s.diagonal() == std::vector<std::int64_t>{1, 3});
  auto z = smith_normal_form(IntegerMatrix::zero(2, 2));
  CHECK(z.diagonal() == std::vector<std::int64_t>{0, 0});
  auto r = smith_normal_form(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}});
  CHECK(r.diagonal() == std::vector<std::int64_t>{2, 6});
}

namespace {

// U * B * V == D in 128-bit arithmetic: the transforms may be large enough
// for the product to leave int64 even though D itself is small.
bool product_matches(const IntegerMatrix& u, const IntegerMatrix& b, const IntegerMatrix& v, const IntegerMatrix& d) {
  using Wide = std::vector<std::vector<__int128>>;
  auto mul = [](const Wide& x, const Wide& y) {
    Wide out(x.size(), std::vector<__int128>(y[0].size(), 0));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t l = 0; l < y.size(); ++l)
        for (std::size_t j = 0; j < y[0].size(); ++j)
          out[i][j] += x[i][l] * y[l][j];
    return out;
  };
  auto wide = [](const IntegerMatrix& m) {
    Wide w(m.rows(), std::vector<__int128>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        w[i][j] = m(i, j);
    return w;
  };
  return mul(mul(wide(u), wide(b)), wide(v)) == wide(d);
}

} // namespace

TEST_CASE("Smith normal form invariants on random matrices") {
  oracle::Rng rng(22);
  for (int t = 0; t < 500; ++t) {
    const int rows = static_cast<int>(oracle::uniform(rng, 1, 5));
    const int cols = t % 3 == 0 ? static_cast<int>(oracle::uniform(rng, 1, 5)) : rows;
    IntegerMatrix b(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        b(i, j) = oracle::uniform(rng, -9, 9);
    auto s = smith_normal_form(b);
    CHECK(product_matches(s.U, b, s.V, s.D));
    CHECK(smith_diagonal(b) == s.diagonal());
    CHECK(s.U.is_unimodular());
    CHECK(s.V.is_unimodular());
    CHECK(is_diagonal_chain(s.D));
    if (rows == cols) {
      std::int64_t prod = 1;
      for (auto d : s.diagonal())
        prod *= d;
      CHECK(prod == std::abs(oracle::det_cofactor(b.to_rows())));
    }
  }
}

TEST_CASE("invariants survive transform growth") {
  IntegerMatrix b{{7, 9, 1, -1, -9, -4, -2}, {-8, 7, 4, 5, 3, -8, 0},  {4, -6, -1, -3, 3, -1, -7},
                  {9, 6, 0, 1, 0, 2, -4},    {-4, -3, 9, -1, 9, 6, 0}, {-8, -9, 7, -3, -6, -6, -4},
                  {0, 1, -3, -9, -6, 8, -9}};
  CHECK_THROWS_AS(smith_normal_form(b), OverflowError);
  auto d = smith_diagonal(b);
  CHECK(d == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 12534555});
  CHECK(std::abs(oracle::det_cofactor(b.to_rows())) == 12534555);
}

TEST_CASE("lattice counts") {
  const auto minus = -IntegerMatrix::identity(3);
  CHECK(reidemeister_abelian(IntegerMatrix::identity(2)).is_infinite());
  CHECK(reidemeister_abelian(minus).value() == 8);
  CHECK(reidemeister_abelian(order_three_block()).value() == 3);
  CHECK(count_fixed_lattice_characters(-IntegerMatrix::identity(1)).value() == 2);
  CHECK(count_fixed_lattice_characters(IntegerMatrix::identity(2)).is_infinite());
  CHECK(count_fixed_lattice_characters(order_three_block()).value() == 3);
  CHECK_THROWS_AS(reidemeister_abelian(IntegerMatrix{{2}}), std::invalid_argument);
  CHECK_THROWS_AS(count_fixed_lattice_characters(IntegerMatrix{{2}}), std::invalid_argument);

  CHECK(fixed_points_of_matrix(IntegerMatrix::identity(2), 5) == 25);
  CHECK(fixed_points_of_matrix(minus, 7) == 1);
  CHECK(fixed_points_of_matrix(minus, 2) == 8);

  oracle::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const int k = static_cast<int>(oracle::uniform(rng, 1, 3));
    auto rows = oracle::random_unimodular(rng, k, 8);
    const auto m = oracle::uniform(rng, 1, 6);
    CHECK(fixed_points_of_matrix(IntegerMatrix::from_rows(rows), m) == oracle::brute_fixed_points(rows, m));
  }
}

TEST_CASE("extended naturals") {
  auto inf = ExtendedNat::infinite();
  CHECK((inf * ExtendedNat::finite(3)).is_infinite());
  CHECK((ExtendedNat::finite(2) * ExtendedNat::finite(3)).value() == 6);
  CHECK(inf.to_string() == "infinite");
  CHECK_THROWS_AS((void)inf.value(), std::logic_error);
}

TEST_CASE("modular linear systems") {
  ModularSystem bad{4, 1, {{2}}, {1}};
  CHECK_FALSE(solve_mod(bad).has_value());

  oracle::Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    ModularSystem s;
    s.modulus = oracle::uniform(rng, 2, 200);
    s.unknowns = static_cast<int>(oracle::uniform(rng, 1, 6));
    const auto eqs = oracle::uniform(rng, 1, 7);
    std::vector<std::int64_t> x(s.unknowns);
    for (auto& v : x)
      v = oracle::uniform(rng, 0, s.modulus - 1);
    for (int i = 0; i < eqs; ++i) {
      std::vector<std::int64_t> row(s.unknowns);
      std::int64_t b = 0;
      for (int j = 0; j < s.unknowns; ++j) {
        // sprinkle in non-units so pivots with positive valuation occur
        row[j] = oracle::uniform(rng, 0, 3) == 0 ? 0 : oracle::uniform(rng, 0, s.modulus - 1);
        b = oracle::mod(b + row[j] * x[j], s.modulus);
      }
      s.rows.push_back(row);
      s.rhs.push_back(b);
    }
    auto sol = solve_mod(s);
    REQUIRE(sol.has_value());
    for (int i = 0; i < eqs; ++i) {
      std::int64_t lhs = 0;
      for (int j = 0; j < s.unknowns; ++j)
        lhs = oracle::mod(lhs + s.rows[i][j] * (*sol)[j], s.modulus);
      CHECK(lhs == s.rhs[i]);
    }
  }
}

TEST_CASE("inconsistency detected over prime powers") {
  // x + y = 1, 3x + 3y = 0 mod 9
  ModularSystem s{9, 2, {{1, 1}, {3, 3}}, {1, 0}};
  CHECK_FALSE(solve_mod(s).has_value());
  CHECK_FALSE(solve_mod_prime_power(s, 3, 2).has_value());
}
