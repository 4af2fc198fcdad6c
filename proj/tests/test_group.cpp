#include "support/oracles.hpp"

#include "wreath/arith.hpp"
#include "wreath/group.hpp"

#include <doctest.h>

using namespace wreath;

namespace {

const GroupParams Z3_1(3, 1);
const GroupParams Z5_2(5, 2);

TorsionElement D(GroupParams p, LatticeVector x, std::int64_t c = 1) { return TorsionElement::delta(p, x, c); }

bool canonical(const TorsionElement& s) {
  for (const auto& [x, c] : s.support())
    if (c <= 0 || c >= s.modulus() || x.rank() != s.rank())
      return false;
  return true;
}

} // namespace

TEST_CASE("arith helpers") {
  CHECK(mod_floor(-7, 5) == 3);
  CHECK(gcd(12, -18) == 6);
  CHECK(inverse_mod(2, 5) == 3);
  CHECK(inverse_mod(3, 9) == -1);
  CHECK(pow_mod(3, 4, 7) == 4);
  CHECK(crt({{3, 7}, {2, 3}}) == 17);
  CHECK(valuation(72, 2) == 3);
  auto f = factorize(2 * 2 * 3 * 49);
  REQUIRE(f.size() == 3);
  CHECK(f[2].prime == 7);
  CHECK(f[2].exponent == 2);
  CHECK(f[2].value == 49);
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), OverflowError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
}

TEST_CASE("group params are validated") {
  CHECK_THROWS_AS(GroupParams(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(GroupParams(5, 0), std::invalid_argument);
  CHECK_NOTHROW(GroupParams(2, 1));
}

TEST_CASE("torsion elements are canonical") {
  TorsionElement s(Z3_1);
  s.add_term({0}, 4);
  s.add_term({1}, 3);
  CHECK(s == D(Z3_1, {0}));
  s.add_term({0}, 2);
  CHECK(s.is_zero());
  CHECK(D(Z3_1, {2}, -1).coefficient({2}) == 2);
  CHECK(canonical(D(Z5_2, {1, -1}, 7) + D(Z5_2, {0, 0}, 9)));
}

TEST_CASE("alpha_shift") {
  auto s = D(Z3_1, {1}, 2) + D(Z3_1, {2});
  CHECK(alpha_shift({0}, s) == s);
  CHECK(alpha_shift({1}, D(Z3_1, {0})) == D(Z3_1, {1}));
  CHECK(alpha_shift({-1}, s) == D(Z3_1, {0}, 2) + D(Z3_1, {1}));
  CHECK_THROWS_AS(alpha_shift({1, 0}, s), ParameterMismatch);
}

TEST_CASE("multiply follows the semidirect law") {
  const GroupElement a(D(Z3_1, {0}), {1});
  const GroupElement b(D(Z3_1, {0}), {0});
  const GroupElement c(D(Z3_1, {0}), {-1});
  CHECK(multiply(a, GroupElement::identity(Z3_1)) == a);
  auto ab = multiply(a, b);
  CHECK(ab.torsion == D(Z3_1, {0}) + D(Z3_1, {1}));
  CHECK(ab.shift == LatticeVector{1});
  auto ac = multiply(a, c);
  CHECK(ac.torsion == D(Z3_1, {0}) + D(Z3_1, {1}));
  CHECK(ac.shift == LatticeVector{0});
  CHECK_THROWS_AS(multiply(a, GroupElement::identity(GroupParams(5, 1))), ParameterMismatch);
}

TEST_CASE("inverse") {
  CHECK(inverse(GroupElement::identity(Z3_1)).is_identity());
  CHECK(inverse(GroupElement::pure_shift(Z5_2, {2, -3})) == GroupElement::pure_shift(Z5_2, {-2, 3}));
  const GroupElement g(D(Z3_1, {1}), {1});
  const auto gi = inverse(g);
  CHECK(gi.torsion == D(Z3_1, {0}, 2));
  CHECK(gi.shift == LatticeVector{-1});
  CHECK(multiply(g, gi).is_identity());
  CHECK(multiply(gi, g).is_identity());
}

TEST_CASE("projections") {
  const GroupParams p15(15, 1), p35(35, 1);
  CHECK(project_pi(D(p15, {0}, 3), 3).is_zero());
  auto s = D(p35, {0}, 7) + D(p35, {1}, 5);
  auto ps = project_pi(s, 5);
  CHECK(ps.modulus() == 5);
  CHECK(ps == D(GroupParams(5, 1), {0}, 2));
  CHECK(project_pi(s, 35) == s);
  CHECK(project_Pi(GroupElement::identity(p35), 7).is_identity());
  auto g = project_Pi(GroupElement(D(p35, {0}, 7), {1}), 7);
  CHECK(g.torsion.is_zero());
  CHECK(g.shift == LatticeVector{1});
  CHECK_THROWS(project_pi(s, 4));
}

TEST_CASE("twisted conjugation") {
  oracle::Rng rng(11);
  const auto id = [](const GroupElement& x) { return x; };
  for (int i = 0; i < 50; ++i) {
    auto h = oracle::random_element(rng, Z5_2);
    auto g = oracle::random_element(rng, Z5_2);
    auto w = oracle::random_element(rng, Z5_2);
    CHECK(twisted_conjugate(GroupElement::identity(Z5_2), g, id) == g);
    CHECK(twisted_conjugate(h, g, id) == multiply(multiply(h, g), inverse(h)));
    ElementMap tau = [&](const GroupElement& x) { return multiply(multiply(w, x), inverse(w)); };
    auto expected = multiply(multiply(multiply(multiply(h, g), w), inverse(h)), inverse(w));
    CHECK(twisted_conjugate(h, g, tau) == expected);
  }
}

TEST_CASE("multiply agrees with a longhand evaluation") {
  oracle::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    GroupParams p(oracle::uniform(rng, 2, 12), static_cast<int>(oracle::uniform(rng, 1, 3)));
    auto g = oracle::random_element(rng, p), h = oracle::random_element(rng, p);
    auto prod = multiply(g, h);
    CHECK(prod == oracle::naive_multiply(g, h));
    CHECK(canonical(prod.torsion));
  }
}

TEST_CASE("text rendering") {
  auto s = D(Z5_2, {1, 0}, 2) + D(Z5_2, {0, -1}, 3);
  CHECK(s.to_string() == "3*D[0,-1] + 2*D[1,0]");
  CHECK(TorsionElement(Z5_2).to_string() == "0");
  CHECK(GroupElement(s, {1, 2}).to_string() == "(3*D[0,-1] + 2*D[1,0] ; [1,2])");
}

TEST_CASE("box points") {
  auto pts = box_points(2, 1);
  CHECK(pts.size() == 9);
  CHECK(pts.front() == LatticeVector{-1, -1});
  CHECK(pts.back() == LatticeVector{1, 1});
}
