#include "support/oracles.hpp"

#include "wreath/automorphism.hpp"
#include "wreath/reidemeister.hpp"

#include <doctest.h>

#include <array>
#include <thread>

using namespace wreath;

namespace {

TorsionElement D(GroupParams p, LatticeVector x, std::int64_t c = 1) { return TorsionElement::delta(p, x, c); }

std::vector<TorsionElement> zeros(GroupParams p) { return std::vector<TorsionElement>(p.rank, TorsionElement(p)); }

WreathAutomorphism minus_two(std::int64_t n, int k) {
  GroupParams p(n, k);
  return {p, -IntegerMatrix::identity(k), D(p, LatticeVector::zero(k), 2), zeros(p)};
}

/// A valid automorphism with a generally nonzero cocycle: a random base twisted
/// by a random inner automorphism, or for k = 1 a random T directly.
WreathAutomorphism random_automorphism(oracle::Rng& rng, GroupParams p) {
  auto m = IntegerMatrix::from_rows(oracle::random_unimodular(rng, p.rank, 6));
  auto u = oracle::random_unit(rng, p, 1);
  std::vector<TorsionElement> t = zeros(p);
  if (p.rank == 1)
    t[0] = oracle::random_torsion(rng, p, 3, 2);
  WreathAutomorphism base(p, m, u, t);
  return twist(base, oracle::random_element(rng, p, 3, 2));
}

} // namespace

TEST_CASE("validate") {
  GroupParams p(5, 1);
  CHECK(WreathAutomorphism::identity(p).report().ok());
  WreathAutomorphism bad_u(p, IntegerMatrix::identity(1), D(p, {0}) + D(p, {1}), zeros(p));
  CHECK_FALSE(bad_u.report().u_is_unit);
  CHECK(bad_u.report().matrix_unimodular);
  CHECK_FALSE(bad_u.report().failures.empty());
  for (std::int64_t n : {5, 7, 35, 385})
    CHECK(minus_two(n, 3).is_valid());

  GroupParams q(5, 2);
  WreathAutomorphism bad_m(q, IntegerMatrix{{2, 0}, {0, 1}}, D(q, {0, 0}), zeros(q));
  CHECK_FALSE(bad_m.report().matrix_unimodular);
  // T_1 = D[0], T_2 = 0 with M = I: T_1 + alpha(e_1) T_2 != T_2 + alpha(e_2) T_1
  WreathAutomorphism bad_t(q, IntegerMatrix::identity(2), D(q, {0, 0}), {D(q, {0, 0}), TorsionElement(q)});
  CHECK_FALSE(bad_t.report().cocycle_consistent);
  CHECK_THROWS_AS(apply(bad_t, GroupElement::identity(q)), InvalidAutomorphism);
  CHECK_THROWS_AS(compose(bad_t, bad_t), InvalidAutomorphism);
  CHECK_THROWS_AS(WreathAutomorphism(q, IntegerMatrix::identity(1), D(q, {0, 0}), zeros(q)), std::invalid_argument);
}

TEST_CASE("unit_check and inverses") {
  GroupParams p5(5, 1), p4(4, 1);
  CHECK(unit_check(D(p5, {0})));
  CHECK(group_ring_inverse(D(p5, {0})) == D(p5, {0}));
  CHECK(unit_check(D(p5, {0}, 2)));
  CHECK(group_ring_inverse(D(p5, {0}, 2)) == D(p5, {0}, 3));
  auto u = D(p4, {0}) + D(p4, {1}, 2);
  CHECK(unit_check(u));
  CHECK(group_ring_inverse(u) == u);
  CHECK(bounded_inverse_search(u, 3) == u);
  CHECK_FALSE(unit_check(D(p5, {0}) + D(p5, {1})));
  CHECK_FALSE(group_ring_inverse(D(p5, {0}) + D(p5, {1})).has_value());
  CHECK_FALSE(unit_check(TorsionElement(p5)));
  CHECK_FALSE(unit_check(D(GroupParams(6, 1), {0}, 2)));
}

TEST_CASE("exact inverses verify against a longhand convolution") {
  oracle::Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    GroupParams p(oracle::uniform(rng, 2, 72), static_cast<int>(oracle::uniform(rng, 1, 3)));
    auto u = oracle::random_unit(rng, p, 2);
    auto v = group_ring_inverse(u);
    REQUIRE(v.has_value());
    CHECK(oracle::naive_convolve(u, *v) == D(p, LatticeVector::zero(p.rank)));
  }
}

TEST_CASE("convolve") {
  GroupParams p(5, 2);
  auto a = D(p, {1, 2}, 3) + D(p, {0, -1});
  CHECK(convolve(a, D(p, {0, 0})) == a);
  CHECK(convolve(D(p, {1, 0}), D(p, {1, 0})) == D(p, {2, 0}));
  CHECK(convolve(D(p, {0, 0}, 2), D(p, {0, 0}, 3)) == D(p, {0, 0}));
  oracle::Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    auto x = oracle::random_torsion(rng, p, 4, 3), y = oracle::random_torsion(rng, p, 4, 3);
    CHECK(convolve(x, y) == oracle::naive_convolve(x, y));
  }
}

TEST_CASE("apply") {
  GroupParams p(5, 1);
  oracle::Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_element(rng, p);
    CHECK(apply(WreathAutomorphism::identity(p), g) == g);
  }
  auto a = minus_two(5, 1);
  for (std::int64_t z = -3; z <= 3; ++z)
    CHECK(apply(a, GroupElement::pure_torsion(D(p, {z}))) == GroupElement::pure_torsion(D(p, {-z}, 2)));

  auto b = construct_finite_R(21, 2);
  const auto m = b.u().coefficient(LatticeVector{0, 0});
  const GroupParams q(21, 2);
  for (const auto& z : box_points(2, 2)) {
    auto image = apply(b, GroupElement::pure_torsion(D(q, z)));
    CHECK(image == GroupElement::pure_torsion(D(q, order_three_block() * z, m)));
  }
  CHECK(apply(a, GroupElement::pure_shift(p, {3})).shift == LatticeVector{-3});
}

TEST_CASE("compose and inverse") {
  auto a = minus_two(5, 1);
  const GroupParams p(5, 1);
  CHECK(compose(a, WreathAutomorphism::identity(p)) == a);
  CHECK(compose(a, inverse_automorphism(a)) == WreathAutomorphism::identity(p));
  auto aa = compose(a, a);
  CHECK(aa.matrix().is_identity());
  CHECK(aa.u() == D(p, {0}, 4));
  auto ai = inverse_automorphism(a);
  CHECK(ai.u() == D(p, {0}, 3));
  CHECK(ai.matrix() == -IntegerMatrix::identity(1));
  CHECK(ai.cocycle()[0].is_zero());
  CHECK(inverse_automorphism(WreathAutomorphism::identity(p)) == WreathAutomorphism::identity(p));
}

TEST_CASE("inner and twist") {
  const GroupParams p(3, 1);
  CHECK(inner(GroupElement::identity(p)) == WreathAutomorphism::identity(p));
  auto s = inner(GroupElement::pure_shift(p, {2}));
  CHECK(s.matrix().is_identity());
  CHECK(s.u() == D(p, {2}));
  CHECK(s.cocycle()[0].is_zero());
  auto t = inner(GroupElement::pure_torsion(D(p, {0})));
  CHECK(t.cocycle()[0] == D(p, {0}) + D(p, {1}, 2));

  oracle::Rng rng(34);
  const GroupParams q(6, 2);
  for (int i = 0; i < 50; ++i) {
    auto gamma = oracle::random_element(rng, q, 3, 2);
    auto h = oracle::random_element(rng, q);
    CHECK(apply(inner(gamma), h) == multiply(multiply(gamma, h), inverse(gamma)));
    CHECK(twist(WreathAutomorphism::identity(q), gamma) == inner(gamma));
    auto a = random_automorphism(rng, q);
    CHECK(twist(a, GroupElement::identity(q)) == a);
  }
}

TEST_CASE("induce_quotient") {
  auto a = minus_two(35, 1);
  CHECK(induce_quotient(a, 35) == a);
  auto a5 = induce_quotient(a, 5);
  CHECK(a5.params() == GroupParams(5, 1));
  CHECK(a5.u() == D(GroupParams(5, 1), {0}, 2));
  CHECK_THROWS_AS(induce_quotient(a, 4), std::invalid_argument);

  oracle::Rng rng(35);
  const GroupParams p(12, 2);
  for (int t = 0; t < 100; ++t) {
    auto b = random_automorphism(rng, p);
    auto g = oracle::random_element(rng, p);
    for (std::int64_t d : {2, 3, 4, 6}) {
      auto bd = induce_quotient(b, d);
      CHECK(bd.is_valid());
      CHECK(project_Pi(apply(b, g), d) == apply(bd, project_Pi(g, d)));
    }
  }
}

TEST_CASE("automorphism laws on random samples") {
  oracle::Rng rng(36);
  for (int t = 0; t < 150; ++t) {
    GroupParams p(oracle::uniform(rng, 2, 30), static_cast<int>(oracle::uniform(rng, 1, 3)));
    auto a = random_automorphism(rng, p);
    REQUIRE(a.is_valid());
    auto b = random_automorphism(rng, p);
    auto g = oracle::random_element(rng, p), h = oracle::random_element(rng, p);
    CHECK(apply(a, multiply(g, h)) == multiply(apply(a, g), apply(a, h)));
    CHECK(apply(inverse_automorphism(a), apply(a, g)) == g);
    CHECK(apply(compose(a, b), g) == apply(a, apply(b, g)));
    auto sigma = oracle::random_torsion(rng, p, 4, 3);
    CHECK(apply_restriction(a, sigma) == oracle::naive_phi_prime(a.u(), a.matrix().to_rows(), sigma));
    if (p.rank >= 2) {
      auto z = oracle::random_point(rng, p.rank, 4);
      std::vector<int> order(p.rank);
      for (int i = 0; i < p.rank; ++i)
        order[i] = p.rank - 1 - i;
      CHECK(cocycle_value(a, z) == cocycle_value(a, z, order));
    }
  }
}

TEST_CASE("cached inverse is shared across threads") {
  auto a = construct_finite_R(63, 2);
  std::array<const TorsionElement*, 4> seen{};
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&, i] { seen[i] = &a.u_inverse(); });
  for (auto& th : threads)
    th.join();
  for (auto* s : seen)
    CHECK(s == seen[0]);
  CHECK(convolve(a.u(), *seen[0]) == D(a.params(), {0, 0}));
}

TEST_CASE("text rendering of automorphisms") {
  auto a = minus_two(5, 1);
  CHECK(a.to_string().find("[[-1]]") != std::string::npos);
}
