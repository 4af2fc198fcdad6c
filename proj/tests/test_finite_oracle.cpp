#include "support/oracles.hpp"

#include "wreath/oracle.hpp"
#include "wreath/reidemeister.hpp"

#include <doctest.h>
#include <omp.h>

#include <algorithm>
#include <set>

using namespace wreath;
using namespace wreath::finite;

namespace {

/// Twisted classes as orbits of h . x = h x f(h)^-1, one orbit at a time.
std::size_t orbit_count(const FiniteWreathGroup& g, const FiniteAutomorphism& f) {
  std::vector<char> done(g.order(), 0);
  std::size_t count = 0;
  for (Index x = 0; x < g.order(); ++x) {
    if (done[x])
      continue;
    ++count;
    for (Index h = 0; h < g.order(); ++h)
      done[g.multiply(g.multiply(h, x), g.inverse(f(h)))] = 1;
  }
  return count;
}

FiniteAutomorphism scaling(const FiniteWreathGroup& g, std::uint32_t c) {
  std::vector<Index> map(g.order());
  for (Index x = 0; x < g.order(); ++x)
    map[x] = static_cast<Index>((x * c) % g.order());
  return make_automorphism(g, map, "x -> " + std::to_string(c) + "x");
}

std::vector<FiniteAutomorphism> descended_all(const FiniteWreathGroup& g) {
  std::vector<FiniteAutomorphism> out;
  for (const auto& a : zero_cocycle_automorphisms(g.modulus(), g.box_modulus(), g.rank()))
    out.push_back(descend_automorphism(g, a));
  return out;
}

} // namespace

TEST_CASE("group orders and budget") {
  CHECK(build_group(3, 2, 1).order() == 18);
  CHECK(build_group(2, 1, 1).order() == 2);
  CHECK(build_group(5, 2, 1).order() == 50);
  CHECK(build_group(3, 2, 2).order() == 324);
  CHECK_THROWS_AS(build_group(9, 4, 2), BudgetExceeded);
  CHECK_THROWS_AS(build_group(5, 4, 1, 1000), BudgetExceeded);
  CHECK_THROWS_AS(build_group(1, 2, 1), std::invalid_argument);
}

TEST_CASE("indexing round-trips and the law matches the infinite group") {
  for (auto [n, m, k] : {std::tuple{3, 2, 1}, {2, 3, 1}, {3, 2, 2}, {4, 1, 2}}) {
    auto g = build_group(n, m, k);
    for (Index a = 0; a < g.order(); ++a) {
      REQUIRE(g.reduce(g.lift(a)) == a);
      REQUIRE(g.multiply(a, g.inverse(a)) == g.identity());
    }
    oracle::Rng rng(41);
    for (int t = 0; t < 400; ++t) {
      auto a = static_cast<Index>(oracle::uniform(rng, 0, g.order() - 1));
      auto b = static_cast<Index>(oracle::uniform(rng, 0, g.order() - 1));
      auto c = static_cast<Index>(oracle::uniform(rng, 0, g.order() - 1));
      CHECK(g.multiply(a, b) == g.reduce(oracle::naive_multiply(g.lift(a), g.lift(b))));
      CHECK(g.multiply3(a, b, c) == g.multiply(g.multiply(a, b), c));
    }
  }
}

TEST_CASE("automorphism tables are checked") {
  auto g = build_group(3, 2, 1);
  auto id = identity_automorphism(g);
  CHECK(check_automorphism(g, id.map).empty());
  auto swapped = id.map;
  std::swap(swapped[1], swapped[2]);
  CHECK_FALSE(check_automorphism(g, swapped).empty());
  auto collapsed = id.map;
  collapsed[1] = 0;
  CHECK_FALSE(check_automorphism(g, collapsed).empty());
  CHECK_THROWS_AS(make_automorphism(g, swapped, "bad"), DescentError);
}

TEST_CASE("descent") {
  auto g = build_group(5, 4, 1);
  CHECK(descend_automorphism(g, WreathAutomorphism::identity(g.params())).map == identity_automorphism(g).map);

  auto f = descend_automorphism(g, construct_finite_R(5, 1));
  for (Index a = 0; a < g.order(); ++a) {
    std::vector<std::uint32_t> coeffs(g.points());
    for (std::uint32_t x = 0; x < g.points(); ++x)
      coeffs[x] = (2 * g.coefficient(a, (g.points() - x) % g.points())) % 5;
    CHECK(f(a) == g.encode(coeffs, (g.points() - g.shift_of(a)) % g.points()));
  }

  const GroupParams p(3, 1);
  auto g3 = build_group(3, 2, 1);
  WreathAutomorphism obstructed(p, IntegerMatrix::identity(1), TorsionElement::delta(p, {0}),
                                {TorsionElement::delta(p, {0})});
  REQUIRE(obstructed.is_valid());
  CHECK_THROWS_AS(descend_automorphism(g3, obstructed), DescentError);

  oracle::Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    auto gamma = oracle::random_element(rng, p, 3, 3);
    CHECK(descend_automorphism(g3, inner(gamma)).map == inner_automorphism(g3, g3.reduce(gamma)).map);
  }
}

TEST_CASE("twisted classes: trivial cases") {
  auto z5 = build_group(5, 1, 1);
  REQUIRE(z5.order() == 5);
  CHECK(twisted_classes(z5, identity_automorphism(z5)).count() == 5);
  for (std::uint32_t c = 1; c < 5; ++c) {
    auto f = scaling(z5, c);
    // abelian: R = |coker(1 - c)|, fixed classes = |ker(1 - c)|
    const std::size_t expected = c == 1 ? 5 : 1;
    CHECK(twisted_classes(z5, f).count() == expected);
    CHECK(fixed_conjugacy_classes(z5, f) == expected);
    CHECK(verify_tbft_finite(z5, f).pass);
  }

  auto g = build_group(3, 2, 1);
  auto id = identity_automorphism(g);
  auto cc = conjugacy_classes(g);
  CHECK(twisted_classes(g, id) == cc);
  CHECK(fixed_conjugacy_classes(g, id) == cc.count());
}

TEST_CASE("union-find partition agrees with orbit enumeration") {
  for (auto [n, m, k] : {std::tuple{3, 2, 1}, {5, 2, 1}, {3, 3, 1}, {2, 2, 2}}) {
    auto g = build_group(n, m, k);
    for (const auto& f : descended_all(g))
      CHECK(twisted_classes(g, f).count() == orbit_count(g, f));
  }
}

TEST_CASE("kernels agree and ignore enumeration order") {
  auto g = build_group(3, 2, 2);
  oracle::Rng rng(43);
  auto autos = descended_all(g);
  const int saved = omp_get_max_threads();
  for (std::size_t i = 0; i < autos.size(); i += 7) {
    const auto& f = autos[i];
    auto serial = twisted_classes_serial(g, f);
    omp_set_num_threads(4);
    auto parallel = twisted_classes_parallel(g, f);
    omp_set_num_threads(saved);
    CHECK(serial == parallel);
    CHECK(serial == twisted_classes_parallel(g, f));
    std::vector<Index> order(g.order());
    for (Index x = 0; x < g.order(); ++x)
      order[x] = x;
    for (int shuffle = 0; shuffle < 2; ++shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(twisted_classes_in_order(g, f, order) == serial);
    }
    CHECK(twisted_classes_serial(g, f, g.torsion_order()) ==
          twisted_classes_parallel(g, f, g.torsion_order()));
  }
}

TEST_CASE("tbft on Z_3 wr Z/2") {
  auto g = build_group(3, 2, 1);
  for (const auto& f : descended_all(g)) {
    auto r = verify_tbft_finite(g, f);
    CHECK(r.pass);
    CHECK(r.lhs == orbit_count(g, f));
  }
}

TEST_CASE("shift invariance") {
  for (auto [n, m, k] : {std::tuple{3, 2, 1}, {5, 2, 1}, {2, 2, 2}}) {
    auto g = build_group(n, m, k);
    auto autos = descended_all(g);
    CHECK(verify_shift_invariance(g, autos[0], g.identity()).pass);
    for (std::size_t i = 0; i < autos.size(); i += 3)
      for (Index x = 0; x < g.order(); ++x) {
        auto r = verify_shift_invariance(g, autos[i], x);
        CHECK_MESSAGE(r.pass, r.to_text());
      }
  }
}

TEST_CASE("projection") {
  auto g15 = build_group(15, 2, 1);
  const GroupParams p(15, 1);
  WreathAutomorphism a(p, -IntegerMatrix::identity(1), TorsionElement::delta(p, {0}, 2), {TorsionElement(p)});
  REQUIRE(a.is_valid());
  auto fa = descend_automorphism(g15, a);
  CHECK_FALSE(verify_projection(g15, g15, fa, identity_automorphism(g15)).pass);
  auto eq = verify_projection(g15, g15, fa, fa);
  CHECK(eq.pass);
  CHECK(eq.lhs == eq.rhs);
  for (std::int64_t d : {3, 5}) {
    auto small = build_group(d, 2, 1);
    auto r = verify_projection(g15, small, fa, descend_automorphism(small, induce_quotient(a, d)));
    CHECK_MESSAGE(r.pass, r.to_text());
    CHECK(r.lhs >= r.rhs);
  }
}

TEST_CASE("restriction bound") {
  auto g = build_group(5, 2, 1);
  auto id = identity_automorphism(g);
  auto r = verify_restriction_bound(g, id);
  CHECK(r.pass);
  CHECK(r.lhs == g.torsion_order());
  CHECK(r.rhs == conjugacy_classes(g).count() * 2);
  auto p3 = verify_restriction_bound(g, descend_automorphism(g, construct_finite_R(5, 1)));
  CHECK(p3.pass);
  auto tau = inner_automorphism(g, 7);
  CHECK(twisted_classes(g, tau).count() == twisted_classes(g, id).count());
  CHECK(verify_restriction_bound(g, tau).pass);
  CHECK(induced_quotient_fixed_points(g, id) == 2);
}

TEST_CASE("report format") {
  auto g = build_group(3, 2, 1);
  auto r = verify_tbft_finite(g, identity_automorphism(g), "f=0");
  CHECK(r.to_text() == "CHECK tbft n=3,m=2,k=1,f=0 PASS 9 9");
  auto j = r.to_json();
  CHECK(j["status"] == "PASS");
  CHECK(j["lhs"] == 9);
}
