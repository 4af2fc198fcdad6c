#include "wreath/finite_group.hpp"

#include "wreath/arith.hpp"

#include <algorithm>
#include <limits>

namespace wreath::finite {

FiniteWreathGroup::FiniteWreathGroup(std::int64_t n, std::int64_t m, int k, std::uint64_t budget)
    : n_(n), m_(m), k_(k) {
  if (n < 2)
    throw std::invalid_argument("finite group: modulus must be >= 2");
  if (m < 1)
    throw std::invalid_argument("finite group: box modulus must be >= 1");
  if (k < 1)
    throw std::invalid_argument("finite group: rank must be >= 1");
  budget = std::min<std::uint64_t>(budget, std::numeric_limits<Index>::max());

  auto over = [&](const std::string& what) {
    return BudgetExceeded("Z_" + std::to_string(n) + " wr (Z/" + std::to_string(m) + ")^" + std::to_string(k) + ": " +
                          what + " exceeds the budget of " + std::to_string(budget) + " elements");
  };
  std::uint64_t p = 1;
  for (int i = 0; i < k; ++i) {
    p *= static_cast<std::uint64_t>(m);
    if (p > budget)
      throw over("lattice size");
  }
  points_ = static_cast<std::uint32_t>(p);
  torsion_order_ = 1;
  place_.resize(points_);
  for (std::uint32_t x = 0; x < points_; ++x) {
    place_[x] = torsion_order_;
    if (torsion_order_ > budget / static_cast<std::uint64_t>(n))
      throw over("torsion subgroup order");
    torsion_order_ *= static_cast<std::uint64_t>(n);
  }
  if (torsion_order_ > budget / points_)
    throw over("group order");
  order_ = torsion_order_ * points_;

  add_.resize(static_cast<std::size_t>(points_) * points_);
  sub_.resize(add_.size());
  for (std::uint32_t a = 0; a < points_; ++a) {
    auto ca = point_coords(a);
    for (std::uint32_t b = 0; b < points_; ++b) {
      auto cb = point_coords(b);
      std::uint32_t sum = 0, diff = 0, scale = 1;
      for (int i = 0; i < k_; ++i) {
        sum += static_cast<std::uint32_t>((ca[i] + cb[i]) % m_) * scale;
        diff += static_cast<std::uint32_t>((ca[i] - cb[i] + m_) % m_) * scale;
        scale *= static_cast<std::uint32_t>(m_);
      }
      add_[a * points_ + b] = sum;
      sub_[a * points_ + b] = diff;
    }
  }

  digits_.resize(order_ * points_);
  for (std::uint64_t a = 0; a < order_; ++a) {
    auto t = a % torsion_order_;
    for (std::uint32_t x = 0; x < points_; ++x) {
      digits_[a * points_ + x] = static_cast<std::uint32_t>(t % n_);
      t /= n_;
    }
  }

  inverse_.resize(order_);
  std::vector<std::uint32_t> coeffs(points_);
  for (std::uint64_t a = 0; a < order_; ++a) {
    const auto z = shift_of(static_cast<Index>(a));
    // (s, z)^-1 = (-alpha(-z) s, -z); alpha(-z)(s) at x is s(x + z)
    for (std::uint32_t x = 0; x < points_; ++x) {
      auto c = digits_[a * points_ + point_add(x, z)];
      coeffs[x] = c == 0 ? 0 : static_cast<std::uint32_t>(n_) - c;
    }
    inverse_[a] = encode(coeffs, point_sub(0, z));
  }
}

std::vector<std::int64_t> FiniteWreathGroup::point_coords(std::uint32_t p) const {
  std::vector<std::int64_t> c(k_);
  for (int i = 0; i < k_; ++i) {
    c[i] = p % m_;
    p /= static_cast<std::uint32_t>(m_);
  }
  return c;
}

std::uint32_t FiniteWreathGroup::point_index(const LatticeVector& x) const {
  if (x.rank() != k_)
    throw ParameterMismatch("point_index: rank mismatch");
  std::uint32_t idx = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    idx += static_cast<std::uint32_t>(mod_floor(x[i], m_)) * scale;
    scale *= static_cast<std::uint32_t>(m_);
  }
  return idx;
}

Index FiniteWreathGroup::encode(const std::vector<std::uint32_t>& coeffs, std::uint32_t shift) const {
  std::uint64_t code = 0;
  for (std::uint32_t x = 0; x < points_; ++x)
    code += coeffs[x] * place_[x];
  return static_cast<Index>(code + torsion_order_ * shift);
}

Index FiniteWreathGroup::multiply(Index a, Index b) const {
  const auto za = shift_of(a), zb = shift_of(b);
  const auto* da = &digits_[static_cast<std::size_t>(a) * points_];
  const auto* db = &digits_[static_cast<std::size_t>(b) * points_];
  const auto* sub = &sub_[0];
  const auto n = static_cast<std::uint32_t>(n_);
  std::uint64_t code = 0;
  for (std::uint32_t x = 0; x < points_; ++x) {
    auto c = da[x] + db[sub[x * points_ + za]];
    code += (c >= n ? c - n : c) * place_[x];
  }
  return static_cast<Index>(code + torsion_order_ * point_add(za, zb));
}

Index FiniteWreathGroup::multiply3(Index a, Index b, Index c) const {
  const auto za = shift_of(a), zb = shift_of(b), zc = shift_of(c);
  const auto zab = point_add(za, zb);
  const auto* da = &digits_[static_cast<std::size_t>(a) * points_];
  const auto* db = &digits_[static_cast<std::size_t>(b) * points_];
  const auto* dc = &digits_[static_cast<std::size_t>(c) * points_];
  const auto n = static_cast<std::uint32_t>(n_);
  std::uint64_t code = 0;
  for (std::uint32_t x = 0; x < points_; ++x) {
    auto v = da[x] + db[point_sub(x, za)] + dc[point_sub(x, zab)];
    code += (v % n) * place_[x];
  }
  return static_cast<Index>(code + torsion_order_ * point_add(zab, zc));
}

std::vector<Index> FiniteWreathGroup::generators() const {
  std::vector<Index> gens;
  std::vector<std::uint32_t> coeffs(points_, 0);
  coeffs[0] = 1;
  gens.push_back(encode(coeffs, 0));
  if (m_ > 1) {
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (int i = 0; i < k_; ++i)
      gens.push_back(encode(coeffs, point_index(LatticeVector::unit(k_, i))));
  }
  return gens;
}

GroupElement FiniteWreathGroup::lift(Index a) const {
  TorsionElement t(params());
  for (std::uint32_t x = 0; x < points_; ++x)
    if (auto c = coefficient(a, x))
      t.add_term(LatticeVector(point_coords(x)), c);
  return {std::move(t), LatticeVector(point_coords(shift_of(a)))};
}

Index FiniteWreathGroup::reduce(const GroupElement& g) const {
  if (g.params() != params())
    throw ParameterMismatch("reduce: element of a different group");
  std::vector<std::uint32_t> coeffs(points_, 0);
  for (const auto& [x, c] : g.torsion.support()) {
    auto& slot = coeffs[point_index(x)];
    slot = static_cast<std::uint32_t>((slot + c) % n_);
  }
  return encode(coeffs, point_index(g.shift));
}

std::string FiniteWreathGroup::label() const {
  return "n=" + std::to_string(n_) + ",m=" + std::to_string(m_) + ",k=" + std::to_string(k_);
}

FiniteWreathGroup build_group(std::int64_t n, std::int64_t m, int k, std::uint64_t budget) {
  return FiniteWreathGroup(n, m, k, budget);
}

// ---------------------------------------------------------------------------
// Automorphism tables

std::string check_automorphism(const FiniteWreathGroup& g, const std::vector<Index>& map) {
  if (map.size() != g.order())
    return "table has " + std::to_string(map.size()) + " entries, group order is " + std::to_string(g.order());
  std::vector<char> seen(g.order(), 0);
  for (auto v : map) {
    if (v >= g.order())
      return "table entry out of range";
    if (seen[v]++)
      return "table is not injective (value " + std::to_string(v) + " repeats)";
  }
  for (auto s : g.generators()) {
    const auto fs = map[s];
    for (Index x = 0; x < g.order(); ++x)
      if (map[g.multiply(x, s)] != g.multiply(map[x], fs))
        return "not multiplicative at element " + std::to_string(x) + " times generator " + std::to_string(s);
  }
  return {};
}

FiniteAutomorphism make_automorphism(const FiniteWreathGroup& g, std::vector<Index> map, std::string provenance) {
  auto why = check_automorphism(g, map);
  if (!why.empty())
    throw DescentError(provenance + " on " + g.label() + " is not an automorphism: " + why);
  return {std::move(map), std::move(provenance)};
}

FiniteAutomorphism identity_automorphism(const FiniteWreathGroup& g) {
  std::vector<Index> map(g.order());
  for (Index x = 0; x < g.order(); ++x)
    map[x] = x;
  return {std::move(map), "identity"};
}

FiniteAutomorphism inner_automorphism(const FiniteWreathGroup& g, Index element) {
  std::vector<Index> map(g.order());
  const auto inv = g.inverse(element);
  for (Index x = 0; x < g.order(); ++x)
    map[x] = g.multiply3(element, x, inv);
  return {std::move(map), "inner(" + std::to_string(element) + ")"};
}

FiniteAutomorphism compose(const FiniteWreathGroup& g, const FiniteAutomorphism& a, const FiniteAutomorphism& b) {
  std::vector<Index> map(g.order());
  for (Index x = 0; x < g.order(); ++x)
    map[x] = a.map[b.map[x]];
  return {std::move(map), a.provenance + " o " + b.provenance};
}

FiniteAutomorphism descend_automorphism(const FiniteWreathGroup& g, const WreathAutomorphism& a) {
  if (a.params() != g.params())
    throw ParameterMismatch("descend_automorphism: automorphism of a different group");
  if (!a.is_valid())
    throw InvalidAutomorphism("descend_automorphism: automorphism fails validation");
  const int k = g.rank();
  const auto m = g.box_modulus();

  for (int i = 0; i < k; ++i) {
    // phi~(m e_i) = sum_{j<m} alpha(j M e_i)(T_i) must vanish once folded mod m
    auto wrap = cocycle_value(a, LatticeVector::unit(k, i).scaled(m));
    if (g.reduce(GroupElement::pure_torsion(wrap)) != g.identity())
      throw DescentError("cocycle obstruction: phi~(" + std::to_string(m) + " e_" + std::to_string(i + 1) +
                         ") = " + wrap.to_string() + " does not vanish mod " + std::to_string(m));
  }

  // f(s, z) = f(s, 0) f(0, z) and f(s, 0) = sum_x s(x) phi'(D[x])
  const auto P = g.points();
  std::vector<std::vector<std::uint32_t>> delta_image(P, std::vector<std::uint32_t>(P));
  std::vector<Index> shift_image(P);
  for (std::uint32_t x = 0; x < P; ++x) {
    LatticeVector pt(g.point_coords(x));
    auto img = g.reduce(GroupElement::pure_torsion(apply_restriction(a, TorsionElement::delta(g.params(), pt))));
    for (std::uint32_t y = 0; y < P; ++y)
      delta_image[x][y] = g.coefficient(img, y);
    shift_image[x] = g.reduce(apply(a, GroupElement::pure_shift(g.params(), pt)));
  }
  const auto n = static_cast<std::uint64_t>(g.modulus());
  std::vector<Index> map(g.order());
  std::vector<std::uint32_t> coeffs(P);
  for (Index e = 0; e < g.order(); ++e) {
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (std::uint32_t x = 0; x < P; ++x)
      if (auto c = g.coefficient(e, x))
        for (std::uint32_t y = 0; y < P; ++y)
          coeffs[y] = static_cast<std::uint32_t>((coeffs[y] + static_cast<std::uint64_t>(c) * delta_image[x][y]) % n);
    map[e] = g.multiply(g.encode(coeffs, 0), shift_image[g.shift_of(e)]);
  }
  return make_automorphism(g, std::move(map), "descended " + a.to_string());
}

std::vector<IntegerMatrix> small_unimodular_matrices(int k) {
  std::vector<IntegerMatrix> out;
  if (k <= 2) {
    const int cells = k * k;
    int total = 1;
    for (int i = 0; i < cells; ++i)
      total *= 3;
    for (int code = 0; code < total; ++code) {
      IntegerMatrix mat(k, k);
      int c = code;
      for (int i = 0; i < cells; ++i) {
        mat(i / k, i % k) = c % 3 - 1;
        c /= 3;
      }
      if (mat.is_unimodular())
        out.push_back(std::move(mat));
    }
    return out;
  }
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i)
    perm[i] = i;
  do {
    for (int signs = 0; signs < (1 << k); ++signs) {
      IntegerMatrix mat(k, k);
      for (int i = 0; i < k; ++i)
        mat(i, perm[i]) = (signs >> i) & 1 ? -1 : 1;
      out.push_back(std::move(mat));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<WreathAutomorphism> zero_cocycle_automorphisms(std::int64_t n, std::int64_t m, int k) {
  const GroupParams params(n, k);
  std::vector<LatticeVector> offsets;
  {
    std::vector<std::int64_t> cur(k, 0);
    for (;;) {
      offsets.emplace_back(cur);
      int i = 0;
      while (i < k && cur[i] == m - 1)
        cur[i++] = 0;
      if (i == k)
        break;
      ++cur[i];
    }
  }
  std::vector<WreathAutomorphism> out;
  for (const auto& mat : small_unimodular_matrices(k))
    for (std::int64_t c = 1; c < n; ++c) {
      if (gcd(c, n) != 1)
        continue;
      for (const auto& a : offsets)
        out.emplace_back(params, mat, TorsionElement::delta(params, a, c),
                         std::vector<TorsionElement>(k, TorsionElement(params)));
    }
  return out;
}

Index project(const FiniteWreathGroup& big, const FiniteWreathGroup& small, Index a) {
  if (big.box_modulus() != small.box_modulus() || big.rank() != small.rank() ||
      big.modulus() % small.modulus() != 0)
    throw ParameterMismatch("project: " + small.label() + " is not a coefficient quotient of " + big.label());
  std::vector<std::uint32_t> coeffs(big.points());
  const auto d = static_cast<std::uint32_t>(small.modulus());
  for (std::uint32_t x = 0; x < big.points(); ++x)
    coeffs[x] = big.coefficient(a, x) % d;
  return small.encode(coeffs, big.shift_of(a));
}

} // namespace wreath::finite
