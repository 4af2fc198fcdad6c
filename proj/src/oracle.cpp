#include "wreath/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wreath::finite {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), Index{0});
}

Index UnionFind::find(Index x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(Index x, Index y) {
  x = find(x);
  y = find(y);
  if (x == y)
    return false;
  if (size_[x] < size_[y])
    std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

TwistedClassPartition canonical_partition(UnionFind& uf) {
  const auto n = uf.size();
  constexpr Index unset = ~Index{0};
  std::vector<Index> id_of_root(n, unset);
  TwistedClassPartition out;
  out.class_of.resize(n);
  for (Index x = 0; x < n; ++x) {
    auto& id = id_of_root[uf.find(x)];
    if (id == unset) {
      id = static_cast<Index>(out.representatives.size());
      out.representatives.push_back(x);
    }
    out.class_of[x] = id;
  }
  return out;
}

namespace {

std::uint64_t resolve_limit(const FiniteWreathGroup& g, const FiniteAutomorphism& f, std::uint64_t limit) {
  if (f.map.size() != g.order())
    throw std::invalid_argument("automorphism table does not match the group order");
  if (limit == 0 || limit == g.order())
    return g.order();
  if (limit != g.torsion_order())
    throw std::invalid_argument("twisted classes: limit must be 0, the torsion order or the group order");
  for (Index x = 0; x < limit; ++x)
    if (f(x) >= limit)
      throw std::invalid_argument("twisted classes: automorphism does not preserve the torsion subgroup");
  return limit;
}

void unite_slice(const FiniteWreathGroup& g, const FiniteAutomorphism& f, UnionFind& uf, Index h, Index limit) {
  const auto right = f(g.inverse(h));
  for (Index x = 0; x < limit; ++x)
    uf.unite(x, g.multiply3(h, x, right));
}

} // namespace

TwistedClassPartition twisted_classes_serial(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                             std::uint64_t limit) {
  const auto L = static_cast<Index>(resolve_limit(g, f, limit));
  UnionFind uf(L);
  for (Index h = 0; h < L; ++h)
    unite_slice(g, f, uf, h, L);
  return canonical_partition(uf);
}

TwistedClassPartition twisted_classes_in_order(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                               std::span<const Index> order) {
  const auto L = static_cast<Index>(resolve_limit(g, f, order.size()));
  std::vector<char> seen(L, 0);
  for (auto x : order)
    if (x >= L || seen[x]++)
      throw std::invalid_argument("twisted_classes_in_order: order is not a permutation");
  UnionFind uf(L);
  for (auto h : order) {
    const auto right = f(g.inverse(h));
    for (auto x : order)
      uf.unite(x, g.multiply3(h, x, right));
  }
  return canonical_partition(uf);
}

TwistedClassPartition twisted_classes_parallel(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                               std::uint64_t limit) {
  const auto L = static_cast<Index>(resolve_limit(g, f, limit));
  const int workers = std::max(1, std::min<int>(omp_get_max_threads(), static_cast<int>(L)));
  std::vector<UnionFind> forests;
  forests.reserve(workers);
  for (int w = 0; w < workers; ++w)
    forests.emplace_back(L);

#pragma omp parallel num_threads(workers)
  {
    const int w = omp_get_thread_num();
    const int nw = omp_get_num_threads();
    // contiguous slices so the assignment does not depend on scheduling
    const Index begin = static_cast<Index>(static_cast<std::uint64_t>(L) * w / nw);
    const Index end = static_cast<Index>(static_cast<std::uint64_t>(L) * (w + 1) / nw);
    for (Index h = begin; h < end; ++h)
      unite_slice(g, f, forests[w], h, L);
  }

  UnionFind merged(L);
  for (auto& forest : forests)
    for (Index x = 0; x < L; ++x)
      merged.unite(x, forest.find(x));
  return canonical_partition(merged);
}

TwistedClassPartition twisted_classes(const FiniteWreathGroup& g, const FiniteAutomorphism& f, std::uint64_t limit) {
  if (omp_get_max_threads() > 1 && g.order() >= 512)
    return twisted_classes_parallel(g, f, limit);
  return twisted_classes_serial(g, f, limit);
}

TwistedClassPartition conjugacy_classes(const FiniteWreathGroup& g) {
  constexpr Index unset = ~Index{0};
  const auto n = static_cast<Index>(g.order());
  TwistedClassPartition out;
  out.class_of.assign(n, unset);
  for (Index x = 0; x < n; ++x) {
    if (out.class_of[x] != unset)
      continue;
    const auto id = static_cast<Index>(out.representatives.size());
    out.representatives.push_back(x);
    for (Index h = 0; h < n; ++h)
      out.class_of[g.multiply3(h, x, g.inverse(h))] = id;
  }
  return out;
}

std::uint64_t fixed_conjugacy_classes(const FiniteWreathGroup& g, const FiniteAutomorphism& f) {
  if (f.map.size() != g.order())
    throw std::invalid_argument("automorphism table does not match the group order");
  return fixed_conjugacy_classes(conjugacy_classes(g), f);
}

std::uint64_t fixed_conjugacy_classes(const TwistedClassPartition& classes, const FiniteAutomorphism& f) {
  if (f.map.size() != classes.class_of.size())
    throw std::invalid_argument("automorphism table does not match the class partition");
  std::uint64_t fixed = 0;
  for (Index c = 0; c < classes.count(); ++c)
    if (classes.class_of[f(classes.representatives[c])] == c)
      ++fixed;
  return fixed;
}

// ---------------------------------------------------------------------------
// Reports

std::string CheckResult::to_text() const {
  std::string line = "CHECK " + name + " " + params + (pass ? " PASS " : " FAIL ") + std::to_string(lhs) + " " +
                     std::to_string(rhs);
  if (!detail.empty())
    line += " # " + detail;
  return line;
}

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j = {
      {"check", name}, {"params", params}, {"status", pass ? "PASS" : "FAIL"}, {"lhs", lhs}, {"rhs", rhs}};
  if (!detail.empty())
    j["detail"] = detail;
  return j;
}

std::string check_params(const FiniteWreathGroup& g, const std::string& tag) {
  return tag.empty() ? g.label() : g.label() + "," + tag;
}

CheckResult verify_tbft_finite(const FiniteWreathGroup& g, const FiniteAutomorphism& f, const std::string& tag) {
  CheckResult r;
  r.name = "tbft";
  r.params = check_params(g, tag);
  r.lhs = twisted_classes(g, f).count();
  r.rhs = fixed_conjugacy_classes(g, f);
  r.pass = r.lhs == r.rhs;
  if (!r.pass)
    r.detail = "twisted class count differs from fixed conjugacy class count";
  return r;
}

CheckResult verify_shift_invariance(const FiniteWreathGroup& g, const FiniteAutomorphism& f, Index x,
                                    const std::string& tag) {
  CheckResult r;
  r.name = "shift";
  r.params = check_params(g, tag + (tag.empty() ? "" : ",") + "g=" + std::to_string(x));
  const auto base = twisted_classes(g, f);
  const auto twisted = twisted_classes(g, compose(g, inner_automorphism(g, x), f));
  r.lhs = base.count();
  r.rhs = twisted.count();
  if (r.lhs != r.rhs) {
    r.detail = "R(f) != R(tau_g o f)";
    return r;
  }

  const auto target = twisted_classes(g, compose(g, inner_automorphism(g, g.inverse(x)), f));
  if (target.count() != base.count()) {
    r.detail = "R(f) != R(tau_g^-1 o f)";
    return r;
  }
  constexpr Index unset = ~Index{0};
  std::vector<Index> image(base.count(), unset);
  for (Index y = 0; y < g.order(); ++y) {
    const auto c = base.class_of[y];
    const auto d = target.class_of[g.multiply(y, x)];
    if (image[c] == unset)
      image[c] = d;
    else if (image[c] != d) {
      r.detail = "right shift splits the class of " + std::to_string(base.representatives[c]);
      return r;
    }
  }
  std::vector<char> hit(target.count(), 0);
  for (auto d : image)
    if (hit[d]++) {
      r.detail = "right shift merges two classes";
      return r;
    }
  r.pass = true;
  return r;
}

CheckResult verify_projection(const FiniteWreathGroup& big, const FiniteWreathGroup& small,
                              const FiniteAutomorphism& f_big, const FiniteAutomorphism& f_small,
                              const std::string& tag) {
  CheckResult r;
  r.name = "projection";
  r.params = check_params(big, (tag.empty() ? "" : tag + ",") + "d=" + std::to_string(small.modulus()));
  for (Index x = 0; x < big.order(); ++x)
    if (project(big, small, f_big(x)) != f_small(project(big, small, x))) {
      r.detail = "Pi o f_big != f_small o Pi at element " + std::to_string(x);
      return r;
    }
  const auto pb = twisted_classes(big, f_big);
  const auto ps = twisted_classes(small, f_small);
  r.lhs = pb.count();
  r.rhs = ps.count();

  constexpr Index unset = ~Index{0};
  std::vector<Index> image(pb.count(), unset);
  for (Index x = 0; x < big.order(); ++x) {
    const auto c = pb.class_of[x];
    const auto d = ps.class_of[project(big, small, x)];
    if (image[c] == unset)
      image[c] = d;
    else if (image[c] != d) {
      r.detail = "class of " + std::to_string(pb.representatives[c]) + " meets two classes downstairs";
      return r;
    }
  }
  std::vector<char> hit(ps.count(), 0);
  for (auto d : image)
    hit[d] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    r.detail = "class map is not onto";
    return r;
  }
  r.pass = r.lhs >= r.rhs;
  if (!r.pass)
    r.detail = "R(f_big) < R(f_small)";
  return r;
}

std::uint64_t induced_quotient_fixed_points(const FiniteWreathGroup& g, const FiniteAutomorphism& f) {
  std::uint64_t fixed = 0;
  const std::vector<std::uint32_t> zero(g.points(), 0);
  for (std::uint32_t z = 0; z < g.points(); ++z) {
    // torsion is normal and f-invariant, so the shift of f(0, z) is well defined
    if (g.shift_of(f(g.encode(zero, z))) == z)
      ++fixed;
  }
  return fixed;
}

CheckResult verify_restriction_bound(const FiniteWreathGroup& g, const FiniteAutomorphism& f, const std::string& tag) {
  CheckResult r;
  r.name = "restriction-bound";
  r.params = check_params(g, tag);
  r.lhs = twisted_classes(g, f, g.torsion_order()).count();
  r.rhs = twisted_classes(g, f).count() * induced_quotient_fixed_points(g, f);
  r.pass = r.lhs <= r.rhs;
  if (!r.pass)
    r.detail = "R(f') > R(f) * |Fix(f bar)|";
  return r;
}

} // namespace wreath::finite
