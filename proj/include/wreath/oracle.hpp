#pragma once

// Exhaustive twisted-conjugacy computations on finite truncations, and the
// checks built on them. Every check reports as
//   CHECK <name> <params> PASS|FAIL <lhs> <rhs>

#include "wreath/finite_group.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wreath::finite {

/// Union by size with path halving.
class UnionFind {
public:
  explicit UnionFind(std::size_t n);
  Index find(Index x);
  /// True if x and y were in different sets.
  bool unite(Index x, Index y);
  std::size_t size() const { return parent_.size(); }

private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
};

struct TwistedClassPartition {
  /// Class id per element. Ids are ordered by representative.
  std::vector<Index> class_of;
  /// Minimal element index of each class, ascending.
  std::vector<Index> representatives;

  std::size_t count() const { return representatives.size(); }
  friend bool operator==(const TwistedClassPartition&, const TwistedClassPartition&) = default;
};

/// Canonical partition from a union-find forest over [0, n).
TwistedClassPartition canonical_partition(UnionFind& uf);

/// Union-find over all pairs (h, g) in [0, limit)^2, uniting g with
/// h g f(h^-1). limit = 0 means the whole group; limit = torsion_order()
/// restricts to the torsion subgroup, which f must then preserve.
TwistedClassPartition twisted_classes_serial(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                             std::uint64_t limit = 0);

/// As twisted_classes_serial, visiting h and g in the given order (a
/// permutation of [0, limit)).
TwistedClassPartition twisted_classes_in_order(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                               std::span<const Index> order);

/// OpenMP version: each worker unites over its slice of h in a private forest;
/// the forests are merged sequentially in worker order. Same result as the
/// serial kernel.
TwistedClassPartition twisted_classes_parallel(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                               std::uint64_t limit = 0);

/// Parallel when more than one thread is available and the group is not tiny.
TwistedClassPartition twisted_classes(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                      std::uint64_t limit = 0);

/// Ordinary conjugacy classes, by direct orbit enumeration.
TwistedClassPartition conjugacy_classes(const FiniteWreathGroup& g);

/// Number of conjugacy classes C with f(C) = C.
std::uint64_t fixed_conjugacy_classes(const FiniteWreathGroup& g, const FiniteAutomorphism& f);
/// Same, reusing conjugacy_classes(g).
std::uint64_t fixed_conjugacy_classes(const TwistedClassPartition& classes, const FiniteAutomorphism& f);

struct CheckResult {
  std::string name;
  std::string params;
  bool pass = false;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  /// Empty on success.
  std::string detail;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Params string "<label>" or "<label>,<tag>".
std::string check_params(const FiniteWreathGroup& g, const std::string& tag);

/// lhs = R(f), rhs = number of f-fixed conjugacy classes.
CheckResult verify_tbft_finite(const FiniteWreathGroup& g, const FiniteAutomorphism& f, const std::string& tag = "");

/// lhs = R(f), rhs = R(tau_x o f). Also checks that y -> y x carries the
/// f-classes bijectively onto the (tau_{x^-1} o f)-classes.
CheckResult verify_shift_invariance(const FiniteWreathGroup& g, const FiniteAutomorphism& f, Index x,
                                    const std::string& tag = "");

/// lhs = R(f_big), rhs = R(f_small). Checks Pi f_big = f_small Pi on all
/// elements, that every f_big-class lands in one f_small-class, that the class
/// map is onto, and lhs >= rhs.
CheckResult verify_projection(const FiniteWreathGroup& big, const FiniteWreathGroup& small,
                              const FiniteAutomorphism& f_big, const FiniteAutomorphism& f_small,
                              const std::string& tag = "");

/// lhs = R(f') on the torsion subgroup, rhs = R(f) * #{fixed points of the
/// induced map on (Z/m)^k}; passes when lhs <= rhs.
CheckResult verify_restriction_bound(const FiniteWreathGroup& g, const FiniteAutomorphism& f,
                                     const std::string& tag = "");

/// Fixed points of the map induced by f on G / torsion = (Z/m)^k.
std::uint64_t induced_quotient_fixed_points(const FiniteWreathGroup& g, const FiniteAutomorphism& f);

} // namespace wreath::finite
