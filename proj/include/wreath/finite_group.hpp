#pragma once

// Finite truncations Z_n wr (Z/m)^k used as brute-force ground truth.
//
// Elements are indexed by a mixed-radix integer: the torsion coefficients in
// base n over the m^k lattice points (point 0 least significant), then the
// shift point index. Lattice points are themselves mixed-radix base m with
// coordinate 0 least significant. Indices [0, n^(m^k)) are exactly the
// torsion subgroup.

#include "wreath/automorphism.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wreath::finite {

using Index = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a WreathAutomorphism does not induce an automorphism of the truncation.
class DescentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FiniteWreathGroup {
public:
  FiniteWreathGroup(std::int64_t n, std::int64_t m, int k, std::uint64_t budget = kDefaultBudget);

  std::int64_t modulus() const { return n_; }
  std::int64_t box_modulus() const { return m_; }
  int rank() const { return k_; }
  std::uint32_t points() const { return points_; }
  std::uint64_t torsion_order() const { return torsion_order_; }
  std::uint64_t order() const { return order_; }

  Index identity() const { return 0; }
  Index multiply(Index a, Index b) const;
  Index inverse(Index a) const { return inverse_[a]; }
  /// a * b * c in one pass.
  Index multiply3(Index a, Index b, Index c) const;

  std::uint32_t shift_of(Index a) const { return static_cast<std::uint32_t>(a / torsion_order_); }
  std::uint32_t coefficient(Index a, std::uint32_t point) const { return digits_[a * points_ + point]; }
  Index encode(const std::vector<std::uint32_t>& coeffs, std::uint32_t shift) const;

  std::uint32_t point_add(std::uint32_t p, std::uint32_t q) const { return add_[p * points_ + q]; }
  std::uint32_t point_sub(std::uint32_t p, std::uint32_t q) const { return sub_[p * points_ + q]; }
  std::vector<std::int64_t> point_coords(std::uint32_t p) const;
  /// Reduces coordinates mod m.
  std::uint32_t point_index(const LatticeVector& x) const;

  /// D[0] and the coordinate shifts.
  std::vector<Index> generators() const;

  /// Representative in Z_n wr Z^k with coordinates in [0, m).
  GroupElement lift(Index a) const;
  /// Reduction of coordinates mod m.
  Index reduce(const GroupElement& g) const;

  GroupParams params() const { return GroupParams(n_, k_); }
  /// "n=3,m=2,k=1"
  std::string label() const;

private:
  std::int64_t n_, m_;
  int k_;
  std::uint32_t points_;
  std::uint64_t torsion_order_;
  std::uint64_t order_;
  std::vector<std::uint64_t> place_; // n^x
  std::vector<std::uint32_t> add_, sub_;
  std::vector<std::uint32_t> digits_; // order_ * points_
  std::vector<Index> inverse_;
};

FiniteWreathGroup build_group(std::int64_t n, std::int64_t m, int k, std::uint64_t budget = kDefaultBudget);

/// A verified automorphism of a FiniteWreathGroup, as a table on indices.
struct FiniteAutomorphism {
  std::vector<Index> map;
  std::string provenance;

  Index operator()(Index a) const { return map[a]; }
};

/// Checks bijectivity and f(g s) = f(g) f(s) for every g and every generator s,
/// which forces multiplicativity on all pairs. Returns the failure, or "" if none.
std::string check_automorphism(const FiniteWreathGroup& g, const std::vector<Index>& map);

/// Throws DescentError if the table is not an automorphism.
FiniteAutomorphism make_automorphism(const FiniteWreathGroup& g, std::vector<Index> map, std::string provenance);

FiniteAutomorphism identity_automorphism(const FiniteWreathGroup& g);
/// x -> g x g^-1
FiniteAutomorphism inner_automorphism(const FiniteWreathGroup& g, Index element);
/// a o b
FiniteAutomorphism compose(const FiniteWreathGroup& g, const FiniteAutomorphism& a, const FiniteAutomorphism& b);

/// Reduces a WreathAutomorphism to the truncation. Throws DescentError when the
/// cocycle obstruction sum_{j<m} alpha(j M e_i)(T_i) does not vanish mod m, or
/// when the resulting table is not an automorphism.
FiniteAutomorphism descend_automorphism(const FiniteWreathGroup& g, const WreathAutomorphism& a);

/// Unimodular k x k matrices with entries in {-1, 0, 1} (all of them for k <= 2,
/// signed permutations for larger k).
std::vector<IntegerMatrix> small_unimodular_matrices(int k);

/// Zero-cocycle automorphisms (c D[a], M, 0) with c a unit mod n, a in [0, m)^k
/// and M from small_unimodular_matrices(k).
std::vector<WreathAutomorphism> zero_cocycle_automorphisms(std::int64_t n, std::int64_t m, int k);

/// Coefficient reduction onto Z_d wr (Z/m)^k.
Index project(const FiniteWreathGroup& big, const FiniteWreathGroup& small, Index a);

} // namespace wreath::finite
