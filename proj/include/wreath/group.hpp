#pragma once

// Elements of the lamplighter-type group Z_n wr Z^k = (sum over Z^k of Z_n) x| Z^k.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wreath {

/// Raised when elements of differently parameterized groups are mixed.
class ParameterMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Ambient group descriptor: Z_modulus wr Z^rank.
struct GroupParams {
  std::int64_t modulus = 2;
  int rank = 1;

  GroupParams() = default;
  GroupParams(std::int64_t n, int k);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// A point of Z^k. Arithmetic is overflow-checked.
class LatticeVector {
public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticeVector zero(int rank) { return LatticeVector(std::vector<std::int64_t>(rank, 0)); }
  static LatticeVector unit(int rank, int axis);

  int rank() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int i) const { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;

  LatticeVector operator+(const LatticeVector& other) const;
  LatticeVector operator-(const LatticeVector& other) const;
  LatticeVector operator-() const;
  LatticeVector scaled(std::int64_t factor) const;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) { return a.coords_ <=> b.coords_; }

  /// "[z1,z2,...]"
  std::string to_string() const;

private:
  std::vector<std::int64_t> coords_;
};

/// Finitely supported Z_n-valued function on Z^k, i.e. sum of c_x * D[x].
/// Also serves as an element of the group ring Z_n[Z^k].
///
/// Support is kept canonical: coefficients live in [1, n) and zero
/// coefficients are never stored, so structural equality is group equality.
class TorsionElement {
public:
  using Support = std::map<LatticeVector, std::int64_t>;

  explicit TorsionElement(GroupParams params) : params_(params) {}
  TorsionElement(GroupParams params, const std::vector<std::pair<std::int64_t, LatticeVector>>& terms);

  /// c * D[x]
  static TorsionElement delta(GroupParams params, const LatticeVector& x, std::int64_t c = 1);

  const GroupParams& params() const { return params_; }
  std::int64_t modulus() const { return params_.modulus; }
  int rank() const { return params_.rank; }
  const Support& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  std::int64_t coefficient(const LatticeVector& x) const;

  /// Adds c * D[x] in place.
  void add_term(const LatticeVector& x, std::int64_t c);

  TorsionElement operator+(const TorsionElement& other) const;
  TorsionElement operator-(const TorsionElement& other) const;
  TorsionElement operator-() const;
  TorsionElement scaled(std::int64_t c) const;

  friend bool operator==(const TorsionElement&, const TorsionElement&) = default;

  /// "c1*D[z1] + c2*D[z2]" in lexicographic order; "0" when empty.
  std::string to_string() const;

private:
  void require_same(const TorsionElement& other) const;

  GroupParams params_;
  Support support_;
};

/// Element (sigma, z) of the semidirect product.
struct GroupElement {
  TorsionElement torsion;
  LatticeVector shift;

  GroupElement(TorsionElement t, LatticeVector z);

  static GroupElement identity(GroupParams params);
  static GroupElement pure_shift(GroupParams params, LatticeVector z);
  static GroupElement pure_torsion(TorsionElement t);

  const GroupParams& params() const { return torsion.params(); }
  bool is_identity() const { return torsion.is_zero() && shift.is_zero(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  /// "(torsion ; shift)"
  std::string to_string() const;
};

/// alpha(z): moves every support point x of s to x + z.
TorsionElement alpha_shift(const LatticeVector& z, const TorsionElement& s);

/// (s1, z1) * (s2, z2) = (s1 + alpha(z1)(s2), z1 + z2).
GroupElement multiply(const GroupElement& g, const GroupElement& h);

/// (s, z)^-1 = (-alpha(-z)(s), -z).
GroupElement inverse(const GroupElement& g);

/// Coefficient reduction Z_n -> Z_d for a divisor d of n.
TorsionElement project_pi(const TorsionElement& s, std::int64_t divisor);

/// (s, z) -> (project_pi(s), z); a homomorphism Z_n wr Z^k -> Z_d wr Z^k.
GroupElement project_Pi(const GroupElement& g, std::int64_t divisor);

/// All points of the box [-radius, radius]^rank, lexicographic order.
std::vector<LatticeVector> box_points(int rank, std::int64_t radius);

using ElementMap = std::function<GroupElement(const GroupElement&)>;

/// h * g * phi(h^-1).
GroupElement twisted_conjugate(const GroupElement& h, const GroupElement& g, const ElementMap& phi);

} // namespace wreath
