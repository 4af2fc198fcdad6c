#pragma once

// Automorphisms of Z_n wr Z^k described by the triple (u, T, M):
//   phi(sigma, z) = (phi'(sigma) + phi~(z), M z)
// with phi'(D[x]) = alpha(M x)(u) and phi~ the crossed homomorphism fixed by
// its values T_i = phi~(e_i) on the standard basis.

#include "wreath/group.hpp"
#include "wreath/matrix.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wreath {

/// Raised when apply/compose is asked to use a triple that fails validation.
class InvalidAutomorphism : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct ValidationReport {
  bool matrix_unimodular = false;
  bool u_is_unit = false;
  bool cocycle_consistent = false;
  std::vector<std::string> failures;

  bool ok() const { return matrix_unimodular && u_is_unit && cocycle_consistent; }
};

class WreathAutomorphism {
public:
  /// Shapes are checked here; the algebraic conditions are checked by validate().
  WreathAutomorphism(GroupParams params, IntegerMatrix matrix, TorsionElement u, std::vector<TorsionElement> cocycle);

  static WreathAutomorphism identity(GroupParams params);

  const GroupParams& params() const { return params_; }
  const IntegerMatrix& matrix() const { return matrix_; }
  const TorsionElement& u() const { return u_; }
  const std::vector<TorsionElement>& cocycle() const { return cocycle_; }

  /// Cached result of validate(); computed once, thread-safe.
  const ValidationReport& report() const;
  bool is_valid() const { return report().ok(); }
  /// Group-ring inverse of u; throws InvalidAutomorphism if u is not a unit.
  const TorsionElement& u_inverse() const;

  friend bool operator==(const WreathAutomorphism& a, const WreathAutomorphism& b) {
    return a.params_ == b.params_ && a.matrix_ == b.matrix_ && a.u_ == b.u_ && a.cocycle_ == b.cocycle_;
  }

  std::string to_string() const;

private:
  struct Cache;

  GroupParams params_;
  IntegerMatrix matrix_;
  TorsionElement u_;
  std::vector<TorsionElement> cocycle_;
  std::shared_ptr<Cache> cache_;
};

/// Group-ring product (a*b)(x) = sum_y a(y) b(x - y) mod n.
TorsionElement convolve(const TorsionElement& a, const TorsionElement& b);

/// Relabels support points x -> M x.
TorsionElement relabel(const IntegerMatrix& m, const TorsionElement& s);

/// True iff u is invertible in Z_n[Z^k]: every reduction mod a prime p | n is
/// a single nonzero monomial.
bool unit_check(const TorsionElement& u);

/// Exact inverse of a unit. Per prime power p^s || n, u = c D[a] (1 + x) with
/// x divisible by p, so (1 + x)^-1 is the finite series sum (-x)^j, j < s; the
/// prime-power inverses are glued coefficientwise by CRT. nullopt if u is not
/// a unit.
std::optional<TorsionElement> group_ring_inverse(const TorsionElement& u);

/// Independent route: solves u * v = D[0] by linear algebra over Z_n with v
/// supported in [-radius, radius]^k.
std::optional<TorsionElement> bounded_inverse_search(const TorsionElement& u, std::int64_t radius = 8);

ValidationReport validate(const WreathAutomorphism& a);

/// phi'(sigma) = u * relabel(M, sigma).
TorsionElement apply_restriction(const WreathAutomorphism& a, const TorsionElement& sigma);

/// phi~(z), expanded along e_1..e_k.
TorsionElement cocycle_value(const WreathAutomorphism& a, const LatticeVector& z);
/// phi~(z) expanded along the axes in `axis_order` (a permutation of 0..k-1).
TorsionElement cocycle_value(const WreathAutomorphism& a, const LatticeVector& z, std::span<const int> axis_order);

GroupElement apply(const WreathAutomorphism& a, const GroupElement& g);

/// a o b
WreathAutomorphism compose(const WreathAutomorphism& a, const WreathAutomorphism& b);
WreathAutomorphism inverse_automorphism(const WreathAutomorphism& a);

/// Conjugation h -> gamma h gamma^-1.
WreathAutomorphism inner(const GroupElement& gamma);

/// tau_gamma o a
WreathAutomorphism twist(const WreathAutomorphism& a, const GroupElement& gamma);

/// The automorphism of Z_d wr Z^k with project_Pi o a = induced o project_Pi.
WreathAutomorphism induce_quotient(const WreathAutomorphism& a, std::int64_t divisor);

} // namespace wreath
