#pragma once

// Reidemeister numbers of automorphisms of Z_n wr Z^k and the R-infinity
// classification.

#include "wreath/automorphism.hpp"
#include "wreath/snf.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wreath {

/// A nonnegative integer or infinity; infinity absorbs under multiplication.
class ExtendedNat {
public:
  static ExtendedNat finite(std::uint64_t v) { return ExtendedNat(v, false); }
  static ExtendedNat infinite() { return ExtendedNat(0, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws std::logic_error when infinite.
  std::uint64_t value() const;

  ExtendedNat operator*(const ExtendedNat& other) const;
  friend bool operator==(const ExtendedNat&, const ExtendedNat&) = default;

  /// Decimal, or the literal "infinite".
  std::string to_string() const;

private:
  ExtendedNat(std::uint64_t v, bool inf) : value_(v), infinite_(inf) {}
  std::uint64_t value_;
  bool infinite_;
};

/// Index of Im(1 - M) in Z^k, via the Smith form of I - M.
ExtendedNat reidemeister_abelian(const IntegerMatrix& m);

/// Number of characters of Z^k fixed by precomposition with M: solutions of
/// (M^T - I) x = 0 in (R/Z)^k, via the Smith form of M^T - I.
ExtendedNat count_fixed_lattice_characters(const IntegerMatrix& m);

/// #{z in (Z/modulus)^k : M z = z}.
std::uint64_t fixed_points_of_matrix(const IntegerMatrix& m, std::int64_t modulus);

/// chi(sigma) = sigma - phi'(sigma)
TorsionElement one_minus_restriction(const WreathAutomorphism& a, const TorsionElement& sigma);

// ---------------------------------------------------------------------------
// Surjectivity of 1 - phi'

enum class CertificateStatus { Certified, Unknown };

enum class CertificateKind {
  /// No uniform argument; witnesses only.
  None,
  /// u = c D[0], M of finite order: on an orbit of length L the preimage of
  /// D[z] is sum_j c^j (1 - c^L)^-1 D[M^j z].
  OrbitUniform,
  /// M = I: 1 - phi' is multiplication by D[0] - u, certified by its inverse.
  TranslationUniform,
};

struct Witness {
  LatticeVector point;
  TorsionElement preimage;
};

struct SurjectivityCertificate {
  CertificateStatus status = CertificateStatus::Unknown;
  CertificateKind kind = CertificateKind::None;
  std::int64_t radius = 0;
  std::vector<Witness> witnesses;

  // OrbitUniform data: the multiplier c and, per occurring orbit length L, the
  // coefficient template b_j, j < L.
  std::int64_t multiplier = 0;
  std::map<unsigned, std::vector<std::int64_t>> orbit_templates;
  // TranslationUniform data: the preimage of D[0].
  std::optional<TorsionElement> translation_preimage;

  std::string diagnostics;

  bool certified() const { return status == CertificateStatus::Certified; }
};

/// Tries to show 1 - phi' is onto. Certified only under a uniform argument
/// valid for every generator; otherwise Unknown, with whatever per-point
/// witnesses a box-supported linear solve (box radius up to `radius`) found.
SurjectivityCertificate restriction_surjectivity(const WreathAutomorphism& a, std::int64_t radius,
                                                 const std::vector<LatticeVector>& test_points);

/// Preimage of D[z] under 1 - phi' using the certificate's template or
/// recorded witnesses; nullopt if the certificate cannot produce one.
std::optional<TorsionElement> generator_preimage(const WreathAutomorphism& a, const SurjectivityCertificate& cert,
                                                 const LatticeVector& z);

/// Preimage of an arbitrary torsion element, by linearity.
std::optional<TorsionElement> restriction_preimage(const WreathAutomorphism& a, const SurjectivityCertificate& cert,
                                                   const TorsionElement& target);

/// True iff every recorded witness satisfies (1 - phi')(w) = D[z] exactly.
bool replay_witnesses(const WreathAutomorphism& a, const SurjectivityCertificate& cert, std::string* failure = nullptr);

/// Raised when a constructed preimage fails its built-in check.
class VerificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Lifts preimages from Z_n and Z_m to Z_nm (nm = modulus of a):
///   sigma = iota_n(eta1) - n * iota_m(eta2)
/// where iota copies coefficients verbatim, chi_n(eta1) = D[z],
/// chi(iota_n eta1) = D[z] + n theta and chi_m(eta2) = pi_m(theta).
/// cert_n / cert_m certify the induced automorphisms over Z_n and Z_m.
/// The result is verified exactly before returning.
TorsionElement crt_lift_preimage(const WreathAutomorphism& a, std::int64_t n, std::int64_t m, const LatticeVector& z,
                                 const SurjectivityCertificate& cert_n, const SurjectivityCertificate& cert_m);

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { AlwaysInfinite, AdmitsFinite };

struct ClassificationResult {
  Verdict verdict = Verdict::AlwaysInfinite;
  std::string reason;
  std::optional<WreathAutomorphism> automorphism;
  std::optional<ExtendedNat> reidemeister;
};

/// Z_n wr Z^k has the R-infinity property iff n is even or (3 | n and k odd).
ClassificationResult classify_r_infinity(std::int64_t n, int k, std::int64_t radius = 8);

/// m with m = 3 mod 7^s (if 7 | n) and m = 2 mod p^s for every other p^s || n.
std::int64_t block_multiplier(std::int64_t n);

/// Automorphism with finite Reidemeister number, for odd n with 3 not dividing
/// n or k even:
///   gcd(n, 6) = 1:  u = 2 D[0], M = -I, T = 0;
///   otherwise:     u = m D[0], M = k/2 copies of [[0,1],[-1,-1]], T = 0.
WreathAutomorphism construct_finite_R(std::int64_t n, int k);

/// The 2x2 block [[0,1],[-1,-1]] of order 3.
IntegerMatrix order_three_block();

struct ReidemeisterResult {
  /// nullopt when the answer is unknown.
  std::optional<ExtendedNat> value;
  ExtendedNat abelian = ExtendedNat::infinite();
  std::optional<SurjectivityCertificate> certificate;
  std::string diagnostics;
};

/// R(phi): infinite if R(M) is; R(M) if 1 - phi' is certified onto (then
/// R(tau o phi') = 1 for every inner twist and classes biject with those of
/// M); unknown otherwise. Test points are the box of radius 1.
ReidemeisterResult reidemeister_full(const WreathAutomorphism& a, std::int64_t radius = 8);

} // namespace wreath
