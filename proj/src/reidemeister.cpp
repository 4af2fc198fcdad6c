#include "wreath/reidemeister.hpp"

#include "wreath/arith.hpp"
#include "wreath/linsolve.hpp"

#include <map>

namespace wreath {

std::uint64_t ExtendedNat::value() const {
  if (infinite_)
    throw std::logic_error("ExtendedNat::value() on infinity");
  return value_;
}

ExtendedNat ExtendedNat::operator*(const ExtendedNat& other) const {
  if (infinite_ || other.infinite_)
    return infinite();
  std::uint64_t r;
  if (__builtin_mul_overflow(value_, other.value_, &r))
    throw OverflowError("ExtendedNat product overflow");
  return finite(r);
}

std::string ExtendedNat::to_string() const { return infinite_ ? "infinite" : std::to_string(value_); }

// ---------------------------------------------------------------------------
// Lattice part

static ExtendedNat diagonal_index(const std::vector<std::int64_t>& diagonal) {
  auto result = ExtendedNat::finite(1);
  for (auto d : diagonal)
    result = result * (d == 0 ? ExtendedNat::infinite() : ExtendedNat::finite(static_cast<std::uint64_t>(d)));
  return result;
}

static void require_unimodular(const IntegerMatrix& m, const char* where) {
  if (!m.is_unimodular())
    throw std::invalid_argument(std::string(where) + ": matrix " + m.to_string() + " is not unimodular");
}

ExtendedNat reidemeister_abelian(const IntegerMatrix& m) {
  require_unimodular(m, "reidemeister_abelian");
  return diagonal_index(smith_diagonal(IntegerMatrix::identity(m.rows()) - m));
}

ExtendedNat count_fixed_lattice_characters(const IntegerMatrix& m) {
  require_unimodular(m, "count_fixed_lattice_characters");
  // x in (R/Z)^k with (M^T - I) x = 0: with U (M^T - I) V = D the solutions
  // are V y, d_i y_i = 0 mod 1, i.e. |d_i| choices per axis or a circle if d_i = 0.
  return diagonal_index(smith_diagonal(m.transpose() - IntegerMatrix::identity(m.rows())));
}

std::uint64_t fixed_points_of_matrix(const IntegerMatrix& m, std::int64_t modulus) {
  require_unimodular(m, "fixed_points_of_matrix");
  if (modulus < 1)
    throw std::invalid_argument("fixed_points_of_matrix: modulus must be >= 1");
  std::uint64_t count = 1;
  for (auto d : smith_diagonal(m - IntegerMatrix::identity(m.rows()))) {
    auto g = static_cast<std::uint64_t>(d == 0 ? modulus : gcd(d, modulus));
    if (__builtin_mul_overflow(count, g, &count))
      throw OverflowError("fixed point count overflow");
  }
  return count;
}

TorsionElement one_minus_restriction(const WreathAutomorphism& a, const TorsionElement& sigma) {
  return sigma - apply_restriction(a, sigma);
}

// ---------------------------------------------------------------------------
// Surjectivity certificates

namespace {

std::vector<unsigned> divisors(unsigned q) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= q; ++d)
    if (q % d == 0)
      out.push_back(d);
  return out;
}

int kernel_rank(const IntegerMatrix& b) {
  int rank = 0;
  for (auto d : smith_diagonal(b))
    rank += d != 0;
  return b.cols() - rank;
}

// Orbit lengths of x -> M x that actually occur on Z^k: L occurs iff
// ker(M^L - I) has larger rank than every ker(M^j - I), j a proper divisor of L.
// These kernels are saturated sublattices, so a proper one has smaller rank.
std::vector<unsigned> occurring_orbit_lengths(const IntegerMatrix& m, unsigned order) {
  const auto id = IntegerMatrix::identity(m.rows());
  std::map<unsigned, int> rank_of;
  for (auto d : divisors(order))
    rank_of[d] = kernel_rank(m.power(d) - id);
  std::vector<unsigned> out;
  for (auto [len, r] : rank_of) {
    bool fresh = true;
    for (auto j : divisors(len))
      if (j != len && rank_of[j] >= r)
        fresh = false;
    if (fresh)
      out.push_back(len);
  }
  return out;
}

struct AffineMap {
  IntegerMatrix m;
  LatticeVector offset;
  LatticeVector operator()(const LatticeVector& x) const { return m * x + offset; }
};

// Points on the orbit z, f z, f^2 z, ... until it closes.
std::optional<std::vector<LatticeVector>> orbit_of(const AffineMap& f, const LatticeVector& z, unsigned bound) {
  std::vector<LatticeVector> orbit{z};
  auto x = f(z);
  while (x != z) {
    if (orbit.size() >= bound)
      return std::nullopt;
    orbit.push_back(x);
    x = f(x);
  }
  return orbit;
}

bool try_orbit_uniform(const WreathAutomorphism& a, SurjectivityCertificate& cert) {
  const auto& u = a.u();
  if (u.support().size() != 1)
    return false;
  const auto& [offset, c] = *u.support().begin();
  const auto& m = a.matrix();
  const unsigned order = matrix_order(m);
  if (order == 0)
    return false;
  const auto n = a.params().modulus;

  std::vector<unsigned> lengths;
  if (offset.is_zero()) {
    lengths = occurring_orbit_lengths(m, order);
  } else {
    // f^q(x) = x + (I + M + ... + M^(q-1)) offset; finite orbits need that sum to vanish.
    auto acc = LatticeVector::zero(offset.rank());
    auto p = offset;
    for (unsigned i = 0; i < order; ++i) {
      acc = acc + p;
      p = m * p;
    }
    if (!acc.is_zero())
      return false;
    lengths = divisors(order);
  }

  cert.multiplier = c;
  for (auto len : lengths) {
    auto inv = inverse_mod(1 - pow_mod(c, len, n) + n, n);
    if (inv < 0) {
      cert.diagnostics = "1 - c^" + std::to_string(len) + " is not a unit mod " + std::to_string(n) +
                         ": 1 - phi' misses generators on orbits of length " + std::to_string(len);
      cert.orbit_templates.clear();
      return false;
    }
    std::vector<std::int64_t> coeffs(len);
    auto cj = std::int64_t{1};
    for (unsigned j = 0; j < len; ++j) {
      coeffs[j] = mul_mod(cj, inv, n);
      cj = mul_mod(cj, c, n);
    }
    cert.orbit_templates.emplace(len, std::move(coeffs));
  }
  cert.kind = CertificateKind::OrbitUniform;
  return true;
}

bool try_translation_uniform(const WreathAutomorphism& a, SurjectivityCertificate& cert) {
  if (!a.matrix().is_identity())
    return false;
  auto symbol = TorsionElement::delta(a.params(), LatticeVector::zero(a.params().rank)) - a.u();
  auto inv = group_ring_inverse(symbol);
  if (!inv) {
    cert.diagnostics = "M = I and D[0] - u = " + symbol.to_string() + " is not a unit: 1 - phi' is not onto";
    return false;
  }
  cert.translation_preimage = std::move(*inv);
  cert.kind = CertificateKind::TranslationUniform;
  return true;
}

// (1 - phi') sigma = D[z] with sigma supported on z + [-r, r]^k.
std::optional<TorsionElement> box_solve(const WreathAutomorphism& a, const LatticeVector& z, std::int64_t r) {
  const int k = a.params().rank;
  std::vector<LatticeVector> unknowns;
  for (const auto& y : box_points(k, r))
    unknowns.push_back(z + y);
  std::map<LatticeVector, int> eq;
  eq.emplace(z, 0);
  std::vector<TorsionElement> columns;
  for (const auto& y : unknowns) {
    auto col = one_minus_restriction(a, TorsionElement::delta(a.params(), y));
    for (const auto& [x, c] : col.support())
      eq.try_emplace(x, 0);
    columns.push_back(std::move(col));
  }
  int next = 0;
  for (auto& [x, idx] : eq)
    idx = next++;
  ModularSystem sys;
  sys.modulus = a.params().modulus;
  sys.unknowns = static_cast<int>(unknowns.size());
  sys.rows.assign(eq.size(), std::vector<std::int64_t>(unknowns.size(), 0));
  sys.rhs.assign(eq.size(), 0);
  sys.rhs[eq.at(z)] = 1;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [x, c] : columns[j].support())
      sys.rows[eq.at(x)][j] = c;
  auto sol = solve_mod(sys);
  if (!sol)
    return std::nullopt;
  TorsionElement sigma(a.params());
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    sigma.add_term(unknowns[j], (*sol)[j]);
  return sigma;
}

constexpr std::size_t kMaxBoxUnknowns = 2500;

} // namespace

std::optional<TorsionElement> generator_preimage(const WreathAutomorphism& a, const SurjectivityCertificate& cert,
                                                 const LatticeVector& z) {
  const auto& params = a.params();
  if (cert.certified() && cert.kind == CertificateKind::OrbitUniform) {
    const auto& offset = a.u().support().begin()->first;
    AffineMap f{a.matrix(), offset};
    auto orbit = orbit_of(f, z, 4096);
    if (!orbit)
      return std::nullopt;
    auto it = cert.orbit_templates.find(static_cast<unsigned>(orbit->size()));
    if (it == cert.orbit_templates.end())
      return std::nullopt;
    TorsionElement sigma(params);
    for (std::size_t j = 0; j < orbit->size(); ++j)
      sigma.add_term((*orbit)[j], it->second[j]);
    return sigma;
  }
  if (cert.certified() && cert.kind == CertificateKind::TranslationUniform && cert.translation_preimage)
    return alpha_shift(z, *cert.translation_preimage);
  for (const auto& w : cert.witnesses)
    if (w.point == z)
      return w.preimage;
  return std::nullopt;
}

std::optional<TorsionElement> restriction_preimage(const WreathAutomorphism& a, const SurjectivityCertificate& cert,
                                                   const TorsionElement& target) {
  TorsionElement sigma(a.params());
  for (const auto& [x, c] : target.support()) {
    auto w = generator_preimage(a, cert, x);
    if (!w)
      return std::nullopt;
    sigma = sigma + w->scaled(c);
  }
  return sigma;
}

SurjectivityCertificate restriction_surjectivity(const WreathAutomorphism& a, std::int64_t radius,
                                                 const std::vector<LatticeVector>& test_points) {
  if (!a.is_valid())
    throw InvalidAutomorphism("restriction_surjectivity: automorphism fails validation");
  SurjectivityCertificate cert;
  cert.radius = radius;

  if (try_orbit_uniform(a, cert) || try_translation_uniform(a, cert)) {
    cert.status = CertificateStatus::Certified;
    for (const auto& z : test_points) {
      auto w = generator_preimage(a, cert, z);
      if (!w || one_minus_restriction(a, *w) != TorsionElement::delta(a.params(), z)) {
        cert.status = CertificateStatus::Unknown;
        cert.diagnostics = "uniform template failed to verify at " + z.to_string();
        cert.witnesses.clear();
        return cert;
      }
      cert.witnesses.push_back({z, std::move(*w)});
    }
    return cert;
  }

  // No uniform argument: witnesses by growing box-supported solves.
  cert.kind = CertificateKind::None;
  const int k = a.params().rank;
  std::vector<std::optional<TorsionElement>> found(test_points.size());
  std::int64_t used = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : used)
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    std::size_t box = 1;
    for (std::int64_t r = 0; r <= radius; ++r) {
      box = 1;
      for (int t = 0; t < k; ++t)
        box *= static_cast<std::size_t>(2 * r + 1);
      if (box > kMaxBoxUnknowns)
        break;
      used = std::max(used, r);
      if (auto w = box_solve(a, test_points[i], r)) {
        found[i] = std::move(w);
        break;
      }
    }
  }
  cert.radius = used;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    if (found[i])
      cert.witnesses.push_back({test_points[i], std::move(*found[i])});
    else
      ++missing;
  }
  if (cert.diagnostics.empty())
    cert.diagnostics = "no uniform argument applies";
  cert.diagnostics += "; " + std::to_string(cert.witnesses.size()) + " of " + std::to_string(test_points.size()) +
                      " generators have box witnesses";
  if (missing)
    cert.diagnostics += " (" + std::to_string(missing) + " without one up to radius " + std::to_string(used) + ")";
  return cert;
}

bool replay_witnesses(const WreathAutomorphism& a, const SurjectivityCertificate& cert, std::string* failure) {
  auto fail = [&](std::string why) {
    if (failure)
      *failure = std::move(why);
    return false;
  };
  if (cert.certified() && cert.witnesses.empty())
    return fail("certified certificate carries no witnesses");
  for (const auto& w : cert.witnesses) {
    if (w.point.rank() != a.params().rank || w.preimage.params() != a.params())
      return fail("witness for " + w.point.to_string() + " has the wrong shape");
    auto image = one_minus_restriction(a, w.preimage);
    if (image != TorsionElement::delta(a.params(), w.point))
      return fail("witness for " + w.point.to_string() + " maps to " + image.to_string());
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lifting across a factorization of the modulus

static TorsionElement embed_coefficients(const TorsionElement& s, GroupParams target) {
  TorsionElement out(target);
  for (const auto& [x, c] : s.support())
    out.add_term(x, c);
  return out;
}

TorsionElement crt_lift_preimage(const WreathAutomorphism& a, std::int64_t n, std::int64_t m, const LatticeVector& z,
                                 const SurjectivityCertificate& cert_n, const SurjectivityCertificate& cert_m) {
  const auto& params = a.params();
  if (n < 2 || m < 1 || checked_mul(n, m) != params.modulus)
    throw std::invalid_argument("crt_lift_preimage: " + std::to_string(n) + " * " + std::to_string(m) +
                                " is not a split of " + std::to_string(params.modulus));
  const auto target = TorsionElement::delta(params, z);

  auto a_n = induce_quotient(a, n);
  auto eta1 = generator_preimage(a_n, cert_n, z);
  if (!eta1)
    throw VerificationError("crt_lift_preimage: no preimage of D" + z.to_string() + " over Z_" + std::to_string(n));
  auto lifted = embed_coefficients(*eta1, params);
  if (m == 1) {
    if (one_minus_restriction(a, lifted) != target)
      throw VerificationError("crt_lift_preimage: trivial split does not verify");
    return lifted;
  }

  // chi(iota_n eta1) - D[z] vanishes mod n; divide it out to get theta.
  auto excess = one_minus_restriction(a, lifted) - target;
  TorsionElement theta_m(GroupParams(m, params.rank));
  for (const auto& [x, c] : excess.support()) {
    if (c % n != 0)
      throw VerificationError("crt_lift_preimage: chi(iota_n eta1) - D[z] is not divisible by n at " +
                              x.to_string());
    theta_m.add_term(x, c / n);
  }
  auto a_m = induce_quotient(a, m);
  auto eta2 = restriction_preimage(a_m, cert_m, theta_m);
  if (!eta2)
    throw VerificationError("crt_lift_preimage: no preimage of theta over Z_" + std::to_string(m));

  auto sigma = lifted - embed_coefficients(*eta2, params).scaled(n);
  if (one_minus_restriction(a, sigma) != target)
    throw VerificationError("crt_lift_preimage: lifted preimage of D" + z.to_string() + " does not verify");
  return sigma;
}

// ---------------------------------------------------------------------------
// Classification and constructions

IntegerMatrix order_three_block() { return IntegerMatrix{{0, 1}, {-1, -1}}; }

std::int64_t block_multiplier(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> system;
  for (const auto& pp : factorize(n))
    system.emplace_back(pp.prime == 7 ? 3 : 2, pp.value);
  return crt(system);
}

WreathAutomorphism construct_finite_R(std::int64_t n, int k) {
  const GroupParams params(n, k);
  if (n % 2 == 0 || (n % 3 == 0 && k % 2 == 1))
    throw std::invalid_argument("construct_finite_R: Z_" + std::to_string(n) + " wr Z^" + std::to_string(k) +
                                " has the R-infinity property");
  const auto origin = LatticeVector::zero(k);
  std::vector<TorsionElement> zero_cocycle(k, TorsionElement(params));
  if (gcd(n, 6) == 1)
    return {params, -IntegerMatrix::identity(k), TorsionElement::delta(params, origin, 2), std::move(zero_cocycle)};
  return {params, IntegerMatrix::block_diagonal(order_three_block(), k / 2),
          TorsionElement::delta(params, origin, block_multiplier(n)), std::move(zero_cocycle)};
}

ReidemeisterResult reidemeister_full(const WreathAutomorphism& a, std::int64_t radius) {
  ReidemeisterResult out;
  out.abelian = reidemeister_abelian(a.matrix());
  if (out.abelian.is_infinite()) {
    out.value = ExtendedNat::infinite();
    out.diagnostics = "R(M) is infinite, hence so is R(phi)";
    return out;
  }
  out.certificate = restriction_surjectivity(a, radius, box_points(a.params().rank, 1));
  if (out.certificate->certified()) {
    out.value = out.abelian;
    out.diagnostics = "1 - phi' is onto, so R(phi) = R(M)";
  } else {
    out.diagnostics = "surjectivity of 1 - phi' not certified: " + out.certificate->diagnostics;
  }
  return out;
}

ClassificationResult classify_r_infinity(std::int64_t n, int k, std::int64_t radius) {
  const GroupParams params(n, k);
  ClassificationResult r;
  if (n % 2 == 0) {
    r.verdict = Verdict::AlwaysInfinite;
    r.reason = "n is even: every automorphism induces one of Z_2 wr Z^" + std::to_string(k);
    return r;
  }
  if (n % 3 == 0 && k % 2 == 1) {
    r.verdict = Verdict::AlwaysInfinite;
    r.reason = "3 divides n and k is odd: every automorphism induces one of Z_3 wr Z^" + std::to_string(k);
    return r;
  }
  r.verdict = Verdict::AdmitsFinite;
  auto a = construct_finite_R(params.modulus, params.rank);
  auto full = reidemeister_full(a, radius);
  r.reason = gcd(n, 6) == 1 ? "u = 2 D[0], M = -I" : "u = m D[0], M = order-3 blocks";
  r.reidemeister = full.value;
  r.automorphism = std::move(a);
  return r;
}

} // namespace wreath
