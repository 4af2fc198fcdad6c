#include "wreath/group.hpp"

#include "wreath/arith.hpp"

#include <sstream>

namespace wreath {

GroupParams::GroupParams(std::int64_t n, int k) : modulus(n), rank(k) {
  if (n < 2)
    throw std::invalid_argument("modulus must be >= 2, got " + std::to_string(n));
  if (k < 1)
    throw std::invalid_argument("rank must be >= 1, got " + std::to_string(k));
}

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector LatticeVector::unit(int rank, int axis) {
  auto v = zero(rank);
  v.coords_.at(axis) = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  for (auto c : coords_)
    if (c != 0)
      return false;
  return true;
}

static void require_rank(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank())
    throw ParameterMismatch("lattice rank mismatch: " + std::to_string(a.rank()) + " vs " +
                            std::to_string(b.rank()));
}

LatticeVector LatticeVector::operator+(const LatticeVector& other) const {
  require_rank(*this, other);
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = checked_add(coords_[i], other.coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator-(const LatticeVector& other) const {
  require_rank(*this, other);
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = checked_sub(coords_[i], other.coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator-() const {
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = checked_neg(coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::scaled(std::int64_t factor) const {
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = checked_mul(coords_[i], factor);
  return LatticeVector(std::move(out));
}

std::string LatticeVector::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// TorsionElement

TorsionElement::TorsionElement(GroupParams params,
                               const std::vector<std::pair<std::int64_t, LatticeVector>>& terms)
    : params_(params) {
  for (const auto& [c, x] : terms)
    add_term(x, c);
}

TorsionElement TorsionElement::delta(GroupParams params, const LatticeVector& x, std::int64_t c) {
  TorsionElement t(params);
  t.add_term(x, c);
  return t;
}

std::int64_t TorsionElement::coefficient(const LatticeVector& x) const {
  auto it = support_.find(x);
  return it == support_.end() ? 0 : it->second;
}

void TorsionElement::add_term(const LatticeVector& x, std::int64_t c) {
  if (x.rank() != params_.rank)
    throw ParameterMismatch("support point " + x.to_string() + " has rank " +
                            std::to_string(x.rank()) + ", expected " + std::to_string(params_.rank));
  c = mod_floor(c, params_.modulus);
  if (c == 0)
    return;
  auto [it, inserted] = support_.try_emplace(x, c);
  if (inserted)
    return;
  it->second = add_mod(it->second, c, params_.modulus);
  if (it->second == 0)
    support_.erase(it);
}

void TorsionElement::require_same(const TorsionElement& other) const {
  if (params_ != other.params_)
    throw ParameterMismatch("torsion elements over Z_" + std::to_string(params_.modulus) + " wr Z^" +
                            std::to_string(params_.rank) + " and Z_" +
                            std::to_string(other.params_.modulus) + " wr Z^" +
                            std::to_string(other.params_.rank));
}

TorsionElement TorsionElement::operator+(const TorsionElement& other) const {
  require_same(other);
  TorsionElement out = *this;
  for (const auto& [x, c] : other.support_)
    out.add_term(x, c);
  return out;
}

TorsionElement TorsionElement::operator-(const TorsionElement& other) const {
  require_same(other);
  TorsionElement out = *this;
  for (const auto& [x, c] : other.support_)
    out.add_term(x, params_.modulus - c);
  return out;
}

TorsionElement TorsionElement::operator-() const {
  TorsionElement out(params_);
  for (const auto& [x, c] : support_)
    out.support_.emplace_hint(out.support_.end(), x, params_.modulus - c);
  return out;
}

TorsionElement TorsionElement::scaled(std::int64_t c) const {
  TorsionElement out(params_);
  for (const auto& [x, coeff] : support_) {
    auto v = mul_mod(coeff, c, params_.modulus);
    if (v != 0)
      out.support_.emplace_hint(out.support_.end(), x, v);
  }
  return out;
}

std::string TorsionElement::to_string() const {
  if (support_.empty())
    return "0";
  std::string s;
  for (const auto& [x, c] : support_) {
    if (!s.empty())
      s += " + ";
    s += std::to_string(c) + "*D" + x.to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(TorsionElement t, LatticeVector z) : torsion(std::move(t)), shift(std::move(z)) {
  if (shift.rank() != torsion.rank())
    throw ParameterMismatch("shift rank " + std::to_string(shift.rank()) +
                            " does not match torsion rank " + std::to_string(torsion.rank()));
}

GroupElement GroupElement::identity(GroupParams params) {
  return {TorsionElement(params), LatticeVector::zero(params.rank)};
}

GroupElement GroupElement::pure_shift(GroupParams params, LatticeVector z) {
  return {TorsionElement(params), std::move(z)};
}

GroupElement GroupElement::pure_torsion(TorsionElement t) {
  auto k = t.rank();
  return {std::move(t), LatticeVector::zero(k)};
}

std::string GroupElement::to_string() const {
  return "(" + torsion.to_string() + " ; " + shift.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Group law

TorsionElement alpha_shift(const LatticeVector& z, const TorsionElement& s) {
  if (z.rank() != s.rank())
    throw ParameterMismatch("alpha_shift: shift rank " + std::to_string(z.rank()) +
                            " vs torsion rank " + std::to_string(s.rank()));
  if (z.is_zero())
    return s;
  TorsionElement out(s.params());
  for (const auto& [x, c] : s.support())
    out.add_term(x + z, c);
  return out;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (g.params() != h.params())
    throw ParameterMismatch("multiply: elements of different groups");
  return {g.torsion + alpha_shift(g.shift, h.torsion), g.shift + h.shift};
}

GroupElement inverse(const GroupElement& g) {
  auto back = -g.shift;
  return {-alpha_shift(back, g.torsion), back};
}

TorsionElement project_pi(const TorsionElement& s, std::int64_t divisor) {
  if (divisor < 2 || s.modulus() % divisor != 0)
    throw std::invalid_argument("project_pi: " + std::to_string(divisor) + " is not a divisor >= 2 of " +
                                std::to_string(s.modulus()));
  TorsionElement out(GroupParams(divisor, s.rank()));
  for (const auto& [x, c] : s.support())
    out.add_term(x, c % divisor);
  return out;
}

GroupElement project_Pi(const GroupElement& g, std::int64_t divisor) {
  return {project_pi(g.torsion, divisor), g.shift};
}

std::vector<LatticeVector> box_points(int rank, std::int64_t radius) {
  std::vector<LatticeVector> out;
  std::vector<std::int64_t> cur(rank, -radius);
  for (;;) {
    out.emplace_back(cur);
    int i = rank - 1;
    while (i >= 0 && cur[i] == radius)
      cur[i--] = -radius;
    if (i < 0)
      return out;
    ++cur[i];
  }
}

GroupElement twisted_conjugate(const GroupElement& h, const GroupElement& g, const ElementMap& phi) {
  if (h.params() != g.params())
    throw ParameterMismatch("twisted_conjugate: elements of different groups");
  auto image = phi(inverse(h));
  if (image.params() != g.params())
    throw ParameterMismatch("twisted_conjugate: automorphism changes the group");
  return multiply(multiply(h, g), image);
}

} // namespace wreath
