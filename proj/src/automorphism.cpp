#include "wreath/automorphism.hpp"

#include "wreath/arith.hpp"
#include "wreath/linsolve.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace wreath {

struct WreathAutomorphism::Cache {
  std::once_flag once;
  ValidationReport report;
  std::optional<TorsionElement> u_inverse;
};

WreathAutomorphism::WreathAutomorphism(GroupParams params, IntegerMatrix matrix, TorsionElement u,
                                       std::vector<TorsionElement> cocycle)
    : params_(params), matrix_(std::move(matrix)), u_(std::move(u)), cocycle_(std::move(cocycle)),
      cache_(std::make_shared<Cache>()) {
  const int k = params_.rank;
  if (matrix_.rows() != k || matrix_.cols() != k)
    throw ParameterMismatch("automorphism matrix must be " + std::to_string(k) + "x" + std::to_string(k));
  if (u_.params() != params_)
    throw ParameterMismatch("u belongs to a different group");
  if (static_cast<int>(cocycle_.size()) != k)
    throw ParameterMismatch("cocycle needs " + std::to_string(k) + " values, got " +
                            std::to_string(cocycle_.size()));
  for (const auto& t : cocycle_)
    if (t.params() != params_)
      throw ParameterMismatch("cocycle value belongs to a different group");
}

WreathAutomorphism WreathAutomorphism::identity(GroupParams params) {
  return {params, IntegerMatrix::identity(params.rank), TorsionElement::delta(params, LatticeVector::zero(params.rank)),
          std::vector<TorsionElement>(params.rank, TorsionElement(params))};
}

const ValidationReport& WreathAutomorphism::report() const {
  std::call_once(cache_->once, [this] {
    cache_->report = validate(*this);
    if (cache_->report.u_is_unit)
      cache_->u_inverse = group_ring_inverse(u_);
  });
  return cache_->report;
}

const TorsionElement& WreathAutomorphism::u_inverse() const {
  report();
  if (!cache_->u_inverse)
    throw InvalidAutomorphism("u = " + u_.to_string() + " is not a unit of the group ring");
  return *cache_->u_inverse;
}

std::string WreathAutomorphism::to_string() const {
  std::string s = "{M=" + matrix_.to_string() + ", u=" + u_.to_string() + ", T=[";
  for (std::size_t i = 0; i < cocycle_.size(); ++i) {
    if (i)
      s += "; ";
    s += cocycle_[i].to_string();
  }
  return s + "]}";
}

// ---------------------------------------------------------------------------
// Group ring

TorsionElement convolve(const TorsionElement& a, const TorsionElement& b) {
  if (a.params() != b.params())
    throw ParameterMismatch("convolve: operands over different groups");
  const auto n = a.modulus();
  TorsionElement out(a.params());
  for (const auto& [x, ca] : a.support())
    for (const auto& [y, cb] : b.support())
      out.add_term(x + y, mul_mod(ca, cb, n));
  return out;
}

TorsionElement relabel(const IntegerMatrix& m, const TorsionElement& s) {
  TorsionElement out(s.params());
  for (const auto& [x, c] : s.support())
    out.add_term(m * x, c);
  return out;
}

bool unit_check(const TorsionElement& u) {
  for (const auto& pp : factorize(u.modulus()))
    if (project_pi(u, pp.prime).support().size() != 1)
      return false;
  return true;
}

std::optional<TorsionElement> group_ring_inverse(const TorsionElement& u) {
  const int k = u.rank();
  const auto origin = LatticeVector::zero(k);
  std::vector<TorsionElement> parts;
  std::vector<std::int64_t> moduli;
  for (const auto& pp : factorize(u.modulus())) {
    auto reduced = project_pi(u, pp.prime);
    if (reduced.support().size() != 1)
      return std::nullopt;
    const auto& lead = reduced.support().begin()->first;
    const GroupParams local(pp.value, k);
    auto uq = pp.value == u.modulus() ? u : project_pi(u, pp.value);
    auto lead_inv = TorsionElement::delta(local, -lead, inverse_mod(uq.coefficient(lead), pp.value));
    // u = lead * (1 + x) with x = 0 mod p, hence x^s = 0 mod p^s
    auto x = convolve(lead_inv, uq) - TorsionElement::delta(local, origin);
    auto minus_x = -x;
    auto term = TorsionElement::delta(local, origin);
    auto series = term;
    for (unsigned j = 1; j < pp.exponent; ++j) {
      term = convolve(term, minus_x);
      series = series + term;
    }
    parts.push_back(convolve(series, lead_inv));
    moduli.push_back(pp.value);
  }

  std::set<LatticeVector> points;
  for (const auto& p : parts)
    for (const auto& [x, c] : p.support())
      points.insert(x);
  TorsionElement v(u.params());
  std::vector<std::pair<std::int64_t, std::int64_t>> residues(parts.size());
  for (const auto& x : points) {
    for (std::size_t t = 0; t < parts.size(); ++t)
      residues[t] = {parts[t].coefficient(x), moduli[t]};
    v.add_term(x, crt(residues));
  }
  if (convolve(u, v) != TorsionElement::delta(u.params(), origin))
    throw std::logic_error("group_ring_inverse: constructed inverse of " + u.to_string() + " does not verify");
  return v;
}

std::optional<TorsionElement> bounded_inverse_search(const TorsionElement& u, std::int64_t radius) {
  if (u.is_zero())
    return std::nullopt;
  const int k = u.rank();
  const auto unknowns = box_points(k, radius);
  std::map<LatticeVector, int> equation_of;
  equation_of.emplace(LatticeVector::zero(k), 0);
  for (const auto& y : unknowns)
    for (const auto& [s, c] : u.support())
      equation_of.try_emplace(y + s, 0);
  int next = 0;
  for (auto& [x, idx] : equation_of)
    idx = next++;

  ModularSystem system;
  system.modulus = u.modulus();
  system.unknowns = static_cast<int>(unknowns.size());
  system.rows.assign(equation_of.size(), std::vector<std::int64_t>(unknowns.size(), 0));
  system.rhs.assign(equation_of.size(), 0);
  system.rhs[equation_of.at(LatticeVector::zero(k))] = 1;
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [s, c] : u.support())
      system.rows[equation_of.at(unknowns[j] + s)][j] = c;

  auto solution = solve_mod(system);
  if (!solution)
    return std::nullopt;
  TorsionElement v(u.params());
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    v.add_term(unknowns[j], (*solution)[j]);
  return v;
}

// ---------------------------------------------------------------------------
// Validation and application

ValidationReport validate(const WreathAutomorphism& a) {
  ValidationReport r;
  const auto& m = a.matrix();
  try {
    r.matrix_unimodular = m.is_unimodular();
    if (!r.matrix_unimodular)
      r.failures.push_back("matrix " + m.to_string() + " has determinant " + std::to_string(m.determinant()) +
                           ", expected +-1");
  } catch (const OverflowError& e) {
    r.failures.push_back(std::string("matrix determinant: ") + e.what());
  }

  r.u_is_unit = unit_check(a.u());
  if (!r.u_is_unit)
    r.failures.push_back("u = " + a.u().to_string() + " is not a unit of Z_" + std::to_string(a.params().modulus) +
                         "[Z^" + std::to_string(a.params().rank) + "]");

  r.cocycle_consistent = true;
  const int k = a.params().rank;
  const auto& t = a.cocycle();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      auto lhs = t[i] + alpha_shift(m.column(i), t[j]);
      auto rhs = t[j] + alpha_shift(m.column(j), t[i]);
      if (lhs != rhs) {
        r.cocycle_consistent = false;
        r.failures.push_back("cocycle values T_" + std::to_string(i + 1) + ", T_" + std::to_string(j + 1) +
                             " do not commute: " + lhs.to_string() + " != " + rhs.to_string());
      }
    }
  return r;
}

static void require_valid(const WreathAutomorphism& a, const char* where) {
  if (!a.is_valid()) {
    std::string why;
    for (const auto& f : a.report().failures)
      why += "; " + f;
    throw InvalidAutomorphism(std::string(where) + ": automorphism fails validation" + why);
  }
}

TorsionElement apply_restriction(const WreathAutomorphism& a, const TorsionElement& sigma) {
  if (sigma.params() != a.params())
    throw ParameterMismatch("apply_restriction: element of a different group");
  return convolve(a.u(), relabel(a.matrix(), sigma));
}

TorsionElement cocycle_value(const WreathAutomorphism& a, const LatticeVector& z, std::span<const int> axis_order) {
  const int k = a.params().rank;
  if (z.rank() != k)
    throw ParameterMismatch("cocycle_value: rank mismatch");
  if (static_cast<int>(axis_order.size()) != k)
    throw std::invalid_argument("cocycle_value: axis order must list every axis once");

  const auto& m = a.matrix();
  TorsionElement value(a.params());
  auto partial = LatticeVector::zero(k);
  for (int axis : axis_order) {
    const auto e = LatticeVector::unit(k, axis);
    const auto steps = z[axis];
    // phi~(-e) = -alpha(-M e)(phi~(e))
    const auto step_value = steps >= 0 ? a.cocycle()[axis] : -alpha_shift(-m.column(axis), a.cocycle()[axis]);
    const auto step = steps >= 0 ? e : -e;
    for (std::int64_t s = 0; s < (steps >= 0 ? steps : -steps); ++s) {
      if (!step_value.is_zero())
        value = value + alpha_shift(m * partial, step_value);
      partial = partial + step;
    }
  }
  return value;
}

TorsionElement cocycle_value(const WreathAutomorphism& a, const LatticeVector& z) {
  std::vector<int> order(a.params().rank);
  std::iota(order.begin(), order.end(), 0);
  return cocycle_value(a, z, order);
}

GroupElement apply(const WreathAutomorphism& a, const GroupElement& g) {
  require_valid(a, "apply");
  if (g.params() != a.params())
    throw ParameterMismatch("apply: element of a different group");
  return {apply_restriction(a, g.torsion) + cocycle_value(a, g.shift), a.matrix() * g.shift};
}

WreathAutomorphism compose(const WreathAutomorphism& a, const WreathAutomorphism& b) {
  require_valid(a, "compose");
  require_valid(b, "compose");
  if (a.params() != b.params())
    throw ParameterMismatch("compose: automorphisms of different groups");
  const int k = a.params().rank;
  std::vector<TorsionElement> cocycle;
  for (int i = 0; i < k; ++i)
    cocycle.push_back(apply_restriction(a, b.cocycle()[i]) + cocycle_value(a, b.matrix().column(i)));
  WreathAutomorphism c(a.params(), a.matrix() * b.matrix(), apply_restriction(a, b.u()), std::move(cocycle));
  require_valid(c, "compose (result)");
  return c;
}

WreathAutomorphism inverse_automorphism(const WreathAutomorphism& a) {
  require_valid(a, "inverse_automorphism");
  const int k = a.params().rank;
  auto m_inv = a.matrix().inverse_unimodular();
  // u * relabel(M, u_b) = D[0] forces u_b = relabel(M^-1, u^-1)
  WreathAutomorphism restriction_only(a.params(), m_inv, relabel(m_inv, a.u_inverse()),
                                      std::vector<TorsionElement>(k, TorsionElement(a.params())));
  std::vector<TorsionElement> cocycle;
  for (int i = 0; i < k; ++i)
    cocycle.push_back(-apply_restriction(restriction_only, cocycle_value(a, m_inv.column(i))));
  WreathAutomorphism b(a.params(), m_inv, restriction_only.u(), std::move(cocycle));
  require_valid(b, "inverse_automorphism (result)");
  return b;
}

WreathAutomorphism inner(const GroupElement& gamma) {
  const auto& params = gamma.params();
  const int k = params.rank;
  std::vector<TorsionElement> cocycle;
  for (int i = 0; i < k; ++i)
    cocycle.push_back(gamma.torsion - alpha_shift(LatticeVector::unit(k, i), gamma.torsion));
  return {params, IntegerMatrix::identity(k), TorsionElement::delta(params, gamma.shift), std::move(cocycle)};
}

WreathAutomorphism twist(const WreathAutomorphism& a, const GroupElement& gamma) { return compose(inner(gamma), a); }

WreathAutomorphism induce_quotient(const WreathAutomorphism& a, std::int64_t divisor) {
  require_valid(a, "induce_quotient");
  if (divisor == a.params().modulus)
    return a;
  std::vector<TorsionElement> cocycle;
  for (const auto& t : a.cocycle())
    cocycle.push_back(project_pi(t, divisor));
  auto u = project_pi(a.u(), divisor);
  return {u.params(), a.matrix(), std::move(u), std::move(cocycle)};
}

} // namespace wreath
