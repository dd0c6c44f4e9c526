#include "lh/hierarchy.hpp"

#include "lh/errors.hpp"

namespace lh {

TauParameters TauParameters::symbolic(int k) {
  TauParameters t;
  t.symbolic_ = true;
  for (int p = 0; p <= k; ++p) t.taus_.push_back(DiffPoly::tau(p));
  return t;
}

TauParameters TauParameters::values(std::vector<Rational> taus) {
  TauParameters t;
  for (auto& v : taus) t.taus_.emplace_back(v);
  return t;
}

const DiffPoly& TauParameters::operator[](int p) const {
  if (p < 0 || p >= size()) throw IndexOutOfRange("tau_" + std::to_string(p) + " not supplied");
  return taus_[static_cast<std::size_t>(p)];
}

const RationalExpr& HierarchySystem::equation(int p) const {
  if (p < 1 || p > k) throw IndexOutOfRange("hierarchy equation index must lie in 1.." + std::to_string(k));
  return equations[static_cast<std::size_t>(p - 1)];
}

std::vector<DiffPoly> hierarchy_ells(int k) {
  std::vector<DiffPoly> ells{DiffPoly::s().scaled(make_rational(1, 2))};
  for (int j = 1; j <= k; ++j) ells.push_back(DiffPoly::ell(j));
  ells.emplace_back();
  return ells;
}

HierarchySystem build_p3_system(int k, const TauParameters& tau) {
  if (k < 1) throw Error("build_p3_system: k must be >= 1");
  if (tau.size() != k + 1) throw Error("build_p3_system: need tau_0 .. tau_" + std::to_string(k));

  const std::vector<DiffPoly> l = hierarchy_ells(k);
  const DiffPoly u = DiffPoly::u();
  auto at = [&](int j) -> const DiffPoly& { return l[static_cast<std::size_t>(j)]; };
  auto d = [](const DiffPoly& p) { return total_derivative(p); };

  HierarchySystem sys;
  sys.k = k;
  sys.tau = tau;
  const DiffPoly lk2 = at(k) * at(k);
  sys.u_expr = RationalExpr(-(nth_derivative(lk2, 2) - (d(at(k)) * d(at(k))).scaled(3) + tau[0]),
                            lk2.scaled(4));

  for (int p = 1; p <= k; ++p) {
    DiffPoly raw = -tau[p];
    for (int q = 0; q <= p; ++q) {
      const DiffPoly& a = at(k - p + q);
      const DiffPoly& b = at(k - q);
      raw += at(k - p + q + 1) * b - nth_derivative(a * b, 2) + (d(a) * d(b)).scaled(3) -
             (u * a * b).scaled(4);
    }
    RationalExpr eq = substitute(raw, Var::u(), sys.u_expr);
    sys.multipliers.push_back(eq.denominator());
    sys.cleared.push_back(eq.numerator());
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

HierarchySystem build_p3_system(int k) { return build_p3_system(k, TauParameters::symbolic(k)); }

bool equation_equivalent(const RationalExpr& a, const RationalExpr& b) {
  if (a.denominator().is_zero() || b.denominator().is_zero())
    throw ZeroDenominator("equation_equivalent: zero denominator");
  return equivalent(a, b);
}

std::optional<RationalExpr> monomial_ratio(const RationalExpr& a, const RationalExpr& b) {
  const DiffPoly lhs = a.numerator() * b.denominator();
  const DiffPoly rhs = b.numerator() * a.denominator();
  if (lhs.is_zero() || rhs.is_zero()) {
    if (lhs.is_zero() && rhs.is_zero()) return RationalExpr(DiffPoly(1));
    return std::nullopt;
  }
  const auto& [ma, ca] = *lhs.terms().begin();
  const auto& [mb, cb] = *rhs.terms().begin();
  const Monomial g = Monomial::gcd(ma, mb);
  const Monomial up = g.quotient_of(ma);
  const Monomial down = g.quotient_of(mb);
  const Rational c = ca / cb;
  if (!(lhs * DiffPoly::term(down, cb) - rhs * DiffPoly::term(up, ca)).is_zero()) return std::nullopt;
  return RationalExpr(DiffPoly::term(up, c), DiffPoly::term(down));
}

// ---------------------------------------------------------------- Theorem 2

namespace {

const DiffPoly& entry(std::span<const DiffPoly> ells, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= ells.size())
    throw IndexOutOfRange("index " + std::to_string(j) + " outside l_0 .. l_" +
                          std::to_string(static_cast<long>(ells.size()) - 1));
  return ells[static_cast<std::size_t>(j)];
}

}  // namespace

ConservedQuantity conserved_tau(std::span<const DiffPoly> ells, int k, int p) {
  if (p < 0 || p > k) throw IndexOutOfRange("tau_p needs 0 <= p <= k");
  DiffPoly expr = -(entry(ells, k + 1) * entry(ells, k - p));
  for (int q = 0; q <= p; ++q)
    expr += entry(ells, k - q) * entry(ells, k - p + q + 1) - omega(ells, k - p + q, k - q);
  return {p, ConservedKind::Tau, std::move(expr)};
}

ConservedQuantity conserved_tau(const LenardSequence& seq, int k, int p) {
  return conserved_tau(seq.ells(), k, p);
}

ConservedQuantity conserved_sigma(std::span<const DiffPoly> ells, int p) {
  if (p < 0) throw IndexOutOfRange("sigma_p needs p >= 0");
  DiffPoly expr = -(entry(ells, 0) * entry(ells, p));
  for (int q = 0; q <= p - 1; ++q)
    expr += omega(ells, p - 1 - q, q) - entry(ells, p - 1 - q) * entry(ells, q + 1);
  return {p, ConservedKind::Sigma, std::move(expr)};
}

ConservedQuantity conserved_sigma(const LenardSequence& seq, int p) { return conserved_sigma(seq.ells(), p); }

DiffPoly conservation_residual(std::span<const DiffPoly> ells, int k, int p, ConservedKind kind) {
  if (kind == ConservedKind::Tau) {
    const DiffPoly tau = conserved_tau(ells, k, p).expr;
    return total_derivative(tau) + (entry(ells, k - p) * total_derivative(entry(ells, k + 1))).scaled(2);
  }
  const DiffPoly sigma = conserved_sigma(ells, p).expr;
  return total_derivative(sigma) + (entry(ells, p) * total_derivative(entry(ells, 0))).scaled(2);
}

DiffPoly conservation_residual(const LenardSequence& seq, int k, int p, ConservedKind kind) {
  return conservation_residual(seq.ells(), k, p, kind);
}

}  // namespace lh
