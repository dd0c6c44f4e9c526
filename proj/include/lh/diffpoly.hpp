#pragma once

// Exact differential polynomials over Q.
//
// One ring serves every module: its generators are the independent variable
// s, the jets u^(i) of the potential, the jets l_j^(i) of hierarchy unknowns,
// constant parameters tau_p, and formal antiderivative symbols int(M) with
// D(int(M)) = M. The "u-jet ring" of the Lenard recursion is the subring
// without l-jets and parameters.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lh/rational.hpp"

namespace lh {

class Monomial;

/// A generator of the ring other than s.
class Var {
 public:
  enum class Kind : std::uint8_t { Jet, Integral, Param };

  /// u^(order).
  static Var u(int order = 0) { return jet(0, order); }
  /// l_j^(order), j >= 1.
  static Var ell(int j, int order = 0) { return jet(j, order); }
  /// Jet of function `fn` (0 is u, j >= 1 is l_j).
  static Var jet(int fn, int order);
  static Var tau(int p);
  /// Formal antiderivative of a monomial with unit coefficient.
  static Var integral(const Monomial& integrand);

  Kind kind() const { return kind_; }
  bool is_jet() const { return kind_ == Kind::Jet; }
  int fn() const { return index_; }
  int order() const { return order_; }
  int param_index() const { return index_; }
  const Monomial& integrand() const { return *integrand_; }

  /// The jet one derivative higher. Only valid for jets.
  Var next() const { return jet(index_, order_ + 1); }

  /// Priority order used by the monomial ordering: jets first by derivative
  /// order descending then function index, then integrals, then parameters.
  /// Negative when `a` comes first.
  friend int compare(const Var& a, const Var& b);
  friend bool operator==(const Var& a, const Var& b) { return compare(a, b) == 0; }
  friend bool operator<(const Var& a, const Var& b) { return compare(a, b) < 0; }

 private:
  Kind kind_ = Kind::Jet;
  int index_ = 0;
  int order_ = 0;
  std::shared_ptr<const Monomial> integrand_;
};

/// s^a times a product of generators with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<Var, int>;

  Monomial() = default;
  static Monomial of(const Var& v, int exponent = 1);
  static Monomial s(int power);

  int s_power() const { return s_power_; }
  const std::vector<Factor>& factors() const { return factors_; }
  int exponent(const Var& v) const;
  /// Total exponent of jets and integral symbols.
  int grade() const;
  /// Highest jet derivative order, -1 when the monomial has no jets.
  int max_jet_order() const;
  bool has_integrals() const;
  /// No s, jets or integrals; parameters allowed.
  bool is_constant() const;
  bool is_unit() const { return s_power_ == 0 && factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Lowers the exponent of `v` by `count` (must be present that often).
  Monomial reduced(const Var& v, int count = 1) const;
  Monomial without(const Var& v) const;
  Monomial with_s_power(int power) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  /// Graded order: lower grade first, then lexicographic over the variable
  /// priority (larger exponent first), then s power ascending.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

 private:
  int s_power_ = 0;
  std::vector<Factor> factors_;  // sorted by variable priority, exponents > 0
};

/// Finite Q-linear combination of monomials in canonical form: sorted, no
/// zero coefficients. Every operation returns canonical values.
class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  DiffPoly() = default;
  DiffPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(long c);             // NOLINT(google-explicit-constructor)
  DiffPoly(int c) : DiffPoly(static_cast<long>(c)) {}  // NOLINT

  static DiffPoly term(const Monomial& m, const Rational& c = Rational(1));
  static DiffPoly var(const Var& v) { return term(Monomial::of(v)); }
  static DiffPoly s() { return term(Monomial::s(1)); }
  static DiffPoly u(int order = 0) { return var(Var::u(order)); }
  static DiffPoly ell(int j, int order = 0) { return var(Var::ell(j, order)); }
  static DiffPoly tau(int p) { return var(Var::tau(p)); }
  /// Sums duplicate monomials and drops zeros.
  static DiffPoly from_terms(const std::vector<std::pair<Monomial, Rational>>& terms);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Value when the polynomial is a rational constant (no parameters either).
  std::optional<Rational> constant_value() const;
  /// Coefficient of the first term in the monomial order; zero for 0.
  Rational leading_coefficient() const;
  Rational coefficient(const Monomial& m) const;

  int max_jet_order() const;
  /// Highest derivative order of function `fn` present, -1 when absent.
  int max_order_of(int fn) const;
  int degree_in(const Var& v) const;
  bool contains(const Var& v) const { return degree_in(v) > 0; }
  bool has_integrals() const;
  /// Distinct generators occurring, in priority order.
  std::vector<Var> variables() const;

  /// Coefficients of the powers of `v`: p = sum_k out[k] * v^k.
  std::map<int, DiffPoly> collect(const Var& v) const;
  DiffPoly substitute(const Var& v, const DiffPoly& value) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly scaled(const Rational& c) const;
  DiffPoly pow(unsigned e) const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
  /// Total order (termwise) so polynomials can be used as keys.
  friend int compare(const DiffPoly& a, const DiffPoly& b);

 private:
  TermMap terms_;
};

/// Returns p itself: values are kept canonical by every constructor.
DiffPoly normal_form(const DiffPoly& p);

/// d/ds with s' = 1, (f^(i))' = f^(i+1), tau' = 0, int(M)' = M.
DiffPoly total_derivative(const DiffPoly& p);
DiffPoly nth_derivative(const DiffPoly& p, int n);

/// Antiderivative with zero additive constant; throws NotExactDerivative.
DiffPoly formal_integral(const DiffPoly& p);

/// Partial integration: D(primitive) + leftover == p, where leftover holds the
/// terms the integration-by-parts rules could not absorb.
struct PartialIntegral {
  DiffPoly primitive;
  DiffPoly leftover;
};
PartialIntegral integrate_by_parts(const DiffPoly& p);

/// Like formal_integral but never fails: every leftover term c*M becomes
/// c*int(M). Leaves the differential-polynomial ring only when it must.
DiffPoly formal_integral_extended(const DiffPoly& p);

/// Evaluates a polynomial in the u-jet ring; jet_values[i] is u^(i).
/// Throws MissingJetValue for orders outside the list and for generators
/// outside the u-jet ring.
double eval_numeric(const DiffPoly& p, double s_value, std::span<const double> jet_values);

/// General evaluation; the callback returns nullopt for unknown generators,
/// which raises MissingJetValue.
using Valuation = std::function<std::optional<double>(const Var&)>;
double evaluate(const DiffPoly& p, double s_value, const Valuation& value_of);

}  // namespace lh
