#include "lh/rational_expr.hpp"

#include "lh/errors.hpp"

namespace lh {

RationalExpr::RationalExpr(const DiffPoly& numerator) : num_(numerator), den_(1) {}

RationalExpr::RationalExpr(const DiffPoly& numerator, const DiffPoly& denominator)
    : num_(numerator), den_(denominator) {
  if (den_.is_zero()) throw ZeroDenominator("rational expression with zero denominator");
  canonicalize();
}

DiffPoly RationalExpr::as_polynomial() const {
  auto c = den_.constant_value();
  if (!c) throw Error("rational expression is not a polynomial");
  return num_.scaled(1 / *c);
}

void RationalExpr::canonicalize() {
  if (num_.is_zero()) {
    den_ = DiffPoly(1);
    return;
  }

  // Cancel the monomial gcd of every term in numerator and denominator.
  Monomial g = num_.terms().begin()->first;
  for (const auto& [m, c] : num_.terms()) g = Monomial::gcd(g, m);
  for (const auto& [m, c] : den_.terms()) g = Monomial::gcd(g, m);
  if (!g.is_unit()) {
    auto divide = [&](const DiffPoly& p) {
      std::vector<std::pair<Monomial, Rational>> terms;
      for (const auto& [m, c] : p.terms()) terms.emplace_back(g.quotient_of(m), c);
      return DiffPoly::from_terms(terms);
    };
    num_ = divide(num_);
    den_ = divide(den_);
  }

  // Scale so the denominator has coprime integer coefficients and a positive
  // leading coefficient.
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& [m, c] : den_.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (den_.leading_coefficient() < 0) scale = -scale;
  if (scale != 1) {
    num_ = num_.scaled(scale);
    den_ = den_.scaled(scale);
  }
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
  if (b.num_.is_zero()) throw ZeroDenominator("division by the zero expression");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

bool equivalent(const RationalExpr& a, const RationalExpr& b) {
  return (a.numerator() * b.denominator() - b.numerator() * a.denominator()).is_zero();
}

RationalExpr total_derivative(const RationalExpr& e) {
  const DiffPoly& n = e.numerator();
  const DiffPoly& d = e.denominator();
  if (d.constant_value()) return {total_derivative(n), d};
  return {total_derivative(n) * d - n * total_derivative(d), d * d};
}

namespace {

// Returns (A, k) with p[v := N/D] = A / D^k.
std::pair<DiffPoly, int> substitute_parts(const DiffPoly& p, const Var& v, const RationalExpr& value) {
  auto parts = p.collect(v);
  if (parts.empty()) return {DiffPoly(), 0};
  const int top = parts.rbegin()->first;
  if (top == 0) return {p, 0};
  const DiffPoly& num = value.numerator();
  const DiffPoly& den = value.denominator();

  std::vector<DiffPoly> num_pow{DiffPoly(1)}, den_pow{DiffPoly(1)};
  for (int i = 1; i <= top; ++i) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  DiffPoly result;
  for (const auto& [e, coeff] : parts) result += coeff * num_pow[e] * den_pow[top - e];
  return {result, top};
}

}  // namespace

RationalExpr substitute(const DiffPoly& p, const Var& v, const RationalExpr& value) {
  auto [a, k] = substitute_parts(p, v, value);
  return {a, value.denominator().pow(static_cast<unsigned>(k))};
}

RationalExpr substitute(const RationalExpr& e, const Var& v, const RationalExpr& value) {
  auto [a, ka] = substitute_parts(e.numerator(), v, value);
  auto [b, kb] = substitute_parts(e.denominator(), v, value);
  if (b.is_zero()) throw ZeroDenominator("substitution makes the denominator vanish");
  const DiffPoly& d = value.denominator();
  if (ka >= kb) return {a, b * d.pow(static_cast<unsigned>(ka - kb))};
  return {a * d.pow(static_cast<unsigned>(kb - ka)), b};
}

}  // namespace lh
