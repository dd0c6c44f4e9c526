#pragma once

#include "lh/diffpoly.hpp"

namespace lh {

/// Quotient of two differential polynomials. Kept with the common monomial
/// factor cancelled and the denominator scaled to primitive integer
/// coefficients with a positive leading coefficient. No polynomial gcd is
/// taken, so equal values may have different representations; compare them
/// with equivalent().
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(const DiffPoly& numerator);  // NOLINT(google-explicit-constructor)
  /// Throws ZeroDenominator when `denominator` is the zero polynomial.
  RationalExpr(const DiffPoly& numerator, const DiffPoly& denominator);

  const DiffPoly& numerator() const { return num_; }
  const DiffPoly& denominator() const { return den_; }
  bool is_polynomial() const { return den_.constant_value().has_value(); }
  bool is_zero() const { return num_.is_zero(); }
  /// The polynomial value; only valid when is_polynomial().
  DiffPoly as_polynomial() const;

  RationalExpr operator-() const { return {-num_, den_}; }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  /// Throws ZeroDenominator when dividing by zero.
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);

 private:
  void canonicalize();

  DiffPoly num_;
  DiffPoly den_;
};

/// a == b as elements of the fraction field: the cross-multiplied difference
/// normalizes to zero.
bool equivalent(const RationalExpr& a, const RationalExpr& b);

/// Quotient rule.
RationalExpr total_derivative(const RationalExpr& e);

/// Replaces generator `v` by `value` in a polynomial, clearing the powers of
/// value's denominator.
RationalExpr substitute(const DiffPoly& p, const Var& v, const RationalExpr& value);
RationalExpr substitute(const RationalExpr& e, const Var& v, const RationalExpr& value);

}  // namespace lh
