#pragma once

// Lax-pair coefficients in the spectral variable z:
//   A = a sigma_3 + b sigma_+ + c sigma_-,   B = (z - u) sigma_- + sigma_+,
//   a = -b'/2,  c = (z - u) b - b''/2,  c' = 1 + 2 (z - u) a,
// with b = 4/(4z)^(k+1) sum_{j=0}^{k} l_{k-j} (4z)^j.

#include <array>
#include <map>
#include <span>

#include "lh/diffpoly.hpp"
#include "lh/lenard.hpp"

namespace lh {

/// Finite sum of z^n times differential-polynomial coefficients, n in Z.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const DiffPoly& constant);  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(int power, const DiffPoly& coeff);
  /// The variable z.
  static LaurentPoly z() { return monomial(1, DiffPoly(1)); }

  const std::map<int, DiffPoly>& coefficients() const { return coeffs_; }
  DiffPoly coefficient(int power) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Only meaningful when nonzero.
  int min_degree() const { return coeffs_.begin()->first; }
  int max_degree() const { return coeffs_.rbegin()->first; }
  /// Powers carrying a nonzero coefficient.
  std::vector<int> support() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rational& c) const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::map<int, DiffPoly> coeffs_;  // no zero coefficients
};

/// d/ds applied to every coefficient.
LaurentPoly total_derivative(const LaurentPoly& p);
LaurentPoly nth_derivative(const LaurentPoly& p, int n);

using LaurentMatrix = std::array<std::array<LaurentPoly, 2>, 2>;

LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y);
LaurentPoly trace(const LaurentMatrix& m);

struct LaxCoefficients {
  LaurentPoly a;
  LaurentPoly c;
};

struct LaxMatrices {
  int k = 0;
  DiffPoly u;
  LaurentPoly a, b, c;
  LaurentMatrix A;
  LaurentMatrix B;
  /// D(l_{k+1}) of the sequence the pair was built from (zero when the
  /// sequence ends at l_k). The coefficient identities close up to this
  /// boundary term, which vanishes on the hierarchy where l_{k+1} = 0.
  DiffPoly boundary_flux;
};

/// Coefficient of z^(j-k-1) is 4^(j-k) l_{k-j}, j = 0..k.
LaurentPoly build_b(std::span<const DiffPoly> ells, int k);
LaurentPoly build_b(const LenardSequence& seq, int k);

/// a = -D(b)/2,  c = (z - u) b - D^2(b)/2.
LaxCoefficients derive_a_c(const LaurentPoly& b, const DiffPoly& u);

/// z D(b) - (D^3 b + 4 u D(b) + 2 u' b)/4 - 1/2, plus the boundary term
/// 4^-(k+1) D(l_{k+1}) z^-(k+1) when l_{k+1} is supplied. Zero iff every
/// step l_0 -> l_{k+1} satisfies the Lenard recursion. The coefficient of
/// z^-(i+1) is 4^-(i+1) times the residual of step i -> i+1.
/// Throws SeedMismatch unless D(l_0) = 1/2.
LaurentPoly compatibility_residual(std::span<const DiffPoly> ells, int k);
LaurentPoly compatibility_residual(const LenardSequence& seq, int k);

LaxMatrices build_lax_matrices(std::span<const DiffPoly> ells, int k, const DiffPoly& u);
LaxMatrices build_lax_matrices(const LenardSequence& seq, int k, const DiffPoly& u);

/// D(c) - 1 - 2 (z - u) a + 2 * 4^-(k+1) boundary_flux z^-(k+1).
LaurentPoly aceqn_residual(const LaxMatrices& lax);

}  // namespace lh
