#pragma once

// The k-th Painleve III hierarchy system in the unknowns l_1 .. l_k, with
// l_0 = s/2 and l_{k+1} = 0, and the constants of motion tau_p, sigma_p of
// the Lenard recursion.

#include <optional>
#include <span>
#include <vector>

#include "lh/diffpoly.hpp"
#include "lh/lenard.hpp"
#include "lh/rational_expr.hpp"

namespace lh {

/// tau_0 .. tau_k, each either the parameter symbol tau_p or an exact number.
class TauParameters {
 public:
  static TauParameters symbolic(int k);
  static TauParameters values(std::vector<Rational> taus);

  const DiffPoly& operator[](int p) const;
  int size() const { return static_cast<int>(taus_.size()); }
  bool is_symbolic() const { return symbolic_; }

 private:
  std::vector<DiffPoly> taus_;
  bool symbolic_ = false;
};

struct HierarchySystem {
  int k = 0;
  TauParameters tau;
  /// u = -((l_k^2)'' - 3 (l_k')^2 + tau_0) / (4 l_k^2).
  RationalExpr u_expr;
  /// equations[p-1] is equation p with u eliminated, to be read as "= 0".
  std::vector<RationalExpr> equations;
  /// equations[p-1] * multipliers[p-1] == cleared[p-1], a polynomial.
  std::vector<DiffPoly> multipliers;
  std::vector<DiffPoly> cleared;

  /// Equation p, 1 <= p <= k. Throws IndexOutOfRange.
  const RationalExpr& equation(int p) const;
};

/// l_0 .. l_{k+1} of the hierarchy: s/2, the unknown jets l_1 .. l_k, and 0.
std::vector<DiffPoly> hierarchy_ells(int k);

/// For p = 1..k:
///   sum_{q=0}^{p} ( l_{k-p+q+1} l_{k-q} - (l_{k-p+q} l_{k-q})''
///                   + 3 l_{k-p+q}' l_{k-q}' - 4 u l_{k-p+q} l_{k-q} ) - tau_p
/// with u replaced by u_expr.
HierarchySystem build_p3_system(int k, const TauParameters& tau);
HierarchySystem build_p3_system(int k);

/// Same element of the fraction field. Throws ZeroDenominator.
bool equation_equivalent(const RationalExpr& a, const RationalExpr& b);

/// When a = mu * b for a Laurent monomial mu (times a nonzero rational),
/// returns mu; nullopt otherwise. Two equations "expr = 0" related this way
/// have the same solutions away from s = 0 and zeros of the unknowns.
std::optional<RationalExpr> monomial_ratio(const RationalExpr& a, const RationalExpr& b);

enum class ConservedKind { Tau, Sigma };

struct ConservedQuantity {
  int p = 0;
  ConservedKind kind = ConservedKind::Tau;
  DiffPoly expr;
};

/// tau_p = -l_{k+1} l_{k-p} + sum_{q=0}^{p} (l_{k-q} l_{k-p+q+1} - Omega_{k-p+q,k-q}),
/// constant whenever l_{k+1}' = 0.
ConservedQuantity conserved_tau(std::span<const DiffPoly> ells, int k, int p);
ConservedQuantity conserved_tau(const LenardSequence& seq, int k, int p);

/// sigma_p = -l_0 l_p + sum_{q=0}^{p-1} (Omega_{p-1-q,q} - l_{p-1-q} l_{q+1}),
/// constant whenever l_0' = 0.
ConservedQuantity conserved_sigma(std::span<const DiffPoly> ells, int p);
ConservedQuantity conserved_sigma(const LenardSequence& seq, int p);

/// Tau: D(tau_p) + 2 l_{k-p} D(l_{k+1}).  Sigma: D(sigma_p) + 2 l_p D(l_0).
/// Both vanish identically for any seed and any integration constants.
DiffPoly conservation_residual(std::span<const DiffPoly> ells, int k, int p, ConservedKind kind);
DiffPoly conservation_residual(const LenardSequence& seq, int k, int p, ConservedKind kind);

}  // namespace lh
