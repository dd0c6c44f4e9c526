#pragma once

// Lenard sequences l_0, l_1, ... generated by
//     l_{j+1}' = l_j''' + 4 u l_j' + 2 u' l_j
// from a seed l_0, together with the bilinear form Omega_{n,m} and the
// identities that make the recursion integrable.

#include <span>
#include <string>
#include <vector>

#include "lh/diffpoly.hpp"

namespace lh {

enum class SeedKind { Standard, PainleveIII, Custom };

class SeedCondition {
 public:
  /// l_0 = 1/2.
  static SeedCondition standard();
  /// l_0 = s/2.
  static SeedCondition painleve3();
  static SeedCondition custom(DiffPoly ell0);

  SeedKind kind() const { return kind_; }
  const DiffPoly& ell0() const { return ell0_; }
  std::string name() const;

 private:
  SeedCondition(SeedKind kind, DiffPoly ell0) : kind_(kind), ell0_(std::move(ell0)) {}
  SeedKind kind_;
  DiffPoly ell0_;
};

/// What generate() does when a step has no differential-polynomial
/// antiderivative.
enum class Antiderivatives {
  Reject,     ///< throw NotExactDerivative carrying the step index
  Introduce,  ///< adjoin formal antiderivative symbols int(M)
};

/// l_0 .. l_N with the constants added at each integration step. Only
/// generate() builds one, and it re-checks the recursion before returning.
class LenardSequence {
 public:
  const SeedCondition& seed() const { return seed_; }
  const std::vector<DiffPoly>& ells() const { return ells_; }
  const std::vector<Rational>& constants() const { return constants_; }
  /// Throws IndexOutOfRange.
  const DiffPoly& at(int j) const;
  int last_index() const { return static_cast<int>(ells_.size()) - 1; }
  bool has_integrals() const;

 private:
  friend LenardSequence generate(const SeedCondition&, int, std::span<const Rational>, Antiderivatives);
  LenardSequence(SeedCondition seed, std::vector<DiffPoly> ells, std::vector<Rational> constants)
      : seed_(std::move(seed)), ells_(std::move(ells)), constants_(std::move(constants)) {}

  SeedCondition seed_;
  std::vector<DiffPoly> ells_;
  std::vector<Rational> constants_;
};

/// l''' + 4 u l' + 2 u' l.
DiffPoly lenard_rhs(const DiffPoly& ell);

/// Builds l_0 .. l_count. `constants` must hold one entry per step.
LenardSequence generate(const SeedCondition& seed, int count, std::span<const Rational> constants,
                        Antiderivatives policy = Antiderivatives::Reject);
/// All integration constants zero.
LenardSequence generate(const SeedCondition& seed, int count,
                        Antiderivatives policy = Antiderivatives::Reject);

/// D(l_{j+1}) - lenard_rhs(l_j).
DiffPoly recursion_residual(std::span<const DiffPoly> ells, int j);

/// Lenard polynomial l_p from l_0 = 1/2 using only products and derivatives:
///   l_p = sum_{q=0}^{p-2} (Omega_{p-1-q,q} - l_{p-1-q} l_{q+1}) + Omega_{0,p-1}.
DiffPoly closed_form_standard(int p);
/// l_0 .. l_p by the same rule.
std::vector<DiffPoly> closed_form_standard_sequence(int p);

/// Omega_{n,m} = (l_n l_m)'' - 3 l_n' l_m' + 4 u l_n l_m.
DiffPoly omega(std::span<const DiffPoly> ells, int n, int m);
DiffPoly omega(const LenardSequence& seq, int n, int m);

/// l_m D(l_{n+1}) + l_n D(l_{m+1}) - D(Omega_{n,m}).
DiffPoly master_identity_residual(std::span<const DiffPoly> ells, int n, int m);
DiffPoly master_identity_residual(const LenardSequence& seq, int n, int m);

/// l_m l_n' - l_{m+1} l_{n-1}' - D(Omega_{n-1,m} - l_{n-1} l_{m+1}), n >= 1.
DiffPoly shift_identity_residual(std::span<const DiffPoly> ells, int n, int m);
DiffPoly shift_identity_residual(const LenardSequence& seq, int n, int m);

/// l_m l_n' - l_{m+r} l_{n-r}'
///   - D(sum_{q=0}^{r-1} Omega_{n-q-1,m+q} - l_{n-q-1} l_{m+q+1}).
/// The bracket is summed explicitly, not telescoped from the shift identity.
DiffPoly transport_residual(std::span<const DiffPoly> ells, int m, int n, int r);
DiffPoly transport_residual(const LenardSequence& seq, int m, int n, int r);

}  // namespace lh
