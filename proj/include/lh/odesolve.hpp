#pragma once

// Numerical integration of the k = 1 and k = 2 hierarchy systems with
// fixed-step classical RK4, plus monitors for the quantities that must stay
// constant along solutions.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lh/diffpoly.hpp"
#include "lh/hierarchy.hpp"
#include "lh/rational_expr.hpp"

namespace lh {

/// A polynomial flattened for floating-point evaluation. Generators map to
/// slots of a state vector; terms are summed in monomial order.
class CompiledPoly {
 public:
  using SlotOf = std::function<int(const Var&)>;

  CompiledPoly() = default;
  /// Throws Error when slot_of returns a negative slot.
  CompiledPoly(const DiffPoly& p, const SlotOf& slot_of);

  double operator()(double s, std::span<const double> slots) const;

 private:
  struct Term {
    double coef;
    int s_power;
    std::vector<std::pair<int, int>> factors;  // (slot, exponent)
  };
  std::vector<Term> terms_;
};

class CompiledRational {
 public:
  CompiledRational() = default;
  CompiledRational(const RationalExpr& e, const CompiledPoly::SlotOf& slot_of)
      : num_(e.numerator(), slot_of), den_(e.denominator(), slot_of) {}
  /// num/den in IEEE arithmetic (may be infinite or NaN).
  double operator()(double s, std::span<const double> slots) const {
    return num_(s, slots) / den_(s, slots);
  }
  double denominator(double s, std::span<const double> slots) const { return den_(s, slots); }

 private:
  CompiledPoly num_;
  CompiledPoly den_;
};

using VectorField = std::function<void(double s, std::span<const double> state, std::span<double> out)>;
using ScalarFunction = std::function<double(double s, std::span<const double> state)>;

struct Monitor {
  std::string name;
  ScalarFunction eval;
  /// Constant along exact solutions; drift is only meaningful for these.
  bool conserved = false;
};

/// Running trapezoid integral of another monitor, accumulated on every step.
struct Accumulator {
  std::string name;
  std::size_t source = 0;  // index into monitors
  bool conserved = true;
};

/// First-order system f(s, y). Immutable after construction.
class CompiledSystem {
 public:
  CompiledSystem(int dimension, VectorField field, std::vector<Monitor> monitors = {},
                 std::vector<Accumulator> accumulators = {});

  int dimension() const { return dimension_; }
  void rhs(double s, std::span<const double> state, std::span<double> out) const { field_(s, state, out); }
  const std::vector<Monitor>& monitors() const { return monitors_; }
  const std::vector<Accumulator>& accumulators() const { return accumulators_; }
  /// Monitor names followed by accumulator names.
  std::vector<std::string> monitor_names() const;

 private:
  int dimension_;
  VectorField field_;
  std::vector<Monitor> monitors_;
  std::vector<Accumulator> accumulators_;
};

/// Symbolic pieces of a compiled hierarchy, kept for inspection and tests.
/// State layout: (l_1, l_1', l_2, l_2', ...).
struct HierarchyCompilation {
  HierarchySystem system;
  /// Coefficients of l_q'' in the cleared equations: cleared[p] =
  /// sum_q mass[p][q] l_q'' + forcing[p].
  std::vector<std::vector<DiffPoly>> mass;
  std::vector<DiffPoly> forcing;
  DiffPoly determinant;
  /// Cramer numerators: l_q'' = cramer[q] / determinant.
  std::vector<DiffPoly> cramer;
  /// l_q'' as functions of (s, l, l'), sharing the denominator `determinant`.
  std::vector<RationalExpr> accelerations;
  /// u, u', D(l_{k+1}) and tau_1..tau_k on the solution manifold.
  RationalExpr u;
  RationalExpr u_prime;
  RationalExpr next_flux;
  std::vector<RationalExpr> taus;
};

/// Solves the cleared hierarchy equations for the second derivatives by
/// Cramer's rule and reduces the monitors to functions of (s, l, l').
HierarchyCompilation compile_hierarchy_symbolic(int k, const std::vector<Rational>& taus);

/// Replaces every l_q^(r), r >= 2, by its expression in (s, l, l').
RationalExpr reduce_on_shell(const RationalExpr& e, const std::vector<RationalExpr>& accelerations);

/// Slot of l_q (2(q-1)) and l_q' (2(q-1)+1); -1 for anything else.
int hierarchy_slot(const Var& v);

/// Vector field and monitors u, u_prime, ell_next_flux, tau1..tauk and the
/// accumulator ell_next. rhs throws SingularMassMatrix when the mass-matrix
/// determinant vanishes.
CompiledSystem compile_hierarchy(int k, const std::vector<double>& taus);
CompiledSystem compile_k1(double tau0, double tau1);
CompiledSystem compile_k2(double tau0, double tau1, double tau2);

struct SolverConfig {
  double s_start = 1.0;
  double s_end = 2.0;
  double step = 1e-3;
  /// Keep every n-th step (first and last sample always kept).
  int decimate = 1;
};

struct Sample {
  double s = 0.0;
  std::vector<double> state;
  std::vector<double> monitors;  // monitors then accumulators
};

struct Trajectory {
  enum class Status { Completed, AbortedNonfinite };
  std::vector<std::string> monitor_names;
  std::vector<Sample> samples;
  Status status = Status::Completed;
  double abort_s = 0.0;
  std::string abort_reason;
};

/// Classical RK4 with fixed step. Throws StepSizeUnderflow (step <= 0) and
/// DomainError (s_start <= 0, empty interval, more than 1e8 steps, bad
/// initial state). Halts at the first non-finite or singular evaluation.
Trajectory integrate(const CompiledSystem& sys, std::span<const double> init, const SolverConfig& cfg);

struct DriftReport {
  double max_abs_drift = 0.0;
  /// max_abs_drift / (|initial| + 1).
  double relative_drift = 0.0;
};

/// Drift of a monitor against its value at the first sample. Throws
/// UnknownMonitor.
DriftReport drift_report(const Trajectory& traj, const std::string& monitor);

/// Header s,l1,l1p[,l2,l2p],u,tau1[,tau2],ell_next_drift; 17 significant
/// digits per value.
void write_csv(const Trajectory& traj, int k, std::ostream& out);

}  // namespace lh
