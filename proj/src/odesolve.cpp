#include "lh/odesolve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>

#include "lh/errors.hpp"

namespace lh {

// ------------------------------------------------------------ compiled forms

CompiledPoly::CompiledPoly(const DiffPoly& p, const SlotOf& slot_of) {
  for (const auto& [m, c] : p.terms()) {
    Term t{c.get_d(), m.s_power(), {}};
    for (const auto& [v, e] : m.factors()) {
      const int slot = slot_of(v);
      if (slot < 0) throw Error("CompiledPoly: generator has no state slot");
      t.factors.emplace_back(slot, e);
    }
    terms_.push_back(std::move(t));
  }
}

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (; e > 0; --e) r *= x;
  return r;
}

}  // namespace

double CompiledPoly::operator()(double s, std::span<const double> slots) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = t.coef * ipow(s, t.s_power);
    for (const auto& [slot, e] : t.factors) v *= ipow(slots[static_cast<std::size_t>(slot)], e);
    sum += v;
  }
  return sum;
}

CompiledSystem::CompiledSystem(int dimension, VectorField field, std::vector<Monitor> monitors,
                               std::vector<Accumulator> accumulators)
    : dimension_(dimension),
      field_(std::move(field)),
      monitors_(std::move(monitors)),
      accumulators_(std::move(accumulators)) {
  if (dimension_ <= 0) throw Error("CompiledSystem: dimension must be positive");
  for (const auto& a : accumulators_)
    if (a.source >= monitors_.size()) throw Error("CompiledSystem: accumulator source out of range");
}

std::vector<std::string> CompiledSystem::monitor_names() const {
  std::vector<std::string> names;
  for (const auto& m : monitors_) names.push_back(m.name);
  for (const auto& a : accumulators_) names.push_back(a.name);
  return names;
}

// -------------------------------------------------------- symbolic compiler

int hierarchy_slot(const Var& v) {
  if (!v.is_jet() || v.fn() < 1 || v.order() > 1) return -1;
  return 2 * (v.fn() - 1) + v.order();
}

namespace {

DiffPoly determinant(const std::vector<std::vector<DiffPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  DiffPoly det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<DiffPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<DiffPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const DiffPoly term = m[0][col] * determinant(minor);
    if (col % 2 == 0) det += term; else det -= term;
  }
  return det;
}

int max_ell_order(const RationalExpr& e) {
  int top = -1;
  for (const DiffPoly* p : {&e.numerator(), &e.denominator()})
    for (const Var& v : p->variables())
      if (v.is_jet() && v.fn() >= 1) top = std::max(top, v.order());
  return top;
}

}  // namespace

RationalExpr reduce_on_shell(const RationalExpr& e, const std::vector<RationalExpr>& accelerations) {
  const int top = max_ell_order(e);
  if (top < 2) return e;
  const int k = static_cast<int>(accelerations.size());
  // tower[q][r - 2] = l_{q+1}^(r) in (s, l, l')
  std::vector<std::vector<RationalExpr>> tower(static_cast<std::size_t>(k));
  for (int q = 0; q < k; ++q) tower[static_cast<std::size_t>(q)].push_back(accelerations[static_cast<std::size_t>(q)]);
  for (int r = 3; r <= top; ++r) {
    for (int q = 0; q < k; ++q) {
      RationalExpr next = total_derivative(tower[static_cast<std::size_t>(q)].back());
      for (int j = 1; j <= k; ++j)
        next = substitute(next, Var::ell(j, 2), accelerations[static_cast<std::size_t>(j - 1)]);
      tower[static_cast<std::size_t>(q)].push_back(std::move(next));
    }
  }
  RationalExpr out = e;
  for (int r = top; r >= 2; --r)
    for (int q = 1; q <= k; ++q)
      out = substitute(out, Var::ell(q, r), tower[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(r - 2)]);
  if (max_ell_order(out) >= 2) throw Error("reduce_on_shell: unknown beyond the compiled system");
  return out;
}

HierarchyCompilation compile_hierarchy_symbolic(int k, const std::vector<Rational>& taus) {
  if (k < 1 || k > 2) throw DomainError("numerical compilation supports k = 1 and k = 2");
  if (static_cast<int>(taus.size()) != k + 1)
    throw DomainError("need tau_0 .. tau_" + std::to_string(k));

  HierarchyCompilation c;
  c.system = build_p3_system(k, TauParameters::values(taus));
  const auto n = static_cast<std::size_t>(k);

  c.mass.assign(n, std::vector<DiffPoly>(n));
  c.forcing.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const DiffPoly& eq = c.system.cleared[p];
    DiffPoly rest = eq;
    for (std::size_t q = 0; q < n; ++q) {
      const Var acc = Var::ell(static_cast<int>(q) + 1, 2);
      if (eq.degree_in(acc) > 1) throw Error("hierarchy equation is not linear in second derivatives");
      const auto parts = eq.collect(acc);
      if (auto it = parts.find(1); it != parts.end()) c.mass[p][q] = it->second;
      rest = rest.substitute(acc, DiffPoly());
    }
    if (rest.max_jet_order() > 1) throw Error("hierarchy equation involves derivatives above the second");
    c.forcing[p] = rest;
    for (const auto& entry : c.mass[p])
      if (entry.max_jet_order() > 1) throw Error("hierarchy equation is not linear in second derivatives");
  }

  c.determinant = determinant(c.mass);
  if (c.determinant.is_zero()) throw SingularMassMatrix("mass matrix is identically singular");
  for (std::size_t q = 0; q < n; ++q) {
    auto replaced = c.mass;
    for (std::size_t p = 0; p < n; ++p) replaced[p][q] = -c.forcing[p];
    c.cramer.push_back(determinant(replaced));
    c.accelerations.emplace_back(c.cramer.back(), c.determinant);
  }

  c.u = reduce_on_shell(c.system.u_expr, c.accelerations);
  c.u_prime = reduce_on_shell(total_derivative(c.system.u_expr), c.accelerations);

  const RationalExpr lk = DiffPoly::ell(k);
  const RationalExpr flux = RationalExpr(DiffPoly::ell(k, 3)) +
                            RationalExpr(DiffPoly(4)) * c.system.u_expr * RationalExpr(DiffPoly::ell(k, 1)) +
                            RationalExpr(DiffPoly(2)) * total_derivative(c.system.u_expr) * lk;
  c.next_flux = reduce_on_shell(flux, c.accelerations);

  const std::vector<DiffPoly> ells = hierarchy_ells(k);
  for (int p = 1; p <= k; ++p) {
    const DiffPoly raw = conserved_tau(ells, k, p).expr;
    RationalExpr expr(raw);
    const int top_u = raw.max_order_of(0);
    for (int i = top_u; i >= 0; --i) {
      RationalExpr ui = c.system.u_expr;
      for (int d = 0; d < i; ++d) ui = total_derivative(ui);
      expr = substitute(expr, Var::u(i), ui);
    }
    c.taus.push_back(reduce_on_shell(expr, c.accelerations));
  }
  return c;
}

namespace {

// Numerical jets along a trajectory: l_q^(r) for r <= top_l from the state and
// the symbolically differentiated rhs, then u^(i) for i <= top_u from the u
// formula. Slots: l_q^(r) at (q-1)(top_l+1)+r, u^(i) after all l jets.
class JetStages {
 public:
  JetStages(const HierarchyCompilation& c, int top_l, int top_u) : k_(c.system.k), top_l_(top_l), top_u_(top_u) {
    for (int q = 1; q <= k_; ++q)
      for (int r = 2; r <= top_l_; ++r)
        ell_.emplace_back(reduce_on_shell(RationalExpr(DiffPoly::ell(q, r)), c.accelerations), hierarchy_slot);
    RationalExpr ui = c.system.u_expr;
    for (int i = 0; i <= top_u_; ++i) {
      if (max_order(ui) > top_l_) throw Error("JetStages: u derivative exceeds the l-jet tower");
      u_.emplace_back(ui, [this](const Var& v) { return slot(v); });
      ui = total_derivative(ui);
    }
  }

  int slot(const Var& v) const {
    if (!v.is_jet() || v.order() < 0) return -1;
    if (v.fn() == 0) return v.order() <= top_u_ ? k_ * (top_l_ + 1) + v.order() : -1;
    if (v.fn() > k_ || v.order() > top_l_) return -1;
    return (v.fn() - 1) * (top_l_ + 1) + v.order();
  }

  std::vector<double> fill(double s, std::span<const double> y) const {
    std::vector<double> buf(static_cast<std::size_t>(k_ * (top_l_ + 1) + top_u_ + 1), 0.0);
    std::size_t next = 0;
    for (int q = 0; q < k_; ++q) {
      const auto base = static_cast<std::size_t>(q * (top_l_ + 1));
      buf[base] = y[static_cast<std::size_t>(2 * q)];
      buf[base + 1] = y[static_cast<std::size_t>(2 * q + 1)];
      for (int r = 2; r <= top_l_; ++r) buf[base + static_cast<std::size_t>(r)] = ell_[next++](s, y);
    }
    for (int i = 0; i <= top_u_; ++i)
      buf[static_cast<std::size_t>(k_ * (top_l_ + 1) + i)] = u_[static_cast<std::size_t>(i)](s, buf);
    return buf;
  }

  static int max_order(const RationalExpr& e) {
    int top = -1;
    for (const DiffPoly* p : {&e.numerator(), &e.denominator()})
      for (const Var& v : p->variables())
        if (v.is_jet()) top = std::max(top, v.order());
    return top;
  }

 private:
  int k_;
  int top_l_;
  int top_u_;
  std::vector<CompiledRational> ell_;
  std::vector<CompiledRational> u_;
};

}  // namespace

CompiledSystem compile_hierarchy(int k, const std::vector<double>& taus) {
  std::vector<Rational> exact;
  for (double t : taus) {
    if (!std::isfinite(t)) throw DomainError("tau values must be finite");
    exact.emplace_back(t);
  }
  const HierarchyCompilation c = compile_hierarchy_symbolic(k, exact);

  const CompiledPoly det(c.determinant, hierarchy_slot);
  std::vector<CompiledPoly> acc_num;
  for (const auto& num : c.cramer) acc_num.emplace_back(num, hierarchy_slot);

  VectorField field = [k, det, acc_num](double s, std::span<const double> y, std::span<double> out) {
    const double d = det(s, y);
    if (d == 0.0 || !std::isfinite(d))
      throw SingularMassMatrix("mass matrix determinant vanishes at s = " + std::to_string(s));
    for (int q = 0; q < k; ++q) {
      out[static_cast<std::size_t>(2 * q)] = y[static_cast<std::size_t>(2 * q + 1)];
      out[static_cast<std::size_t>(2 * q + 1)] = acc_num[static_cast<std::size_t>(q)](s, y) / d;
    }
  };

  // Monitors are polynomials in l-jets and u-jets evaluated in stages, so
  // their drift reflects the integrator rather than exact cancellation.
  const std::vector<DiffPoly> ells = hierarchy_ells(k);
  std::vector<std::pair<std::string, DiffPoly>> exprs;
  exprs.emplace_back("u", DiffPoly::u());
  exprs.emplace_back("u_prime", DiffPoly::u(1));
  exprs.emplace_back("ell_next_flux", DiffPoly::ell(k, 3) + (DiffPoly::u() * DiffPoly::ell(k, 1)).scaled(4) +
                                          (DiffPoly::u(1) * DiffPoly::ell(k)).scaled(2));
  for (int p = 1; p <= k; ++p) exprs.emplace_back("tau" + std::to_string(p), conserved_tau(ells, k, p).expr);

  int top_l = 1, top_u = 0;
  for (const auto& [name, e] : exprs) {
    top_u = std::max(top_u, e.max_order_of(0));
    for (int q = 1; q <= k; ++q) top_l = std::max(top_l, e.max_order_of(q));
  }
  top_l = std::max(top_l, top_u + 2);
  auto stages = std::make_shared<const JetStages>(c, top_l, top_u);

  std::vector<Monitor> monitors;
  for (const auto& [name, e] : exprs) {
    CompiledPoly f(e, [stages](const Var& v) { return stages->slot(v); });
    const bool conserved = name != "u" && name != "u_prime";
    monitors.push_back({name, [stages, f](double s, std::span<const double> y) { return f(s, stages->fill(s, y)); },
                        conserved});
  }
  std::vector<Accumulator> accumulators{{"ell_next", 2, true}};
  return CompiledSystem(2 * k, std::move(field), std::move(monitors), std::move(accumulators));
}

CompiledSystem compile_k1(double tau0, double tau1) { return compile_hierarchy(1, {tau0, tau1}); }

CompiledSystem compile_k2(double tau0, double tau1, double tau2) {
  return compile_hierarchy(2, {tau0, tau1, tau2});
}

// ------------------------------------------------------------------ solver

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

Trajectory integrate(const CompiledSystem& sys, std::span<const double> init, const SolverConfig& cfg) {
  if (!(cfg.step > 0.0)) throw StepSizeUnderflow("step must be positive");
  if (!(cfg.s_start > 0.0)) throw DomainError("s_start must be positive");
  if (!(cfg.s_end > cfg.s_start)) throw DomainError("s_end must exceed s_start");
  if (cfg.decimate < 1) throw DomainError("decimate must be >= 1");
  if (static_cast<int>(init.size()) != sys.dimension()) throw DomainError("initial state has the wrong dimension");
  if (!all_finite(init)) throw DomainError("initial state must be finite");
  const double span = cfg.s_end - cfg.s_start;
  if (span / cfg.step > 1e8) throw DomainError("more than 1e8 steps requested");
  const auto full_steps = static_cast<long long>(std::floor(span / cfg.step));
  if (cfg.s_start + static_cast<double>(full_steps) * cfg.step == cfg.s_start && full_steps > 0)
    throw StepSizeUnderflow("step is below the resolution of s");

  Trajectory traj;
  traj.monitor_names = sys.monitor_names();
  const auto n = static_cast<std::size_t>(sys.dimension());
  const auto& monitors = sys.monitors();
  const auto& accs = sys.accumulators();

  std::vector<double> y(init.begin(), init.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<double> mon(monitors.size());
  std::vector<double> acc(accs.size(), 0.0);

  auto abort = [&](double s, const std::string& why) {
    traj.status = Trajectory::Status::AbortedNonfinite;
    traj.abort_s = s;
    traj.abort_reason = why;
  };
  auto eval_monitors = [&](double s) -> bool {
    for (std::size_t i = 0; i < monitors.size(); ++i) {
      mon[i] = monitors[i].eval(s, y);
      if (!std::isfinite(mon[i])) return false;
    }
    return true;
  };
  auto record = [&](double s) {
    Sample smp{s, y, mon};
    smp.monitors.insert(smp.monitors.end(), acc.begin(), acc.end());
    traj.samples.push_back(std::move(smp));
  };

  double s = cfg.s_start;
  if (!eval_monitors(s)) {
    abort(s, "non-finite monitor at the initial state");
    return traj;
  }
  record(s);

  const long long total = full_steps + ((cfg.s_start + static_cast<double>(full_steps) * cfg.step < cfg.s_end) ? 1 : 0);
  for (long long i = 0; i < total; ++i) {
    const double s_next = (i + 1 <= full_steps) ? cfg.s_start + static_cast<double>(i + 1) * cfg.step : cfg.s_end;
    const double h = s_next - s;
    if (!(h > 0.0)) break;
    try {
      sys.rhs(s, y, k1);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
      sys.rhs(s + 0.5 * h, tmp, k2);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
      sys.rhs(s + 0.5 * h, tmp, k3);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + h * k3[j];
      sys.rhs(s_next, tmp, k4);
    } catch (const EvaluationError& e) {
      abort(s, e.what());
      return traj;
    }
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!all_finite(tmp)) {
      abort(s, "non-finite state");
      return traj;
    }
    const std::vector<double> previous = mon;
    y.swap(tmp);
    if (!eval_monitors(s_next)) {
      abort(s_next, "non-finite monitor");
      return traj;
    }
    for (std::size_t a = 0; a < accs.size(); ++a)
      acc[a] += 0.5 * h * (previous[accs[a].source] + mon[accs[a].source]);
    s = s_next;
    if ((i + 1) % cfg.decimate == 0 || i + 1 == total) record(s);
  }
  return traj;
}

DriftReport drift_report(const Trajectory& traj, const std::string& monitor) {
  std::size_t idx = traj.monitor_names.size();
  for (std::size_t i = 0; i < traj.monitor_names.size(); ++i)
    if (traj.monitor_names[i] == monitor) idx = i;
  if (idx == traj.monitor_names.size()) throw UnknownMonitor("no monitor named '" + monitor + "'");
  DriftReport r;
  if (traj.samples.empty()) return r;
  const double v0 = traj.samples.front().monitors[idx];
  for (const Sample& smp : traj.samples) r.max_abs_drift = std::max(r.max_abs_drift, std::abs(smp.monitors[idx] - v0));
  r.relative_drift = r.max_abs_drift / (std::abs(v0) + 1.0);
  return r;
}

void write_csv(const Trajectory& traj, int k, std::ostream& out) {
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < traj.monitor_names.size(); ++i)
      if (traj.monitor_names[i] == name) return i;
    throw UnknownMonitor("trajectory has no monitor '" + name + "'");
  };
  std::vector<std::size_t> cols{column("u")};
  for (int p = 1; p <= k; ++p) cols.push_back(column("tau" + std::to_string(p)));
  const std::size_t ell_next = column("ell_next");

  out << "s";
  for (int q = 1; q <= k; ++q) out << ",l" << q << ",l" << q << "p";
  out << ",u";
  for (int p = 1; p <= k; ++p) out << ",tau" << p;
  out << ",ell_next_drift\n";

  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (const Sample& smp : traj.samples) {
    put(smp.s);
    for (double v : smp.state) out << ',', put(v);
    for (std::size_t c : cols) out << ',', put(smp.monitors[c]);
    out << ',';
    put(smp.monitors[ell_next] - traj.samples.front().monitors[ell_next]);
    out << '\n';
  }
}

}  // namespace lh
