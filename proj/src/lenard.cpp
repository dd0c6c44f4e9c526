#include "lh/lenard.hpp"

#include "lh/errors.hpp"
#include "lh/serialize.hpp"

namespace lh {

SeedCondition SeedCondition::standard() { return {SeedKind::Standard, DiffPoly(make_rational(1, 2))}; }

SeedCondition SeedCondition::painleve3() {
  return {SeedKind::PainleveIII, DiffPoly::s().scaled(make_rational(1, 2))};
}

SeedCondition SeedCondition::custom(DiffPoly ell0) { return {SeedKind::Custom, std::move(ell0)}; }

std::string SeedCondition::name() const {
  switch (kind_) {
    case SeedKind::Standard:
      return "standard";
    case SeedKind::PainleveIII:
      return "p3";
    case SeedKind::Custom:
      return "custom(" + to_ascii(ell0_) + ")";
  }
  return {};
}

const DiffPoly& LenardSequence::at(int j) const {
  if (j < 0 || j > last_index())
    throw IndexOutOfRange("l_" + std::to_string(j) + " requested from a sequence ending at l_" +
                          std::to_string(last_index()));
  return ells_[static_cast<std::size_t>(j)];
}

bool LenardSequence::has_integrals() const {
  for (const auto& l : ells_)
    if (l.has_integrals()) return true;
  return false;
}

DiffPoly lenard_rhs(const DiffPoly& ell) {
  const DiffPoly d1 = total_derivative(ell);
  const DiffPoly d3 = nth_derivative(d1, 2);
  return d3 + (DiffPoly::u() * d1).scaled(4) + (DiffPoly::u(1) * ell).scaled(2);
}

LenardSequence generate(const SeedCondition& seed, int count, std::span<const Rational> constants,
                        Antiderivatives policy) {
  if (count < 1) throw Error("generate: count must be positive");
  if (constants.size() != static_cast<std::size_t>(count))
    throw Error("generate: expected " + std::to_string(count) + " integration constants, got " +
                std::to_string(constants.size()));

  std::vector<DiffPoly> ells{seed.ell0()};
  for (int j = 0; j < count; ++j) {
    const DiffPoly rhs = lenard_rhs(ells.back());
    DiffPoly next;
    if (policy == Antiderivatives::Introduce) {
      next = formal_integral_extended(rhs);
    } else {
      try {
        next = formal_integral(rhs);
      } catch (const NotExactDerivative& e) {
        throw NotExactDerivative("Lenard step " + std::to_string(j) + " -> " + std::to_string(j + 1) +
                                     " for seed " + seed.name() + ": " + e.what(),
                                 j);
      }
    }
    ells.push_back(next + DiffPoly(constants[static_cast<std::size_t>(j)]));
  }

  for (int j = 0; j < count; ++j)
    if (!recursion_residual(ells, j).is_zero())
      throw Error("internal: recursion residual nonzero at step " + std::to_string(j));

  return LenardSequence(seed, std::move(ells), std::vector<Rational>(constants.begin(), constants.end()));
}

LenardSequence generate(const SeedCondition& seed, int count, Antiderivatives policy) {
  std::vector<Rational> zeros(static_cast<std::size_t>(count > 0 ? count : 0), Rational(0));
  return generate(seed, count, zeros, policy);
}

namespace {

const DiffPoly& entry(std::span<const DiffPoly> ells, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= ells.size())
    throw IndexOutOfRange("index " + std::to_string(j) + " outside l_0 .. l_" +
                          std::to_string(static_cast<long>(ells.size()) - 1));
  return ells[static_cast<std::size_t>(j)];
}

}  // namespace

DiffPoly recursion_residual(std::span<const DiffPoly> ells, int j) {
  return total_derivative(entry(ells, j + 1)) - lenard_rhs(entry(ells, j));
}

std::vector<DiffPoly> closed_form_standard_sequence(int p) {
  if (p < 0) throw IndexOutOfRange("closed_form_standard: negative index");
  std::vector<DiffPoly> ells{DiffPoly(make_rational(1, 2))};
  for (int n = 1; n <= p; ++n) {
    DiffPoly next = omega(ells, 0, n - 1);
    for (int q = 0; q <= n - 2; ++q) next += omega(ells, n - 1 - q, q) - ells[n - 1 - q] * ells[q + 1];
    ells.push_back(std::move(next));
  }
  return ells;
}

DiffPoly closed_form_standard(int p) {
  if (p < 1) throw IndexOutOfRange("closed_form_standard: p must be >= 1");
  return closed_form_standard_sequence(p).back();
}

DiffPoly omega(std::span<const DiffPoly> ells, int n, int m) {
  const DiffPoly& ln = entry(ells, n);
  const DiffPoly& lm = entry(ells, m);
  const DiffPoly prod = ln * lm;
  return nth_derivative(prod, 2) - (total_derivative(ln) * total_derivative(lm)).scaled(3) +
         (DiffPoly::u() * prod).scaled(4);
}

DiffPoly omega(const LenardSequence& seq, int n, int m) { return omega(seq.ells(), n, m); }

DiffPoly master_identity_residual(std::span<const DiffPoly> ells, int n, int m) {
  return entry(ells, m) * total_derivative(entry(ells, n + 1)) +
         entry(ells, n) * total_derivative(entry(ells, m + 1)) - total_derivative(omega(ells, n, m));
}

DiffPoly master_identity_residual(const LenardSequence& seq, int n, int m) {
  return master_identity_residual(seq.ells(), n, m);
}

DiffPoly shift_identity_residual(std::span<const DiffPoly> ells, int n, int m) {
  if (n < 1) throw IndexOutOfRange("shift identity needs n >= 1");
  const DiffPoly bracket = omega(ells, n - 1, m) - entry(ells, n - 1) * entry(ells, m + 1);
  return entry(ells, m) * total_derivative(entry(ells, n)) -
         entry(ells, m + 1) * total_derivative(entry(ells, n - 1)) - total_derivative(bracket);
}

DiffPoly shift_identity_residual(const LenardSequence& seq, int n, int m) {
  return shift_identity_residual(seq.ells(), n, m);
}

DiffPoly transport_residual(std::span<const DiffPoly> ells, int m, int n, int r) {
  if (r < 0) throw IndexOutOfRange("transport distance must be non-negative");
  if (n - r < 0) throw IndexOutOfRange("transport needs n - r >= 0");
  DiffPoly bracket;
  for (int q = 0; q < r; ++q)
    bracket += omega(ells, n - q - 1, m + q) - entry(ells, n - q - 1) * entry(ells, m + q + 1);
  return entry(ells, m) * total_derivative(entry(ells, n)) -
         entry(ells, m + r) * total_derivative(entry(ells, n - r)) - total_derivative(bracket);
}

DiffPoly transport_residual(const LenardSequence& seq, int m, int n, int r) {
  return transport_residual(seq.ells(), m, n, r);
}

}  // namespace lh
