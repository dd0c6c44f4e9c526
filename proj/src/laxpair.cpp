#include "lh/laxpair.hpp"

#include "lh/errors.hpp"

namespace lh {

LaurentPoly::LaurentPoly(const DiffPoly& constant) {
  if (!constant.is_zero()) coeffs_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(int power, const DiffPoly& coeff) {
  LaurentPoly p;
  if (!coeff.is_zero()) p.coeffs_.emplace(power, coeff);
  return p;
}

DiffPoly LaurentPoly::coefficient(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? DiffPoly() : it->second;
}

std::vector<int> LaurentPoly::support() const {
  std::vector<int> out;
  for (const auto& [n, c] : coeffs_) out.push_back(n);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [n, c] : coeffs_) r.coeffs_.emplace(n, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [n, c] : o.coeffs_) {
    DiffPoly& slot = coeffs_[n];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(n);
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [n, x] : a.coeffs_)
    for (const auto& [m, y] : b.coeffs_) r += LaurentPoly::monomial(n + m, x * y);
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly r;
  for (const auto& [n, x] : coeffs_) r += monomial(n, x.scaled(c));
  return r;
}

LaurentPoly total_derivative(const LaurentPoly& p) {
  LaurentPoly r;
  for (const auto& [n, c] : p.coefficients()) r += LaurentPoly::monomial(n, total_derivative(c));
  return r;
}

LaurentPoly nth_derivative(const LaurentPoly& p, int n) {
  LaurentPoly r = p;
  for (int i = 0; i < n; ++i) r = total_derivative(r);
  return r;
}

LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y) {
  LaurentMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

LaurentPoly trace(const LaurentMatrix& m) { return m[0][0] + m[1][1]; }

namespace {

const DiffPoly& entry(std::span<const DiffPoly> ells, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= ells.size())
    throw IndexOutOfRange("index " + std::to_string(j) + " outside l_0 .. l_" +
                          std::to_string(static_cast<long>(ells.size()) - 1));
  return ells[static_cast<std::size_t>(j)];
}

LaurentPoly boundary_term(std::span<const DiffPoly> ells, int k) {
  if (static_cast<std::size_t>(k + 1) >= ells.size()) return {};
  return LaurentPoly::monomial(-(k + 1), total_derivative(ells[static_cast<std::size_t>(k + 1)]).scaled(pow4(-(k + 1))));
}

}  // namespace

LaurentPoly build_b(std::span<const DiffPoly> ells, int k) {
  if (k < 0) throw IndexOutOfRange("build_b: k must be >= 0");
  LaurentPoly b;
  for (int j = 0; j <= k; ++j) b += LaurentPoly::monomial(j - k - 1, entry(ells, k - j).scaled(pow4(j - k)));
  return b;
}

LaurentPoly build_b(const LenardSequence& seq, int k) { return build_b(seq.ells(), k); }

LaxCoefficients derive_a_c(const LaurentPoly& b, const DiffPoly& u) {
  const LaurentPoly db = total_derivative(b);
  LaxCoefficients out;
  out.a = db.scaled(make_rational(-1, 2));
  out.c = (LaurentPoly::z() - LaurentPoly(u)) * b - total_derivative(db).scaled(make_rational(1, 2));
  return out;
}

LaurentPoly compatibility_residual(std::span<const DiffPoly> ells, int k) {
  if (total_derivative(entry(ells, 0)) != DiffPoly(make_rational(1, 2)))
    throw SeedMismatch("compatibility residual needs D(l_0) = 1/2; the z^0 coefficient cannot cancel");
  const DiffPoly u = DiffPoly::u();
  const LaurentPoly b = build_b(ells, k);
  const LaurentPoly db = total_derivative(b);
  const LaurentPoly inner = nth_derivative(db, 2) + LaurentPoly(u).scaled(4) * db +
                            LaurentPoly(total_derivative(u)).scaled(2) * b;
  return LaurentPoly::z() * db - inner.scaled(make_rational(1, 4)) - LaurentPoly(DiffPoly(make_rational(1, 2))) +
         boundary_term(ells, k);
}

LaurentPoly compatibility_residual(const LenardSequence& seq, int k) {
  return compatibility_residual(seq.ells(), k);
}

LaxMatrices build_lax_matrices(std::span<const DiffPoly> ells, int k, const DiffPoly& u) {
  LaxMatrices lax;
  lax.k = k;
  lax.u = u;
  lax.b = build_b(ells, k);
  LaxCoefficients ac = derive_a_c(lax.b, u);
  lax.a = ac.a;
  lax.c = ac.c;
  lax.A = {{{lax.a, lax.b}, {lax.c, -lax.a}}};
  lax.B = {{{LaurentPoly(), LaurentPoly(DiffPoly(1))}, {LaurentPoly::z() - LaurentPoly(u), LaurentPoly()}}};
  if (static_cast<std::size_t>(k + 1) < ells.size())
    lax.boundary_flux = total_derivative(ells[static_cast<std::size_t>(k + 1)]);
  return lax;
}

LaxMatrices build_lax_matrices(const LenardSequence& seq, int k, const DiffPoly& u) {
  return build_lax_matrices(seq.ells(), k, u);
}

LaurentPoly aceqn_residual(const LaxMatrices& lax) {
  const LaurentPoly zu = LaurentPoly::z() - LaurentPoly(lax.u);
  return total_derivative(lax.c) - LaurentPoly(DiffPoly(1)) - (zu * lax.a).scaled(2) +
         LaurentPoly::monomial(-(lax.k + 1), lax.boundary_flux.scaled(2 * pow4(-(lax.k + 1))));
}

}  // namespace lh
