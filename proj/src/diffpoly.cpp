#include "lh/diffpoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lh/errors.hpp"

namespace lh {

// ---------------------------------------------------------------- Var

Var Var::jet(int fn, int order) {
  Var v;
  v.kind_ = Kind::Jet;
  v.index_ = fn;
  v.order_ = order;
  return v;
}

Var Var::tau(int p) {
  Var v;
  v.kind_ = Kind::Param;
  v.index_ = p;
  return v;
}

Var Var::integral(const Monomial& integrand) {
  Var v;
  v.kind_ = Kind::Integral;
  v.integrand_ = std::make_shared<const Monomial>(integrand);
  return v;
}

int compare(const Var& a, const Var& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
  switch (a.kind_) {
    case Var::Kind::Jet:
      if (a.order_ != b.order_) return a.order_ > b.order_ ? -1 : 1;
      if (a.index_ != b.index_) return a.index_ < b.index_ ? -1 : 1;
      return 0;
    case Var::Kind::Param:
      if (a.index_ != b.index_) return a.index_ < b.index_ ? -1 : 1;
      return 0;
    case Var::Kind::Integral:
      if (a.integrand_ == b.integrand_) return 0;
      return compare(*a.integrand_, *b.integrand_);
  }
  return 0;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(const Var& v, int exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(v, exponent);
  return m;
}

Monomial Monomial::s(int power) {
  Monomial m;
  m.s_power_ = power;
  return m;
}

int Monomial::exponent(const Var& v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

int Monomial::grade() const {
  int g = 0;
  for (const auto& [v, e] : factors_)
    if (v.kind() != Var::Kind::Param) g += e;
  return g;
}

int Monomial::max_jet_order() const {
  // Jets are sorted by descending order, so the first jet is the highest.
  for (const auto& [v, e] : factors_)
    if (v.is_jet()) return v.order();
  return -1;
}

bool Monomial::has_integrals() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.first.kind() == Var::Kind::Integral; });
}

bool Monomial::is_constant() const {
  return s_power_ == 0 && std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) {
           return f.first.kind() == Var::Kind::Param;
         });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.s_power_ = s_power_ + other.s_power_;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end()) {
      r.factors_.push_back(*i++);
    } else if (i == factors_.end()) {
      r.factors_.push_back(*j++);
    } else {
      int c = compare(i->first, j->first);
      if (c < 0) {
        r.factors_.push_back(*i++);
      } else if (c > 0) {
        r.factors_.push_back(*j++);
      } else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
  }
  return r;
}

Monomial Monomial::reduced(const Var& v, int count) const {
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first == v) {
      it->second -= count;
      if (it->second <= 0) r.factors_.erase(it);
      return r;
    }
  }
  return r;
}

Monomial Monomial::without(const Var& v) const {
  Monomial r = *this;
  std::erase_if(r.factors_, [&](const Factor& f) { return f.first == v; });
  return r;
}

Monomial Monomial::with_s_power(int power) const {
  Monomial r = *this;
  r.s_power_ = power;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (s_power_ > other.s_power_) return false;
  for (const auto& [v, e] : factors_)
    if (other.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r = other;
  r.s_power_ -= s_power_;
  for (const auto& [v, e] : factors_) r = r.reduced(v, e);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.s_power_ = std::min(a.s_power_, b.s_power_);
  for (const auto& [v, e] : a.factors_) {
    int f = b.exponent(v);
    if (f > 0) r.factors_.emplace_back(v, std::min(e, f));
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  if (&a == &b) return 0;
  int ga = a.grade(), gb = b.grade();
  if (ga != gb) return ga < gb ? -1 : 1;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
    int c = compare(i->first, j->first);
    if (c != 0) return c;
    if (i->second != j->second) return i->second > j->second ? -1 : 1;
  }
  if (i != a.factors_.end()) return -1;
  if (j != b.factors_.end()) return 1;
  if (a.s_power_ != b.s_power_) return a.s_power_ < b.s_power_ ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- DiffPoly

namespace {

void add_term(DiffPoly::TermMap& terms, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

DiffPoly::DiffPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

DiffPoly::DiffPoly(long c) : DiffPoly(Rational(c)) {}

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c) {
  DiffPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

DiffPoly DiffPoly::from_terms(const std::vector<std::pair<Monomial, Rational>>& terms) {
  DiffPoly p;
  for (const auto& [m, c] : terms) add_term(p.terms_, m, c);
  return p;
}

std::optional<Rational> DiffPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_unit()) return terms_.begin()->second;
  return std::nullopt;
}

Rational DiffPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int DiffPoly::max_jet_order() const {
  int r = -1;
  for (const auto& [m, c] : terms_) r = std::max(r, m.max_jet_order());
  return r;
}

int DiffPoly::max_order_of(int fn) const {
  int r = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (v.is_jet() && v.fn() == fn) r = std::max(r, v.order());
  return r;
}

int DiffPoly::degree_in(const Var& v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

bool DiffPoly::has_integrals() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.has_integrals(); });
}

std::vector<Var> DiffPoly::variables() const {
  std::vector<Var> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  return vars;
}

std::map<int, DiffPoly> DiffPoly::collect(const Var& v) const {
  std::map<int, DiffPoly> out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    add_term(out[e].terms_, m.without(v), c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

DiffPoly DiffPoly::substitute(const Var& v, const DiffPoly& value) const {
  auto parts = collect(v);
  DiffPoly result;
  DiffPoly power(1);
  int current = 0;
  for (const auto& [e, coeff] : parts) {
    while (current < e) {
      power *= value;
      ++current;
    }
    result += coeff * power;
  }
  return result;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) add_term(r.terms_, ma * mb, ca * cb);
  return r;
}

DiffPoly DiffPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  DiffPoly r = *this;
  for (auto& [m, coef] : r.terms_) coef *= c;
  return r;
}

DiffPoly DiffPoly::pow(unsigned e) const {
  DiffPoly result(1);
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

int compare(const DiffPoly& a, const DiffPoly& b) {
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
    if (int c = compare(i->first, j->first); c != 0) return c;
    if (int c = cmp(i->second, j->second); c != 0) return c < 0 ? -1 : 1;
  }
  if (i != a.terms_.end()) return 1;
  if (j != b.terms_.end()) return -1;
  return 0;
}

DiffPoly normal_form(const DiffPoly& p) { return p; }

// ---------------------------------------------------------------- calculus

DiffPoly total_derivative(const DiffPoly& p) {
  std::vector<std::pair<Monomial, Rational>> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.s_power() > 0) out.emplace_back(m.with_s_power(m.s_power() - 1), c * m.s_power());
    for (const auto& [v, e] : m.factors()) {
      switch (v.kind()) {
        case Var::Kind::Param:
          break;
        case Var::Kind::Jet:
          out.emplace_back(m.reduced(v) * Monomial::of(v.next()), c * e);
          break;
        case Var::Kind::Integral:
          out.emplace_back(m.reduced(v) * v.integrand(), c * e);
          break;
      }
    }
  }
  return DiffPoly::from_terms(out);
}

DiffPoly nth_derivative(const DiffPoly& p, int n) {
  DiffPoly r = p;
  for (int i = 0; i < n; ++i) r = total_derivative(r);
  return r;
}

namespace {

// Number of terms whose highest jet has order >= r.
std::size_t count_at_order(const DiffPoly& p, int r) {
  std::size_t n = 0;
  for (const auto& [m, c] : p.terms())
    if (m.max_jet_order() >= r) ++n;
  return n;
}

}  // namespace

PartialIntegral integrate_by_parts(const DiffPoly& p) {
  DiffPoly remaining = p;
  PartialIntegral out;

  while (!remaining.is_zero()) {
    const int r = remaining.max_jet_order();

    if (r <= 0) {
      // Pure s (and parameter) terms integrate by the power rule; anything
      // else left at this point has no antiderivative in the ring.
      for (const auto& [m, c] : remaining.terms()) {
        if (m.max_jet_order() < 0 && !m.has_integrals()) {
          int n = m.s_power();
          out.primitive += DiffPoly::term(m.with_s_power(n + 1), c / (n + 1));
        } else {
          out.leftover += DiffPoly::term(m, c);
        }
      }
      break;
    }

    // First term (in monomial order) reaching the top order.
    auto it = std::find_if(remaining.terms().begin(), remaining.terms().end(),
                           [r](const auto& t) { return t.first.max_jet_order() == r; });
    const Monomial m = it->first;
    const Rational c = it->second;
    const DiffPoly term = DiffPoly::term(m, c);

    // The top variable must be unique in the term and appear linearly.
    std::vector<Var> top;
    int top_exponent = 0;
    for (const auto& [v, e] : m.factors()) {
      if (v.is_jet() && v.order() == r) {
        top.push_back(v);
        top_exponent = e;
      }
    }
    if (top.size() != 1 || top_exponent != 1) {
      out.leftover += term;
      remaining -= term;
      continue;
    }

    // c N v^a x  ==  D(c N v^(a+1) / (a+1)) - D(c N) v^(a+1) / (a+1)
    const Var x = top.front();
    const Var v = Var::jet(x.fn(), r - 1);
    const int a = m.exponent(v);
    const Monomial rest = m.reduced(x).without(v);
    const DiffPoly piece = DiffPoly::term(rest * Monomial::of(v, a + 1), c / (a + 1));
    DiffPoly next = remaining - total_derivative(piece);

    const int next_order = next.max_jet_order();
    const bool decreased =
        next_order < r || (next_order == r && count_at_order(next, r) < count_at_order(remaining, r));
    if (!decreased) {
      out.leftover += term;
      remaining -= term;
      continue;
    }
    out.primitive += piece;
    remaining = std::move(next);
  }
  return out;
}

DiffPoly formal_integral(const DiffPoly& p) {
  PartialIntegral parts = integrate_by_parts(p);
  if (!parts.leftover.is_zero())
    throw NotExactDerivative("polynomial is not a total derivative (" +
                             std::to_string(parts.leftover.size()) + " irreducible terms)");
  return parts.primitive;
}

DiffPoly formal_integral_extended(const DiffPoly& p) {
  PartialIntegral parts = integrate_by_parts(p);
  DiffPoly result = std::move(parts.primitive);
  for (const auto& [m, c] : parts.leftover.terms())
    result += DiffPoly::var(Var::integral(m)).scaled(c);
  return result;
}

// ---------------------------------------------------------------- numerics

double evaluate(const DiffPoly& p, double s_value, const Valuation& value_of) {
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c.get_d();
    if (m.s_power() > 0) t *= std::pow(s_value, m.s_power());
    for (const auto& [v, e] : m.factors()) {
      std::optional<double> x = value_of(v);
      if (!x) throw MissingJetValue("no value supplied for a generator of the expression");
      t *= e == 1 ? *x : std::pow(*x, e);
    }
    total += t;
  }
  return total;
}

double eval_numeric(const DiffPoly& p, double s_value, std::span<const double> jet_values) {
  return evaluate(p, s_value, [&](const Var& v) -> std::optional<double> {
    if (!v.is_jet() || v.fn() != 0) return std::nullopt;
    if (static_cast<std::size_t>(v.order()) >= jet_values.size())
      throw MissingJetValue("u^(" + std::to_string(v.order()) + ") requested but only " +
                            std::to_string(jet_values.size()) + " jet values supplied");
    return jet_values[static_cast<std::size_t>(v.order())];
  });
}

}  // namespace lh
