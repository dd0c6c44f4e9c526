#include <doctest.h>

#include <vector>

#include "lh/diffpoly.hpp"
#include "lh/errors.hpp"
#include "random_poly.hpp"

using namespace lh;
using lh::testing::PolyGen;

namespace {

const DiffPoly u = DiffPoly::u();
const DiffPoly u1 = DiffPoly::u(1);
const DiffPoly u2 = DiffPoly::u(2);
const DiffPoly s = DiffPoly::s();

Rational half() { return make_rational(1, 2); }

DiffPoly without_constant(const DiffPoly& p) { return p - DiffPoly(p.coefficient(Monomial())); }

}  // namespace

TEST_SUITE("diffpoly") {
  TEST_CASE("normal form examples") {
    CHECK((u + u - u.scaled(2)).is_zero());
    CHECK((u + s) * (u - s) == u * u - s * s);
    CHECK(normal_form(normal_form(u * s + 3)) == u * s + 3);
    CHECK(DiffPoly(0).is_zero());
    CHECK(DiffPoly(make_rational(2, 4)).constant_value() == half());
  }

  TEST_CASE("monomial bookkeeping") {
    const Monomial m = Monomial::of(Var::u(2), 3) * Monomial::s(2) * Monomial::of(Var::u());
    CHECK(m.grade() == 4);
    CHECK(m.max_jet_order() == 2);
    CHECK(m.exponent(Var::u(2)) == 3);
    CHECK(m.s_power() == 2);
    CHECK(Monomial::of(Var::u()).divides(m));
    CHECK_FALSE(Monomial::of(Var::u(1)).divides(m));
    CHECK(Monomial::gcd(m, Monomial::of(Var::u(2)) * Monomial::s(5)) == Monomial::of(Var::u(2)) * Monomial::s(2));
    CHECK(Monomial().is_unit());
    CHECK(Monomial::of(Var::tau(0)).is_constant());
  }

  TEST_CASE("ordering puts higher derivatives first within a grade") {
    const DiffPoly p = u.pow(2).scaled(3) + u2;
    REQUIRE(p.size() == 2);
    CHECK(p.terms().begin()->first == Monomial::of(Var::u(2)));
    CHECK(p.leading_coefficient() == 1);
  }

  TEST_CASE("total derivative examples") {
    CHECK(total_derivative(u) == u1);
    CHECK(total_derivative(s * u1 * u1) == u1 * u1 + (s * u1 * u2).scaled(2));
    CHECK(total_derivative(DiffPoly(make_rational(7, 3))).is_zero());
    CHECK(total_derivative(DiffPoly::tau(1)).is_zero());
    CHECK(nth_derivative(u, 4) == DiffPoly::u(4));
    CHECK(total_derivative(DiffPoly::var(Var::integral(Monomial::of(Var::u(), 2)))) == u * u);
  }

  TEST_CASE("formal integral examples") {
    CHECK(formal_integral(u1 * u2) == (u1 * u1).scaled(half()));
    CHECK(formal_integral(s * u1 + u) == s * u);
    CHECK(formal_integral(s.scaled(3)) == (s * s).scaled(make_rational(3, 2)));
    CHECK(formal_integral(DiffPoly()).is_zero());
    CHECK_THROWS_AS(formal_integral(u), NotExactDerivative);
    CHECK_THROWS_AS(formal_integral(u * u), NotExactDerivative);
    CHECK(formal_integral(DiffPoly(1)) == s);
  }

  TEST_CASE("partial integration keeps an exact remainder") {
    const DiffPoly p = s * u1 + u.scaled(3) + u1 * u2;
    const PartialIntegral parts = integrate_by_parts(p);
    CHECK(total_derivative(parts.primitive) + parts.leftover == p);
    CHECK(parts.leftover == u.scaled(2));
    const DiffPoly ext = formal_integral_extended(p);
    CHECK(total_derivative(ext) == p);
    CHECK(ext.has_integrals());
  }

  TEST_CASE("eval_numeric") {
    CHECK(eval_numeric(u * u + s, 2.0, std::vector<double>{3.0}) == doctest::Approx(11.0));
    CHECK_THROWS_AS(eval_numeric(u2, 0.0, std::vector<double>{1.0, 2.0}), MissingJetValue);
    CHECK(eval_numeric(DiffPoly(), 5.0, std::vector<double>{}) == 0.0);
    CHECK_THROWS_AS(eval_numeric(DiffPoly::ell(1), 1.0, std::vector<double>{1.0}), MissingJetValue);
    const double v = evaluate(DiffPoly::ell(1, 1) * s + DiffPoly::tau(0), 2.0, [](const Var& x) -> std::optional<double> {
      if (x.kind() == Var::Kind::Param) return 5.0;
      if (x.is_jet() && x.fn() == 1 && x.order() == 1) return 0.25;
      return std::nullopt;
    });
    CHECK(v == doctest::Approx(5.5));
  }

  TEST_CASE("collect and substitute") {
    const DiffPoly p = (u * u * s).scaled(2) + u1 * u + 7;
    const auto parts = p.collect(Var::u());
    CHECK(parts.at(2) == s.scaled(2));
    CHECK(parts.at(1) == u1);
    CHECK(parts.at(0) == DiffPoly(7));
    CHECK(p.substitute(Var::u(), s) == (s * s * s).scaled(2) + u1 * s + 7);
    CHECK(p.degree_in(Var::u()) == 2);
    CHECK(p.max_jet_order() == 1);
  }

  TEST_CASE("ring laws on random inputs") {
    PolyGen gen(20241015);
    for (int i = 0; i < 1000; ++i) {
      const DiffPoly a = gen.poly(), b = gen.poly(), c = gen.poly();
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a - a).is_zero());
      REQUIRE(a * DiffPoly(1) == a);
    }
  }

  TEST_CASE("derivative is linear and satisfies Leibniz") {
    PolyGen gen(7);
    for (int i = 0; i < 1000; ++i) {
      const DiffPoly a = gen.poly(), b = gen.poly();
      const Rational c = gen.coefficient();
      REQUIRE(total_derivative(a + b.scaled(c)) == total_derivative(a) + total_derivative(b).scaled(c));
      REQUIRE(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b));
    }
  }

  TEST_CASE("integration inverts differentiation") {
    PolyGen gen(99);
    PolyGen::Shape shape;
    shape.max_order = 3;
    shape.max_degree = 3;
    for (int i = 0; i < 300; ++i) {
      const DiffPoly q = gen.poly(shape);
      const DiffPoly p = total_derivative(q);
      const DiffPoly back = formal_integral(p);
      REQUIRE(back == without_constant(q));
      REQUIRE(total_derivative(back) == p);
    }
  }

  TEST_CASE("normal form uniqueness") {
    PolyGen gen(3);
    for (int i = 0; i < 300; ++i) {
      const DiffPoly p = gen.poly();
      std::vector<std::pair<Monomial, Rational>> reversed(p.terms().rbegin(), p.terms().rend());
      // Split every coefficient in two so the same element is built differently.
      std::vector<std::pair<Monomial, Rational>> split;
      for (const auto& [m, c] : reversed) {
        split.emplace_back(m, c / 3);
        split.emplace_back(m, c * 2 / 3);
      }
      const DiffPoly q = DiffPoly::from_terms(split);
      REQUIRE((p - q).is_zero());
      REQUIRE(p == q);
      const DiffPoly r = gen.poly();
      REQUIRE((p - r).is_zero() == (p == r));
    }
  }
}
