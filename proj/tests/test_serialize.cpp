#include <doctest.h>

#include "lh/errors.hpp"
#include "lh/serialize.hpp"
#include "random_poly.hpp"

using namespace lh;
using lh::testing::PolyGen;

TEST_SUITE("serialize") {
  TEST_CASE("json encoding of u'' + 3u^2") {
    const DiffPoly p = DiffPoly::u(2) + DiffPoly::u().pow(2).scaled(3);
    CHECK(serialize(p, Format::Json) ==
          R"({"terms":[{"s":0,"jets":{"2":1},"coef":"1"},{"s":0,"jets":{"0":2},"coef":"3"}]})");
    CHECK(parse(serialize(p, Format::Json)) == p);
  }

  TEST_CASE("ascii and latex forms") {
    const DiffPoly p = DiffPoly::u(4) + DiffPoly::u(1).pow(2).scaled(5) - DiffPoly::s().scaled(make_rational(1, 2));
    CHECK(to_ascii(p) == "-1/2*s + D4(u) + 5*u'^2");
    CHECK(parse(to_ascii(p)) == p);
    CHECK(to_latex(DiffPoly::u(2)) == "u''");
    CHECK(to_ascii(DiffPoly::ell(2, 1) * DiffPoly::tau(0)) == "l2'*tau0");
    CHECK(to_ascii(DiffPoly()) == "0");
  }

  TEST_CASE("ascii parser") {
    CHECK(parse("u'' + 3*u^2") == DiffPoly::u(2) + DiffPoly::u().pow(2).scaled(3));
    CHECK(parse("D3(u) - s*u'") == DiffPoly::u(3) - DiffPoly::s() * DiffPoly::u(1));
    CHECK(parse("(u + s)*(u - s)") == DiffPoly::u().pow(2) - DiffPoly::s().pow(2));
    CHECK(parse("s^2/2") == DiffPoly::s().pow(2).scaled(make_rational(1, 2)));
    CHECK(parse("l1''*l2 + tau1") == DiffPoly::ell(1, 2) * DiffPoly::ell(2) + DiffPoly::tau(1));
    CHECK(parse("D2(l3)") == DiffPoly::ell(3, 2));
    CHECK(parse("-u") == -DiffPoly::u());
    CHECK(parse("int(u^2)") == DiffPoly::var(Var::integral(Monomial::of(Var::u(), 2))));
  }

  TEST_CASE("rational expressions") {
    const RationalExpr e = parse_expression("tau1/s - l1^2/s");
    CHECK(equivalent(e, RationalExpr(DiffPoly::tau(1) - DiffPoly::ell(1).pow(2), DiffPoly::s())));
    CHECK_THROWS_AS(parse("1/u"), ParseError);
    CHECK_THROWS_AS(parse_expression("u/0"), ParseError);
  }

  TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse("u^^2"), ParseError);
    try {
      parse("u^^2");
    } catch (const ParseError& e) {
      CHECK(e.position() == 2);
      CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("u +"), ParseError);
    CHECK_THROWS_AS(parse("(u"), ParseError);
    CHECK_THROWS_AS(parse("x"), ParseError);
    CHECK_THROWS_AS(parse("l0"), ParseError);
    CHECK_THROWS_AS(parse(R"({"terms":[{"s":0,"jets":{"x":1},"coef":"1"}]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"terms":[{"s":0,"jets":{},"coef":1}]})"), ParseError);
    CHECK_THROWS_AS(parse("{not json"), ParseError);
  }

  TEST_CASE("json round trip on 500 random polynomials") {
    PolyGen gen(500);
    PolyGen::Shape shape;
    shape.max_fn = 2;
    shape.params = true;
    shape.integrals = true;
    for (int i = 0; i < 500; ++i) {
      const DiffPoly p = gen.poly(shape);
      REQUIRE(parse(serialize(p, Format::Json)) == p);
      REQUIRE(diffpoly_from_json(to_json(p)) == p);
    }
  }

  TEST_CASE("ascii round trip") {
    PolyGen gen(11);
    PolyGen::Shape shape;
    shape.max_fn = 2;
    shape.params = true;
    shape.integrals = true;
    for (int i = 0; i < 300; ++i) {
      const DiffPoly p = gen.poly(shape);
      REQUIRE(parse(to_ascii(p)) == p);
    }
  }

  TEST_CASE("serialization decides equality") {
    PolyGen gen(12);
    for (int i = 0; i < 300; ++i) {
      const DiffPoly p = gen.poly();
      const DiffPoly q = (i % 2 == 0) ? p + DiffPoly::u() - DiffPoly::u() : gen.poly();
      REQUIRE((p - q).is_zero() == (serialize(p, Format::Json) == serialize(q, Format::Json)));
    }
  }

  TEST_CASE("format names") {
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("latex") == Format::Latex);
    CHECK_THROWS_AS(parse_format("xml"), Error);
  }
}
