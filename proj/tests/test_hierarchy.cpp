#include <doctest.h>

#include "lh/errors.hpp"
#include "lh/hierarchy.hpp"
#include "lh/serialize.hpp"

using namespace lh;

namespace {

const char* const kExample1 = "l1'' - (l1'^2/l1 - l1'/s - l1^2/s - tau0/l1 + tau1/s)";
const char* const kExample2First =
    "tau1/(2*l1*l2) - tau0/l2^2 + l2'^2/l2^2 - l1'*l2'/(l1*l2) + l1''/l1 - l2''/l2 - l2/(2*l1)";
const char* const kExample2Second =
    "l1^2*l2'^2/l2^2 - l1'^2 + s*l2'^2/l2 - l2' - tau0*l1^2/l2^2 - s*tau0/l2 - tau2"
    " - (2*l1^2*l2''/l2 - 2*l1*l1'' + s*l2'' + 2*l2*l1)";

RationalExpr rx(const char* text) { return parse_expression(text); }

// Replaces u^(i) by the i-th derivative of the hierarchy's u formula.
RationalExpr eliminate_u(const DiffPoly& p, const RationalExpr& u_expr) {
  RationalExpr out(p);
  for (int i = p.max_order_of(0); i >= 0; --i) {
    RationalExpr ui = u_expr;
    for (int k = 0; k < i; ++k) ui = total_derivative(ui);
    out = substitute(out, Var::u(i), ui);
  }
  return out;
}

}  // namespace

TEST_SUITE("hierarchy") {
  TEST_CASE("hierarchy ells carry the boundary data") {
    const auto l = hierarchy_ells(2);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == DiffPoly::s().scaled(make_rational(1, 2)));
    CHECK(l[2] == DiffPoly::ell(2));
    CHECK(l[3].is_zero());
  }

  TEST_CASE("u formula") {
    const HierarchySystem sys = build_p3_system(1);
    const DiffPoly l = DiffPoly::ell(1);
    const RationalExpr expected(-(nth_derivative(l * l, 2) - DiffPoly::ell(1, 1).pow(2).scaled(3) + DiffPoly::tau(0)),
                                (l * l).scaled(4));
    CHECK(equivalent(sys.u_expr, expected));
  }

  TEST_CASE("k = 1 golden: Example 1 up to the factor s") {
    const HierarchySystem sys = build_p3_system(1);
    REQUIRE(sys.equations.size() == 1);
    const RationalExpr display = rx(kExample1);
    const auto mu = monomial_ratio(sys.equation(1), display);
    REQUIRE(mu.has_value());
    CHECK(equivalent(*mu, RationalExpr(DiffPoly::s())));
    CHECK(equation_equivalent(sys.equation(1), RationalExpr(DiffPoly::s()) * display));
    // Clearing denominators gives a polynomial identity.
    CHECK((sys.equation(1) * RationalExpr(DiffPoly::ell(1))).is_polynomial());
    CHECK(sys.cleared[0] == (sys.equation(1) * RationalExpr(sys.multipliers[0])).as_polynomial());
    CHECK(sys.cleared[0].max_order_of(1) == 2);
  }

  TEST_CASE("k = 1 golden is sensitive to tau_1") {
    const HierarchySystem sys = build_p3_system(1);
    const RationalExpr shifted = rx("l1'' - (l1'^2/l1 - l1'/s - l1^2/s - tau0/l1 + (tau1 + 1)/s)");
    CHECK_FALSE(monomial_ratio(sys.equation(1), shifted).has_value());
    CHECK_FALSE(equation_equivalent(sys.equation(1), RationalExpr(DiffPoly::s()) * shifted));
  }

  TEST_CASE("k = 2: first displayed equation") {
    const HierarchySystem sys = build_p3_system(2);
    REQUIRE(sys.equations.size() == 2);
    const auto mu = monomial_ratio(sys.equation(1), rx(kExample2First));
    REQUIRE(mu.has_value());
    CHECK(equivalent(*mu, RationalExpr((DiffPoly::ell(1) * DiffPoly::ell(2)).scaled(-2))));
  }

  TEST_CASE("k = 2: second displayed equation differs in the sign of tau_2") {
    const HierarchySystem sys = build_p3_system(2);
    const RationalExpr display = rx(kExample2Second);
    CHECK_FALSE(monomial_ratio(sys.equation(2), display).has_value());
    const RationalExpr flipped = substitute(display, Var::tau(2), RationalExpr(-DiffPoly::tau(2)));
    const auto mu = monomial_ratio(sys.equation(2), flipped);
    REQUIRE(mu.has_value());
    CHECK(mu->numerator().size() == 1);
    for (int p = 1; p <= 2; ++p) CHECK(sys.cleared[static_cast<std::size_t>(p - 1)].max_jet_order() == 2);
  }

  TEST_CASE("equation_equivalent basics") {
    const RationalExpr e = rx(kExample1);
    const RationalExpr sl = RationalExpr(DiffPoly::s() * DiffPoly::ell(1));
    CHECK(equation_equivalent(e, (sl * e) / sl));
    CHECK(equation_equivalent(e, e));
    CHECK_FALSE(equation_equivalent(e, e + RationalExpr(DiffPoly(1))));
    CHECK_THROWS_AS(RationalExpr(DiffPoly(1), DiffPoly()), ZeroDenominator);
  }

  TEST_CASE("numeric tau values") {
    const HierarchySystem sym = build_p3_system(1);
    const HierarchySystem num = build_p3_system(1, TauParameters::values({make_rational(1), make_rational(2)}));
    RationalExpr fixed = substitute(sym.equation(1), Var::tau(0), RationalExpr(DiffPoly(1)));
    fixed = substitute(fixed, Var::tau(1), RationalExpr(DiffPoly(2)));
    CHECK(equivalent(fixed, num.equation(1)));
    CHECK_THROWS_AS(build_p3_system(2, TauParameters::values({1, 2})), Error);
    CHECK_THROWS_AS(build_p3_system(0), Error);
    CHECK_THROWS_AS(sym.equation(2), IndexOutOfRange);
  }

  TEST_CASE("conserved tau examples") {
    const auto l = hierarchy_ells(1);
    const DiffPoly l1 = DiffPoly::ell(1);
    const DiffPoly om11 = omega(l, 1, 1);
    CHECK(om11 == nth_derivative(l1 * l1, 2) - DiffPoly::ell(1, 1).pow(2).scaled(3) + (DiffPoly::u() * l1 * l1).scaled(4));
    CHECK(conserved_tau(l, 1, 0).expr == -om11);
    CHECK(conserved_tau(l, 1, 1).expr == l1 * l1 - omega(l, 0, 1).scaled(2));
    for (int k = 1; k <= 3; ++k) CHECK(conserved_tau(hierarchy_ells(k), k, 0).expr == -omega(hierarchy_ells(k), k, k));
    CHECK_THROWS_AS(conserved_tau(l, 1, 2), IndexOutOfRange);
  }

  TEST_CASE("tau_0 from the u formula coincides with the p = 0 constant") {
    for (int k = 1; k <= 3; ++k) {
      const HierarchySystem sys = build_p3_system(k);
      const RationalExpr tau0 = eliminate_u(conserved_tau(hierarchy_ells(k), k, 0).expr, sys.u_expr);
      CHECK(equivalent(tau0, RationalExpr(DiffPoly::tau(0))));
    }
  }

  TEST_CASE("recovering the system from the constants of motion") {
    for (int k = 1; k <= 2; ++k) {
      const HierarchySystem sys = build_p3_system(k);
      for (int p = 1; p <= k; ++p) {
        const DiffPoly tau_p = conserved_tau(hierarchy_ells(k), k, p).expr;
        const RationalExpr recovered = eliminate_u(tau_p - DiffPoly::tau(p), sys.u_expr);
        CHECK(equation_equivalent(recovered, sys.equation(p)));
      }
    }
  }

  TEST_CASE("conservation residuals vanish for every seed") {
    const std::vector<SeedCondition> seeds{SeedCondition::standard(), SeedCondition::painleve3(),
                                           SeedCondition::custom(parse("s^2/2"))};
    for (const auto& seed : seeds) {
      const LenardSequence seq = generate(seed, 4, Antiderivatives::Introduce);
      for (int k = 0; k <= 3; ++k)
        for (int p = 0; p <= k; ++p) {
          CHECK(conservation_residual(seq, k, p, ConservedKind::Tau).is_zero());
          CHECK(conservation_residual(seq, k, p, ConservedKind::Sigma).is_zero());
        }
    }
    const std::vector<Rational> c{make_rational(3), make_rational(-1, 2), make_rational(5)};
    const LenardSequence with_constants = generate(SeedCondition::painleve3(), 3, c, Antiderivatives::Introduce);
    CHECK(conservation_residual(with_constants, 2, 1, ConservedKind::Tau).is_zero());
    CHECK(conservation_residual(with_constants, 0, 2, ConservedKind::Sigma).is_zero());
  }

  TEST_CASE("sigma for the standard seed") {
    const LenardSequence seq = generate(SeedCondition::standard(), 5);
    CHECK(conserved_sigma(seq, 0).expr == DiffPoly(make_rational(-1, 4)));
    for (int p = 1; p <= 5; ++p) CHECK(conserved_sigma(seq, p).expr.is_zero());
    // nonzero constants make sigma_1 a nonzero constant
    const LenardSequence shifted = generate(SeedCondition::standard(), 1, std::vector<Rational>{2});
    CHECK(conserved_sigma(shifted, 1).expr == DiffPoly(-2));
  }

  TEST_CASE("monomial_ratio") {
    const RationalExpr a = rx("s*l1^2 + l1");
    const RationalExpr b = rx("s*l1 + 1");
    const auto mu = monomial_ratio(a, b);
    REQUIRE(mu.has_value());
    CHECK(equivalent(*mu, RationalExpr(DiffPoly::ell(1))));
    CHECK_FALSE(monomial_ratio(a, rx("s*l1 + 2")).has_value());
    CHECK(monomial_ratio(RationalExpr(), RationalExpr()).has_value());
  }
}
