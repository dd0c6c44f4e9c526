#include <doctest.h>

#include "lh/errors.hpp"
#include "lh/hierarchy.hpp"
#include "lh/laxpair.hpp"

using namespace lh;

namespace {

const DiffPoly s = DiffPoly::s();
const DiffPoly u = DiffPoly::u();

Rational q(long n, long d) { return make_rational(n, d); }

LenardSequence p3(int count) { return generate(SeedCondition::painleve3(), count, Antiderivatives::Introduce); }

}  // namespace

TEST_SUITE("laxpair") {
  TEST_CASE("Laurent arithmetic") {
    const LaurentPoly z = LaurentPoly::z();
    const LaurentPoly zinv = LaurentPoly::monomial(-1, DiffPoly(1));
    CHECK(z * zinv == LaurentPoly(DiffPoly(1)));
    CHECK((z - z).is_zero());
    const LaurentPoly p = LaurentPoly::monomial(-3, u) + LaurentPoly::monomial(2, s);
    CHECK(p.min_degree() == -3);
    CHECK(p.max_degree() == 2);
    CHECK(p.support() == std::vector<int>{-3, 2});
    CHECK(total_derivative(p) == LaurentPoly::monomial(-3, DiffPoly::u(1)) + LaurentPoly::monomial(2, DiffPoly(1)));
    CHECK(nth_derivative(p, 2) == total_derivative(total_derivative(p)));
    CHECK(LaurentPoly::monomial(4, DiffPoly()).is_zero());
  }

  TEST_CASE("b from the hierarchy unknowns") {
    const auto l = hierarchy_ells(1);
    const LaurentPoly b = build_b(l, 1);
    CHECK(b == LaurentPoly::monomial(-2, DiffPoly::ell(1).scaled(q(1, 4))) +
                   LaurentPoly::monomial(-1, s.scaled(q(1, 2))));
    CHECK(build_b(l, 0) == LaurentPoly::monomial(-1, s.scaled(q(1, 2))));
    for (int k = 0; k <= 4; ++k) CHECK(build_b(hierarchy_ells(4), k).coefficients().size() == static_cast<std::size_t>(k + 1));
    CHECK(build_b(hierarchy_ells(3), 3).coefficient(-4) == DiffPoly::ell(3).scaled(q(1, 64)));
    CHECK_THROWS_AS(build_b(l, 3), IndexOutOfRange);
  }

  TEST_CASE("b from a generated sequence") {
    const LenardSequence seq = p3(2);
    const LaurentPoly b = build_b(seq, 1);
    CHECK(b.coefficient(-2) == seq.at(1).scaled(q(1, 4)));
    CHECK(b.coefficient(-1) == s.scaled(q(1, 2)));
  }

  TEST_CASE("a and c") {
    const LaurentPoly b = build_b(hierarchy_ells(1), 1);
    const LaxCoefficients ac = derive_a_c(b, u);
    CHECK(ac.a == LaurentPoly::monomial(-2, DiffPoly::ell(1, 1).scaled(q(-1, 8))) +
                      LaurentPoly::monomial(-1, DiffPoly(q(-1, 4))));
    const LaurentPoly expected_c =
        (LaurentPoly::z() - LaurentPoly(u)) * b - nth_derivative(b, 2).scaled(q(1, 2));
    CHECK(ac.c == expected_c);
    const LaxCoefficients zero = derive_a_c(LaurentPoly(), u);
    CHECK(zero.a.is_zero());
    CHECK(zero.c.is_zero());
  }

  TEST_CASE("compatibility residual vanishes for the painleve III seed") {
    const LenardSequence seq = p3(4);
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      CHECK(compatibility_residual(seq, k).is_zero());
    }
  }

  TEST_CASE("corrupting one entry hits the predicted power") {
    const LenardSequence seq = p3(3);
    std::vector<DiffPoly> ells = seq.ells();
    ells[2] += DiffPoly(1);
    // Only step 2 -> 3 changes: its residual is -2u', carried at z^-3 with weight 4^-3.
    const LaurentPoly r = compatibility_residual(ells, 2);
    CHECK(r.support() == std::vector<int>{-3});
    CHECK(r.coefficient(-3) == DiffPoly::u(1).scaled(q(-1, 32)));

    std::vector<DiffPoly> shifted = seq.ells();
    shifted[2] += u;
    // Both steps touching l_2 change: z^-2 and z^-3.
    const LaurentPoly r2 = compatibility_residual(shifted, 2);
    CHECK(r2.support() == std::vector<int>{-3, -2});
    CHECK(r2.coefficient(-2) == recursion_residual(shifted, 1).scaled(q(1, 16)));
    CHECK(r2.coefficient(-3) == recursion_residual(shifted, 2).scaled(q(1, 64)));

    std::vector<DiffPoly> first = seq.ells();
    first[1] += DiffPoly(1);
    const LaurentPoly r1 = compatibility_residual(first, 1);
    CHECK(r1.support() == std::vector<int>{-2});
  }

  TEST_CASE("standard seed cannot balance the constant term") {
    const LenardSequence seq = generate(SeedCondition::standard(), 3);
    CHECK_THROWS_AS(compatibility_residual(seq, 1), SeedMismatch);
    CHECK_THROWS_AS(compatibility_residual(seq, 0), SeedMismatch);
  }

  TEST_CASE("Lax matrices") {
    const LenardSequence seq = p3(3);
    for (int k = 0; k <= 2; ++k) {
      const LaxMatrices lax = build_lax_matrices(seq, k, u);
      CHECK(trace(lax.A).is_zero());
      CHECK(lax.A[0][0] == lax.a);
      CHECK(lax.A[1][1] == -lax.a);
      CHECK(lax.A[0][1] == lax.b);
      CHECK(lax.A[1][0] == lax.c);
      CHECK(lax.B[0][0].is_zero());
      CHECK(lax.B[1][1].is_zero());
      CHECK(lax.B[0][1] == LaurentPoly(DiffPoly(1)));
      CHECK(lax.B[1][0] == LaurentPoly::z() - LaurentPoly(u));
      CHECK(aceqn_residual(lax).is_zero());
    }
    const LaxMatrices lax = build_lax_matrices(p3(4), 3, u);
    CHECK(aceqn_residual(lax).is_zero());
    // A B and B A differ, so the pair is not trivially commuting.
    CHECK_FALSE((lax.A * lax.B)[0][0] == (lax.B * lax.A)[0][0]);
  }

  TEST_CASE("coefficient relation fails together with the recursion") {
    std::vector<DiffPoly> ells = p3(3).ells();
    ells[2] += u;
    const LaxMatrices lax = build_lax_matrices(ells, 2, u);
    CHECK_FALSE(aceqn_residual(lax).is_zero());
    CHECK_FALSE(compatibility_residual(ells, 2).is_zero());
  }
}
