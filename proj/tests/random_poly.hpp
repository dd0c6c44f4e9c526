#pragma once

#include <random>

#include "lh/diffpoly.hpp"

namespace lh::testing {

// Small random elements of the ring, reproducible from the engine seed.
class PolyGen {
 public:
  explicit PolyGen(unsigned seed) : rng_(seed) {}

  struct Shape {
    int max_terms = 4;
    int max_degree = 4;
    int max_order = 4;
    int max_s = 2;
    int max_fn = 0;      // 0: u only; j: also l_1 .. l_j
    bool params = false;
    bool integrals = false;
  };

  Rational coefficient() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    long n = 0;
    while (n == 0) n = num(rng_);
    return make_rational(n, den(rng_));
  }

  Monomial monomial(const Shape& sh) {
    std::uniform_int_distribution<int> deg(0, sh.max_degree), ord(0, sh.max_order), sp(0, sh.max_s),
        fn(0, sh.max_fn), coin(0, 5);
    Monomial m = Monomial::s(sp(rng_));
    const int d = deg(rng_);
    for (int i = 0; i < d; ++i) m = m * Monomial::of(Var::jet(fn(rng_), ord(rng_)));
    if (sh.params && coin(rng_) == 0) m = m * Monomial::of(Var::tau(fn(rng_)));
    if (sh.integrals && coin(rng_) == 0)
      m = m * Monomial::of(Var::integral(Monomial::of(Var::u(ord(rng_)), 1 + coin(rng_) % 2)));
    return m;
  }

  DiffPoly poly(const Shape& sh) {
    std::uniform_int_distribution<int> count(0, sh.max_terms);
    std::vector<std::pair<Monomial, Rational>> terms;
    const int n = count(rng_);
    for (int i = 0; i < n; ++i) terms.emplace_back(monomial(sh), coefficient());
    return DiffPoly::from_terms(terms);
  }

  DiffPoly poly() { return poly(Shape{}); }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace lh::testing
