#include "lh/rational.hpp"

#include <cctype>

#include "lh/errors.hpp"

namespace lh {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  std::string digits;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    if (text[i] == '-') digits.push_back('-');
    ++i;
  }
  auto read_int = [&](std::string& out) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
      ++i;
    }
    if (i == start) throw ParseError("malformed rational '" + std::string(text) + "'", i, "digit");
  };
  read_int(digits);
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den.clear();
    read_int(den);
  }
  if (i != text.size()) throw ParseError("trailing characters in rational", i, "end of number");
  mpz_class n(digits), d(den);
  if (d == 0) throw ParseError("zero denominator in rational", i, "nonzero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational pow4(int e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  Rational r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

}  // namespace lh
