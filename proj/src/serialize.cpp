#include "lh/serialize.hpp"

#include <cctype>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

using nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "latex") return Format::Latex;
  if (name == "ascii") return Format::Ascii;
  throw Error("unknown format '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- ASCII

namespace {

std::string function_ascii(int fn) { return fn == 0 ? "u" : "l" + std::to_string(fn); }

std::string monomial_ascii(const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& f) {
    if (!out.empty()) out += "*";
    out += f;
  };
  if (m.s_power() > 0) append(m.s_power() == 1 ? "s" : "s^" + std::to_string(m.s_power()));
  for (const auto& [v, e] : m.factors()) append(e == 1 ? to_ascii(v) : to_ascii(v) + "^" + std::to_string(e));
  return out;
}

std::string function_latex(int fn) { return fn == 0 ? "u" : "\\ell_{" + std::to_string(fn) + "}"; }

bool needs_parens_for_power(const Var& v) {
  return v.kind() == Var::Kind::Integral || (v.is_jet() && v.order() > 0 && v.order() < 3);
}

std::string monomial_latex(const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& f) {
    if (!out.empty()) out += " ";
    out += f;
  };
  for (const auto& [v, e] : m.factors()) {
    if (v.kind() == Var::Kind::Param) append(e == 1 ? to_latex(v) : to_latex(v) + "^{" + std::to_string(e) + "}");
  }
  if (m.s_power() > 0) append(m.s_power() == 1 ? "s" : "s^{" + std::to_string(m.s_power()) + "}");
  for (const auto& [v, e] : m.factors()) {
    if (v.kind() == Var::Kind::Param) continue;
    std::string base = to_latex(v);
    if (e == 1)
      append(base);
    else if (needs_parens_for_power(v))
      append("\\left(" + base + "\\right)^{" + std::to_string(e) + "}");
    else
      append(base + "^{" + std::to_string(e) + "}");
  }
  return out;
}

std::string rational_latex(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

}  // namespace

std::string to_ascii(const Var& v) {
  switch (v.kind()) {
    case Var::Kind::Jet:
      if (v.order() < 3) return function_ascii(v.fn()) + std::string(static_cast<std::size_t>(v.order()), '\'');
      return "D" + std::to_string(v.order()) + "(" + function_ascii(v.fn()) + ")";
    case Var::Kind::Param:
      return "tau" + std::to_string(v.param_index());
    case Var::Kind::Integral:
      return "int(" + monomial_ascii(v.integrand()) + ")";
  }
  return {};
}

std::string to_latex(const Var& v) {
  switch (v.kind()) {
    case Var::Kind::Jet:
      if (v.order() < 3) return function_latex(v.fn()) + std::string(static_cast<std::size_t>(v.order()), '\'');
      return function_latex(v.fn()) + "^{(" + std::to_string(v.order()) + ")}";
    case Var::Kind::Param:
      return "\\tau_{" + std::to_string(v.param_index()) + "}";
    case Var::Kind::Integral: {
      std::string body = monomial_latex(v.integrand());
      return "\\int " + (body.empty() ? std::string("1") : body) + "\\,ds";
    }
  }
  return {};
}

std::string to_ascii(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_ascii(m);
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

std::string to_latex(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_latex(m);
    if (mono.empty()) {
      out += rational_latex(mag);
    } else {
      if (mag != 1) out += rational_latex(mag) + " ";
      out += mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

ordered_json monomial_json(const Monomial& m) {
  ordered_json t = ordered_json::object();
  t["s"] = m.s_power();
  ordered_json jets = ordered_json::object();
  ordered_json params = ordered_json::object();
  ordered_json integrals = ordered_json::array();
  for (const auto& [v, e] : m.factors()) {
    switch (v.kind()) {
      case Var::Kind::Jet: {
        std::string key = v.fn() == 0 ? std::to_string(v.order())
                                      : "l" + std::to_string(v.fn()) + ":" + std::to_string(v.order());
        jets[key] = e;
        break;
      }
      case Var::Kind::Param:
        params["tau" + std::to_string(v.param_index())] = e;
        break;
      case Var::Kind::Integral:
        integrals.push_back(ordered_json{{"of", monomial_json(v.integrand())}, {"exp", e}});
        break;
    }
  }
  t["jets"] = jets;
  if (!params.empty()) t["params"] = params;
  if (!integrals.empty()) t["integrals"] = integrals;
  return t;
}

int json_int(const ordered_json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError("expected integer for " + what, 0, "integer");
  return j.get<int>();
}

int parse_small_int(std::string_view text, const std::string& what) {
  if (text.empty()) throw ParseError("empty index in " + what, 0, "digit");
  int v = 0;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad index in " + what, 0, "digit");
    v = v * 10 + (ch - '0');
  }
  return v;
}

Monomial monomial_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ParseError("term must be an object", 0, "object");
  if (!j.contains("s") || !j.contains("jets")) throw ParseError("term lacks 's' or 'jets'", 0, "\"s\" and \"jets\"");
  int sp = json_int(j["s"], "s");
  if (sp < 0) throw ParseError("negative s power", 0, "non-negative integer");
  Monomial m = Monomial::s(sp);
  auto positive = [](int e, const std::string& what) {
    if (e <= 0) throw ParseError("non-positive exponent for " + what, 0, "positive integer");
    return e;
  };
  if (!j["jets"].is_object()) throw ParseError("'jets' must be an object", 0, "object");
  for (const auto& [key, val] : j["jets"].items()) {
    int fn = 0, order = 0;
    if (!key.empty() && key[0] == 'l') {
      auto colon = key.find(':');
      if (colon == std::string::npos) throw ParseError("jet key '" + key + "' lacks ':'", 0, "l<j>:<order>");
      fn = parse_small_int(std::string_view(key).substr(1, colon - 1), "jet key");
      order = parse_small_int(std::string_view(key).substr(colon + 1), "jet key");
      if (fn < 1) throw ParseError("l-index must be positive", 0, "l<j> with j >= 1");
    } else {
      order = parse_small_int(key, "jet key");
    }
    m = m * Monomial::of(Var::jet(fn, order), positive(json_int(val, key), key));
  }
  if (j.contains("params")) {
    for (const auto& [key, val] : j["params"].items()) {
      if (key.rfind("tau", 0) != 0) throw ParseError("unknown parameter '" + key + "'", 0, "tau<p>");
      int p = parse_small_int(std::string_view(key).substr(3), "parameter");
      m = m * Monomial::of(Var::tau(p), positive(json_int(val, key), key));
    }
  }
  if (j.contains("integrals")) {
    for (const auto& item : j["integrals"]) {
      if (!item.contains("of") || !item.contains("exp")) throw ParseError("integral lacks 'of'/'exp'", 0, "\"of\" and \"exp\"");
      m = m * Monomial::of(Var::integral(monomial_from_json(item["of"])), positive(json_int(item["exp"], "exp"), "integral"));
    }
  }
  return m;
}

}  // namespace

ordered_json to_json(const DiffPoly& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    ordered_json t = monomial_json(m);
    t["coef"] = c.get_str();
    terms.push_back(std::move(t));
  }
  return ordered_json{{"terms", terms}};
}

DiffPoly diffpoly_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("expression JSON must be an object with a 'terms' array", 0, "{\"terms\":[...]}");
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& t : j["terms"]) {
    if (!t.contains("coef") || !t["coef"].is_string()) throw ParseError("term lacks string 'coef'", 0, "\"coef\"");
    terms.emplace_back(monomial_from_json(t), parse_rational(t["coef"].get<std::string>()));
  }
  return DiffPoly::from_terms(terms);
}

std::string serialize(const DiffPoly& p, Format format) {
  switch (format) {
    case Format::Json:
      return to_json(p).dump();
    case Format::Latex:
      return to_latex(p);
    case Format::Ascii:
      return to_ascii(p);
  }
  return {};
}

std::string to_ascii(const RationalExpr& e) {
  if (e.is_polynomial()) return to_ascii(e.as_polynomial());
  return "(" + to_ascii(e.numerator()) + ")/(" + to_ascii(e.denominator()) + ")";
}

std::string to_latex(const RationalExpr& e) {
  if (e.is_polynomial()) return to_latex(e.as_polynomial());
  return "\\frac{" + to_latex(e.numerator()) + "}{" + to_latex(e.denominator()) + "}";
}

ordered_json to_json(const RationalExpr& e) {
  return ordered_json{{"numerator", to_json(e.numerator())}, {"denominator", to_json(e.denominator())}};
}

std::string serialize(const RationalExpr& e, Format format) {
  switch (format) {
    case Format::Json:
      return to_json(e).dump();
    case Format::Latex:
      return to_latex(e);
    case Format::Ascii:
      return to_ascii(e);
  }
  return {};
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalExpr parse_all() {
    RationalExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'", "operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError(what, pos_, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail("missing '" + std::string(1, ch) + "'", std::string("'") + ch + "'");
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return text_.substr(pos_, w.size()) == w;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", "integer");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) fail("integer too large", "integer below 10^9");
    return std::stoi(digits);
  }

  RationalExpr expr() {
    RationalExpr acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RationalExpr term() {
    RationalExpr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalExpr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at, "nonzero divisor");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalExpr factor() {
    if (accept('-')) return -factor();
    return power();
  }

  RationalExpr power() {
    RationalExpr base = primary();
    if (accept('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a non-negative integer", "integer exponent");
      int e = integer();
      RationalExpr r(DiffPoly(1));
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  int primes() {
    int n = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      ++n;
    }
    return n;
  }

  int function_name() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'u') {
      ++pos_;
      return 0;
    }
    if (pos_ < text_.size() && text_[pos_] == 'l') {
      ++pos_;
      int j = integer();
      if (j < 1) fail("l-index must be positive", "l<j> with j >= 1");
      return j;
    }
    fail("expected a function name", "'u' or 'l<j>'");
  }

  RationalExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", "operand");
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return DiffPoly(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (ch == '(') {
      ++pos_;
      RationalExpr e = expr();
      expect(')');
      return e;
    }
    if (peek_word("int(")) {
      pos_ += 4;
      std::size_t at = pos_;
      RationalExpr e = expr();
      expect(')');
      if (!e.is_polynomial()) throw ParseError("integrand must be a polynomial", at, "polynomial");
      const DiffPoly integrand = e.as_polynomial();
      DiffPoly result;
      for (const auto& [m, c] : integrand.terms()) {
        if (m.is_unit()) throw ParseError("integrand has a constant term", at, "non-constant monomials");
        result += DiffPoly::var(Var::integral(m)).scaled(c);
      }
      return result;
    }
    if (peek_word("tau")) {
      pos_ += 3;
      return DiffPoly::tau(integer());
    }
    if (ch == 'D') {
      ++pos_;
      int order = integer();
      expect('(');
      int fn = function_name();
      expect(')');
      return DiffPoly::var(Var::jet(fn, order));
    }
    if (ch == 's') {
      ++pos_;
      return DiffPoly::s();
    }
    if (ch == 'u' || ch == 'l') {
      int fn = function_name();
      int order = primes();
      return DiffPoly::var(Var::jet(fn, order));
    }
    fail("unexpected character '" + std::string(1, ch) + "'", "number, 's', 'u', 'l<j>', 'tau<p>', 'D<n>(', 'int(' or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_expression(std::string_view text) { return Parser(text).parse_all(); }

DiffPoly parse(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte, "JSON");
    }
    return diffpoly_from_json(j);
  }
  RationalExpr e = parse_expression(text);
  if (!e.is_polynomial()) throw ParseError("expression is not a polynomial", 0, "constant divisors only");
  return e.as_polynomial();
}

}  // namespace lh
