#pragma once

// Text forms of ring elements.
//
// ASCII grammar (whitespace ignored):
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := ['-'] power
//   power   := primary ['^' integer]
//   primary := integer | 's' | jet | 'tau' integer | 'int(' expr ')' | '(' expr ')'
//   jet     := ('u' | 'l' integer) "'"*  |  'D' integer '(' ('u' | 'l' integer) ')'
//
// JSON: {"terms":[{"s":0,"jets":{"2":1},"coef":"1"}, ...]} with jet keys
// "<order>" for u and "l<j>:<order>" for l_j; optional "params"
// ({"tau0":1}) and "integrals" ([{"of":{...monomial...},"exp":1}]).

#include <json.hpp>
#include <string>
#include <string_view>

#include "lh/diffpoly.hpp"
#include "lh/rational_expr.hpp"

namespace lh {

enum class Format { Json, Latex, Ascii };

/// Parses "json", "latex" or "ascii"; throws Error otherwise.
Format parse_format(std::string_view name);

std::string to_ascii(const Var& v);
std::string to_latex(const Var& v);

std::string to_ascii(const DiffPoly& p);
std::string to_latex(const DiffPoly& p);
nlohmann::ordered_json to_json(const DiffPoly& p);
std::string serialize(const DiffPoly& p, Format format);

std::string to_ascii(const RationalExpr& e);
std::string to_latex(const RationalExpr& e);
nlohmann::ordered_json to_json(const RationalExpr& e);
std::string serialize(const RationalExpr& e, Format format);

DiffPoly diffpoly_from_json(const nlohmann::ordered_json& j);

/// Parses JSON (text starting with '{') or the ASCII grammar; the result
/// must be a polynomial. Throws ParseError.
DiffPoly parse(std::string_view text);

/// ASCII grammar with division by arbitrary expressions.
RationalExpr parse_expression(std::string_view text);

}  // namespace lh
