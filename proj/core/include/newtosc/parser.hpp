#pragma once

#include <string>
#include <vector>

#include "newtosc/polynomial.hpp"

namespace newtosc {

// Parses an expression over a fixed variable list. Supported syntax:
// + - * / ^ ( ), nonnegative integer literals, juxtaposition as
// multiplication, rational constants written as quotients (3/2). Division
// requires a nonzero constant divisor; exponents are nonnegative integers.
// Unknown identifiers raise ParseError.
Poly parse_polynomial(const std::string& src,
                      const std::vector<std::string>& vars);

struct ParsedPoly {
  Poly poly;
  std::vector<std::string> vars;
};

// Same grammar, with the variable list inferred from the identifiers that
// appear: subsets of {x,y,z,w} keep that conventional order, names of the
// form x<k> sort by index, anything else keeps first appearance order.
ParsedPoly parse_polynomial_auto(const std::string& src);

}  // namespace newtosc
