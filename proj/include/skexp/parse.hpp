#ifndef SKEXP_PARSE_HPP
#define SKEXP_PARSE_HPP

#include "skexp/rational.hpp"
#include "skexp/term.hpp"

#include <string>
#include <string_view>

namespace skexp {

/// Parses the bracket notation [[j1,l1],[j2,l2],...] into an untruncated
/// monomial. One redundant outer bracket level is tolerated, so
/// [[[1,2],[1,3]]] works too. Pairs must satisfy 1 <= first < second and the
/// list must be nonempty. Throws ParseError carrying a 1-based column.
Monomial parse_monomial(std::string_view text);

/// The same notation back; canonical factor order, untruncated factors only.
std::string render_monomial(const Monomial& mono);

/// Exact rational from "3/4", "-1/2", "0.25", "2" forms.
Rational parse_rational(std::string_view text);

/// Decimal rendering of an exact rational, rounded half away from zero at
/// `digits` fractional places, trailing zeros trimmed.
std::string decimal_string(const Rational& value, int digits = 12);

} // namespace skexp

#endif
