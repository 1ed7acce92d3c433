#pragma once

// Plain-text syntax for jet polynomials, PDEs and point vector fields.
//
//   expr    := sum
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*        division only by constants
//   unary   := ('+' | '-') unary | power
//   power   := atom (('^' | '**') integer)?
//   atom    := number | name | '(' sum ')'
//   number  := digits ('.' digits)?              read exactly as a rational
//   name    := t | x | u | u_<t...x...> | d_t | d_x | d_u | parameter
//
// u_ indices may come in any order (u_xt == u_tx). Any other identifier is a
// symbolic parameter (eps, c1, ...). d_t, d_x, d_u are only legal in vector
// fields, where every term must carry exactly one of them to the first power.
//
//   pde:       sum ('=' sum)?                    Delta = lhs - rhs
//   generator: (name '=')? sum                   e.g. v = x*d_x + 3*t*d_t - 2*u*d_u
//
// Newlines are whitespace; errors are Error(Parse) with "line L, column C: ...".

#include "geoflow/jet.hpp"

#include <string_view>

namespace geoflow::jet {

JetPoly parse_poly(std::string_view text);
PdeForm parse_pde(std::string_view text);
PointVectorField parse_generator(std::string_view text);

}  // namespace geoflow::jet
