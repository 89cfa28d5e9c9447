#pragma once

#include <string>

#include "dq/hochschild.hpp"

namespace dq {

// Operator text form, one term per line:
//   <coeff> | <monomial> | (a_1,...,a_d) | ... one parenthesis group per slot
// where <coeff> is a rational (or value~sigma for measured operators) and
// <monomial> uses the polynomial syntax ("1" for the empty monomial).
std::string to_text(const OpQ& op);
std::string to_text(const OpM& op);
OpQ parse_op(const std::string& s, int dim, int arity);

std::string to_string(const Rat& r);

}  // namespace dq
