#pragma once

#include <string>

#include "algd/ratfunc.hpp"

namespace algd {

// Parse a rational-function literal over the chart variables.
// throws ParseError, UnknownVariable, DivisionByZero
RatFunc parse_ratfunc(const std::string& text, const Context& ctx);

}  // namespace algd
