#pragma once

#include "smithdiv/arithfn.hpp"

#include <string>

namespace smithdiv {

/// Parses the function DSL:
///   expr := "mu" | "delta" | "one" | "id"
///         | "xi(" num ")" | "jordan(" num ")" | "table(" path ")"
///         | "conv(" expr "," expr ")" | "cpow(" expr "," int ")"
///         | "ppow(" expr "," num ")" | "mupow(" int ")"
/// "one" is xi(0), "id" is xi(1), "mupow(d)" is cpow(mu, d). Whitespace
/// insensitive; the whole input must be consumed. Throws ParseError with a
/// 1-based byte offset and the expected-token set on any syntax error.
ArithFn parse_fn_expr(const std::string& text);

} // namespace smithdiv
