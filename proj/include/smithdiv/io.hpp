#pragma once

#include "smithdiv/arithfn.hpp"
#include "smithdiv/matrix.hpp"
#include "smithdiv/sets.hpp"

#include <string>

namespace smithdiv {

/// Loads a table function from JSON:
///   {"values": {"<m>": <real>, ...}, "default": <real>,
///    "multiplicative": <bool, optional>}
/// Keys must be decimal positive integers; unknown top-level keys rejected.
ArithFn load_table_fn(const std::string& path);
ArithFn parse_table_fn_json(const std::string& json_text, const std::string& source_path = {});

/// Matrix serialization. Reals are printed with 17 significant digits so the
/// round trip through the matching reader is bit-exact.
std::string emit_matrix_csv(const SymMatrix& a);
std::string emit_matrix_json(const SymMatrix& a, const std::string& kind = {},
                             const std::vector<std::uint64_t>& set = {},
                             const std::string& fn = {});

SymMatrix read_matrix_csv(const std::string& text);
SymMatrix read_matrix_json(const std::string& text);

/// Reads a matrix file, dispatching on extension (.json vs anything else = CSV).
SymMatrix read_matrix_file(const std::string& path);

/// Set parsing: "6,10,15" (CLI) and JSON array of integers (file).
IntegerSet parse_set_csv(const std::string& text);
IntegerSet load_set_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace smithdiv
