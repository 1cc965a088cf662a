#include "smithdiv/io.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/integers.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace smithdiv {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t parse_positive_int(const std::string& s, const std::string& what) {
    if (s.empty()) throw IoError(what + ": empty integer");
    for (char c : s) {
        if (c < '0' || c > '9') throw IoError(what + ": '" + s + "' is not a positive integer");
    }
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size() || v == 0) {
        throw IoError(what + ": '" + s + "' is not a positive integer");
    }
    return v;
}

double parse_real(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) {
        throw IoError(what + ": '" + s + "' is not a number");
    }
    return v;
}

} // namespace

ArithFn parse_table_fn_json(const std::string& json_text, const std::string& source_path) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw IoError("table function: invalid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw IoError("table function: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "values" && key != "default" && key != "multiplicative") {
            throw IoError("table function: unknown key '" + key + "'");
        }
    }
    if (!doc.contains("values") || !doc["values"].is_object()) {
        throw IoError("table function: missing 'values' object");
    }
    if (!doc.contains("default") || !doc["default"].is_number()) {
        throw IoError("table function: missing numeric 'default'");
    }
    std::map<std::uint64_t, double> values;
    for (const auto& [key, value] : doc["values"].items()) {
        if (!value.is_number()) {
            throw IoError("table function: value for key '" + key + "' is not a number");
        }
        values[parse_positive_int(key, "table function key")] = value.get<double>();
    }
    bool mult = false;
    if (doc.contains("multiplicative")) {
        if (!doc["multiplicative"].is_boolean()) {
            throw IoError("table function: 'multiplicative' must be a boolean");
        }
        mult = doc["multiplicative"].get<bool>();
    }
    return ArithFn::table(std::move(values), doc["default"].get<double>(), mult, source_path);
}

ArithFn load_table_fn(const std::string& path) {
    return parse_table_fn_json(read_file(path), path);
}

std::string emit_matrix_csv(const SymMatrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j) out += ',';
            out += fmt17(a(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string emit_matrix_json(const SymMatrix& a, const std::string& kind,
                             const std::vector<std::uint64_t>& set, const std::string& fn) {
    // Hand-built so entry formatting stays at exactly 17 significant digits.
    std::string out = "{\n  \"n\": " + std::to_string(a.size());
    if (!kind.empty()) out += ",\n  \"kind\": " + json(kind).dump();
    if (!set.empty()) {
        out += ",\n  \"set\": [";
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(set[i]);
        }
        out += "]";
    }
    if (!fn.empty()) out += ",\n  \"fn\": " + json(fn).dump();
    out += ",\n  \"entries\": [\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += "    [";
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j) out += ", ";
            out += fmt17(a(i, j));
        }
        out += i + 1 < a.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

SymMatrix read_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(parse_real(cell, "matrix csv"));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("matrix csv: empty input");
    std::size_t n = rows.size();
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw IoError("matrix csv: ragged rows (expected square matrix)");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return SymMatrix(n, std::move(entries));
}

SymMatrix read_matrix_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError("matrix json: invalid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
        throw IoError("matrix json: need object with 'n' and 'entries'");
    }
    std::size_t n = doc["n"].get<std::size_t>();
    const auto& rows = doc["entries"];
    if (!rows.is_array() || rows.size() != n) {
        throw IoError("matrix json: 'entries' must be an n-row array");
    }
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw IoError("matrix json: ragged row");
        for (const auto& v : row) {
            if (!v.is_number()) throw IoError("matrix json: non-numeric entry");
            entries.push_back(v.get<double>());
        }
    }
    return SymMatrix(n, std::move(entries));
}

SymMatrix read_matrix_file(const std::string& path) {
    std::string text = read_file(path);
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        return read_matrix_json(text);
    }
    return read_matrix_csv(text);
}

IntegerSet parse_set_csv(const std::string& text) {
    std::vector<std::uint64_t> elems;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        std::size_t b = cell.find_first_not_of(" \t");
        std::size_t e = cell.find_last_not_of(" \t");
        if (b == std::string::npos) throw IoError("set: empty element in '" + text + "'");
        elems.push_back(parse_positive_int(cell.substr(b, e - b + 1), "set element"));
    }
    if (elems.empty()) throw IoError("set: no elements in '" + text + "'");
    return IntegerSet(std::move(elems));
}

IntegerSet load_set_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw IoError("set file: invalid JSON: " + std::string(e.what()));
    }
    if (!doc.is_array()) throw IoError("set file: expected a JSON array of integers");
    std::vector<std::uint64_t> elems;
    for (const auto& v : doc) {
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
            throw IoError("set file: elements must be positive integers");
        }
        elems.push_back(v.get<std::uint64_t>());
    }
    return IntegerSet(std::move(elems));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

} // namespace smithdiv
