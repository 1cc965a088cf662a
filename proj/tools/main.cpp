#include "smithdiv/arithfn.hpp"
#include "smithdiv/errors.hpp"
#include "smithdiv/harness.hpp"
#include "smithdiv/io.hpp"
#include "smithdiv/matrix.hpp"
#include "smithdiv/parser.hpp"
#include "smithdiv/sets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

using namespace smithdiv;
using nlohmann::json;

namespace {

// Exit codes: 0 success/pass, 1 negative mathematical verdict,
// 2 usage error, 3 numerical/bound error.
constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    std::string set_csv;
    std::string set_file;
    std::string fn_expr;
    std::string kind = "gcd";
    std::string in_path;
    double hpow = 1.0;
    double tol = 1e-9;
    std::string out_path;
    std::string format = "json";
};

IntegerSet resolve_set(const CommonOpts& o) {
    if (!o.set_csv.empty()) return parse_set_csv(o.set_csv);
    if (!o.set_file.empty()) return load_set_file(o.set_file);
    throw IoError("no set given: use --set or --set-file");
}

ArithFn resolve_fn(const CommonOpts& o) {
    if (o.fn_expr.empty()) throw IoError("no function given: use --fn");
    return parse_fn_expr(o.fn_expr);
}

MatrixKind resolve_kind(const CommonOpts& o) {
    auto k = matrix_kind_from_string(o.kind);
    if (!k) throw IoError("unknown matrix kind '" + o.kind + "' (gcd|rlcm|ratio)");
    return *k;
}

SymMatrix resolve_matrix(const CommonOpts& o) {
    if (!o.in_path.empty()) return read_matrix_file(o.in_path);
    SymMatrix a = build_matrix(resolve_fn(o), resolve_set(o), resolve_kind(o));
    return o.hpow == 1.0 ? a : hadamard_power(a, o.hpow);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        write_file(o.out_path, text);
    }
}

json verdict_json(const PsdVerdict& v) {
    return {{"is_psd", v.is_psd},
            {"min_eigenvalue", v.min_eigenvalue},
            {"tolerance", v.tolerance},
            {"method", v.method}};
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_matrix_source) {
    cmd->add_option("--set", o.set_csv, "Set as comma-separated integers, e.g. 6,10,15");
    cmd->add_option("--set-file", o.set_file, "Set as a JSON array file");
    cmd->add_option("--fn", o.fn_expr, "Function expression, e.g. conv(xi(1), mu)");
    cmd->add_option("--tol", o.tol, "Tolerance factor (default 1e-9)");
    cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
    if (with_matrix_source) {
        cmd->add_option("--kind", o.kind, "Matrix kind: gcd|rlcm|ratio (default gcd)");
        cmd->add_option("--in", o.in_path, "Read the matrix from a CSV/JSON file");
        cmd->add_option("--hpow", o.hpow, "Hadamard power applied to the built matrix");
    }
}

GridParams parse_grid(const std::string& spec, double tol) {
    GridParams g;
    g.tol = tol;
    if (spec.empty()) return g;
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0 || hi < lo) {
        throw IoError("bad --grid '" + spec + "', expected lo:hi:step");
    }
    g.lo = lo;
    g.hi = hi;
    g.step = step;
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smith matrices from arithmetical functions: build, test "
                 "positive semi-definiteness and infinite divisibility, and "
                 "verify the underlying identities"};
    app.require_subcommand(1);

    CommonOpts o;
    bool strict = false;
    std::vector<std::uint64_t> eval_points;
    std::string grid_spec;
    std::string mode = "probe";
    double minr_lo = 0.0, minr_hi = 1.0, minr_eps = 1e-6;
    std::string statement = "all";

    auto* c_eval = app.add_subcommand("eval", "Evaluate a function at given points");
    add_common(c_eval, o, false);
    c_eval->add_option("--m", eval_points, "Evaluation points (repeatable)")->required();

    auto* c_class = app.add_subcommand("classcheck", "Test C_S / C~_S membership");
    add_common(c_class, o, false);
    c_class->add_flag("--strict", strict, "Require (f*mu)(d) > 0 (class C~_S)");

    auto* c_alpha = app.add_subcommand("alpha", "Alpha vector of f on S");
    add_common(c_alpha, o, false);

    auto* c_matrix = app.add_subcommand("matrix", "Build and emit a matrix");
    add_common(c_matrix, o, true);
    c_matrix->add_option("--format", o.format, "csv|json (default json)");

    auto* c_psd = app.add_subcommand("psd", "Positive semi-definiteness verdict");
    add_common(c_psd, o, true);

    auto* c_infdiv = app.add_subcommand("infdiv", "Infinite divisibility verdict");
    add_common(c_infdiv, o, true);
    c_infdiv->add_option("--mode", mode, "exact|probe (default probe)");
    c_infdiv->add_option("--grid", grid_spec, "Probe grid lo:hi:step (default 0:4:0.05)");

    auto* c_minr = app.add_subcommand("minr", "Least r with A^(o r) PSD, by bisection");
    add_common(c_minr, o, true);
    c_minr->add_option("--lo", minr_lo, "Bracket lower end (default 0)");
    c_minr->add_option("--hi", minr_hi, "Bracket upper end (default 1)");
    c_minr->add_option("--eps", minr_eps, "Bisection width (default 1e-6)");

    auto* c_verify = app.add_subcommand("verify", "Run the statement verification suite");
    c_verify->add_option("--statement", statement,
                         "Statement id (smith, eq1, eq2, lemma21, lemma22, lemma23, eq5, "
                         "thm21, thm22, thm23, remark, ex31, ex32, ex33) or 'all'");
    c_verify->add_option("--format", o.format, "json|text (default json)");
    c_verify->add_option("--out", o.out_path, "Write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c_eval) {
            ArithFn f = resolve_fn(o);
            json values = json::object();
            for (std::uint64_t m : eval_points) values[std::to_string(m)] = f(m);
            emit(o, json{{"fn", f.to_string()}, {"values", values}}.dump(2) + "\n");
            return kExitOk;
        }

        if (*c_class) {
            ArithFn f = resolve_fn(o);
            IntegerSet s = resolve_set(o);
            ClassReport r = class_membership(f, s, strict, o.tol);
            json viol = json::array();
            for (const auto& [d, v] : r.violations) viol.push_back({{"d", d}, {"value", v}});
            emit(o, json{{"class", strict ? "C~_S" : "C_S"},
                         {"member", r.member},
                         {"checked", r.checked},
                         {"tolerance", r.tolerance},
                         {"violations", viol}}
                         .dump(2) +
                     "\n");
            return r.member ? kExitOk : kExitNegative;
        }

        if (*c_alpha) {
            ArithFn f = resolve_fn(o);
            IntegerSet s = resolve_set(o);
            AlphaVector av = alpha_vector(f, s);
            json entries = json::array();
            for (const auto& e : av.entries) {
                entries.push_back({{"element", e.element},
                                   {"alpha", e.alpha},
                                   {"contributing_divisors", e.contributing_divisors}});
            }
            emit(o, json{{"alpha", entries}, {"product", av.product()}}.dump(2) + "\n");
            return kExitOk;
        }

        if (*c_matrix) {
            IntegerSet s = resolve_set(o);
            ArithFn f = resolve_fn(o);
            SymMatrix a = build_matrix(f, s, resolve_kind(o));
            if (o.hpow != 1.0) a = hadamard_power(a, o.hpow);
            if (o.format == "csv") {
                emit(o, emit_matrix_csv(a));
            } else if (o.format == "json") {
                emit(o, emit_matrix_json(a, o.kind, s.elements(), f.to_string()));
            } else {
                throw IoError("unknown --format '" + o.format + "' (csv|json)");
            }
            return kExitOk;
        }

        if (*c_psd) {
            SymMatrix a = resolve_matrix(o);
            PsdVerdict v = psd_check(a, o.tol * static_cast<double>(a.size()));
            emit(o, verdict_json(v).dump(2) + "\n");
            return v.is_psd ? kExitOk : kExitNegative;
        }

        if (*c_infdiv) {
            SymMatrix a = resolve_matrix(o);
            InfDivMode m;
            if (mode == "exact") {
                m = InfDivMode::exact_log;
            } else if (mode == "probe") {
                m = InfDivMode::grid_probe;
            } else {
                throw IoError("unknown --mode '" + mode + "' (exact|probe)");
            }
            InfDivVerdict v = infdiv_check(a, m, parse_grid(grid_spec, o.tol));
            json evidence = json::array();
            for (const auto& [r, mineig] : v.evidence)
                evidence.push_back({{"r", r}, {"min_eigenvalue", mineig}});
            json doc{{"mode", to_string(v.mode)},
                     {"verdict", to_string(v.verdict)},
                     {"evidence", evidence}};
            if (v.critical_r) doc["critical_r"] = *v.critical_r;
            emit(o, doc.dump(2) + "\n");
            return v.verdict == InfDivOutcome::not_infinitely_divisible ? kExitNegative : kExitOk;
        }

        if (*c_minr) {
            SymMatrix a = resolve_matrix(o);
            double r = min_psd_exponent(a, minr_lo, minr_hi, minr_eps, o.tol);
            emit(o, "{\n  \"critical_r\": " + fmt17(r) + ",\n  \"eps\": " + fmt17(minr_eps) +
                        "\n}\n");
            return kExitOk;
        }

        if (*c_verify) {
            std::vector<VerificationReport> reports;
            if (statement == "all") {
                for (const auto& id : statement_ids()) {
                    auto batch = run_statement_suite(id);
                    reports.insert(reports.end(), batch.begin(), batch.end());
                }
            } else {
                reports = run_statement_suite(statement);
            }
            if (o.format == "text") {
                emit(o, summarize(reports));
            } else {
                emit(o, reports_to_json(reports));
            }
            for (const auto& r : reports)
                if (!r.pass()) return kExitNegative;
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }

    return kExitUsage;
}
