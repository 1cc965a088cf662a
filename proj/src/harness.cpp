#include "smithdiv/harness.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/integers.hpp"

#include <json.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace smithdiv {

void VerificationReport::check(const std::string& instance, double observed, double expected,
                               double slack, bool ok) {
    ++instances;
    if (!ok) failures.push_back({instance, observed, expected, slack});
}

VerificationReport verify_smith(const ArithFn& f, unsigned n) {
    if (n == 0 || n > 12) throw ContractError("verify_smith: n must be in [1, 12]");
    VerificationReport report;
    report.statement = "smith";
    std::vector<std::uint64_t> elems(n);
    std::iota(elems.begin(), elems.end(), 1);
    IntegerSet s(std::move(elems));
    double det = determinant(build_matrix(f, s, MatrixKind::GcdValue));
    double prod = 1.0;
    for (unsigned k = 1; k <= n; ++k) prod *= mobius_transform_direct(f, k);
    double tol = 1e-6 * std::max(1.0, std::abs(prod));
    report.check("det(f(i,j)) vs prod (f*mu)(k), n=" + std::to_string(n), det, prod,
                 tol - std::abs(det - prod), std::abs(det - prod) <= tol);
    return report;
}

namespace {

std::string set_str(const IntegerSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

// Eq. (2) check for one function: det >= prod alpha, slack scaled.
void check_det_bound(VerificationReport& report, const ArithFn& f, const IntegerSet& s,
                     const std::string& label) {
    double det = determinant(build_matrix(f, s, MatrixKind::GcdValue));
    double bound = alpha_vector(f, s).product();
    double scale = std::max({1.0, std::abs(det), std::abs(bound)});
    double slack = det - bound;
    report.check(label + " on " + set_str(s), det, bound, slack, slack >= -1e-9 * scale);
}

} // namespace

VerificationReport verify_det_lower_bound(const ArithFn& f, const IntegerSet& s,
                                          const std::vector<double>& eps_list,
                                          const ArithFn& fbar) {
    if (s.size() > 8) throw ContractError("verify_det_lower_bound: n must be <= 8");
    VerificationReport report;
    report.statement = "eq2";

    ClassReport cf = class_membership(f, s, /*strict=*/false);
    report.check("precondition f in C_S", cf.member ? 1.0 : 0.0, 1.0, 0.0, cf.member);
    ClassReport cb = class_membership(fbar, s, /*strict=*/true);
    report.check("precondition fbar in C~_S", cb.member ? 1.0 : 0.0, 1.0, 0.0, cb.member);

    check_det_bound(report, f, s, "eq2 det >= prod alpha");
    for (double eps : eps_list) {
        ArithFn perturbed = ArithFn::affine_combo({{1.0, f.clone()}, {eps, fbar.clone()}});
        check_det_bound(report, perturbed, s, "eq1 at eps=" + format_double(eps));
    }
    return report;
}

VerificationReport verify_lemma22(const ArithFn& f, const IntegerSet& s,
                                  const std::vector<double>& r_list) {
    VerificationReport report;
    report.statement = "lemma22";
    bool mult = f.is_multiplicative();
    report.check("precondition f multiplicative", mult ? 1.0 : 0.0, 1.0, 0.0, mult);
    ClassReport cf = class_membership(f, s, /*strict=*/false);
    report.check("precondition f in C_S", cf.member ? 1.0 : 0.0, 1.0, 0.0, cf.member);
    for (double r : r_list) {
        ClassReport cr = class_membership(ArithFn::pointwise_power(f.clone(), r), s,
                                          /*strict=*/false);
        double worst = 0.0;
        for (const auto& [d, v] : cr.violations) {
            (void)d;
            worst = std::min(worst, v);
        }
        report.check("f^r in C_S at r=" + format_double(r) + " on " + set_str(s),
                     worst, 0.0, worst, cr.member);
    }
    return report;
}

VerificationReport verify_lemma23(const std::vector<ArithFn>& fs, const std::vector<unsigned>& ls,
                                  unsigned d, const IntegerSet& s) {
    if (fs.empty() || fs.size() != ls.size()) {
        throw ContractError("verify_lemma23: need matching nonempty fs and ls");
    }
    unsigned total = 0;
    for (unsigned l : ls) {
        if (l == 0) throw ContractError("verify_lemma23: l_i must be >= 1");
        total += l;
    }
    if (total <= d) {
        throw ContractError("verify_lemma23: hypothesis sum(l) > d fails; no guarantee");
    }

    VerificationReport report;
    report.statement = "lemma23";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        ClassReport ci = class_membership(fs[i], s, /*strict=*/false);
        report.check("precondition f_" + std::to_string(i + 1) + " in C_S",
                     ci.member ? 1.0 : 0.0, 1.0, 0.0, ci.member);
    }

    ArithFn composite = ArithFn::conv_power(fs[0].clone(), ls[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) {
        composite = ArithFn::conv(std::move(composite), ArithFn::conv_power(fs[i].clone(), ls[i]));
    }
    composite = ArithFn::conv(std::move(composite), ArithFn::conv_power(ArithFn::mu(), d));

    ClassReport cc = class_membership(composite, s, /*strict=*/false);
    double worst = 0.0;
    for (const auto& [dd, v] : cc.violations) {
        (void)dd;
        worst = std::min(worst, v);
    }
    report.check("composite in C_S on " + set_str(s), worst, 0.0, worst, cc.member);
    return report;
}

namespace {

void tuple_sum(const std::vector<ArithFn>& gs, unsigned d, std::size_t idx, std::uint64_t rest,
               double acc, double& total) {
    std::size_t l = gs.size();
    if (idx + 1 == l) {
        double factor = idx <= d ? mobius_transform_direct(gs[idx], rest)
                                 : gs[idx].evaluate_direct(rest);
        total += acc * factor;
        return;
    }
    for (std::uint64_t mi : divisors(rest)) {
        double factor = idx <= d ? mobius_transform_direct(gs[idx], mi)
                                 : gs[idx].evaluate_direct(mi);
        if (factor == 0.0) continue;
        tuple_sum(gs, d, idx + 1, rest / mi, acc * factor, total);
    }
}

} // namespace

double eq5_oracle(const std::vector<ArithFn>& gs, unsigned d, std::uint64_t m) {
    if (gs.empty() || gs.size() > 4) throw ContractError("eq5_oracle: need 1 <= l <= 4");
    if (d >= gs.size()) throw ContractError("eq5_oracle: need d < l");
    if (m == 0 || m > 60) throw BoundError("eq5_oracle: m must be in [1, 60]");
    double total = 0.0;
    tuple_sum(gs, d, 0, m, 1.0, total);
    return total;
}

ArithFn remark_table_fn() {
    return ArithFn::table({{1, 0.0}, {3, 0.0}, {10, 3.0}}, 1.0);
}

VerificationReport reproduce_counterexample() {
    VerificationReport report;
    report.statement = "remark";

    ArithFn f = remark_table_fn();
    IntegerSet s({6, 10, 15});

    ClassReport cm = class_membership(f, s, /*strict=*/false);
    report.check("f in C_S", cm.member ? 1.0 : 0.0, 1.0, 0.0, cm.member);

    // f(6) = 1 but f(2)*f(3) = 0: not multiplicative.
    double f6 = f(6);
    double f2f3 = f(2) * f(3);
    report.check("non-multiplicativity witness f(6) != f(2)f(3)", f6, f2f3,
                 std::abs(f6 - f2f3), f6 != f2f3);

    SymMatrix a = build_matrix(f, s, MatrixKind::GcdValue);
    const double expected[9] = {1, 1, 0, 1, 3, 1, 0, 1, 1};
    double maxdiff = 0.0;
    for (int i = 0; i < 9; ++i) maxdiff = std::max(maxdiff, std::abs(a.entries()[i] - expected[i]));
    report.check("matrix equals [[1,1,0],[1,3,1],[0,1,1]]", maxdiff, 0.0, -maxdiff,
                 maxdiff == 0.0);

    PsdVerdict at1 = psd_check(a);
    report.check("PSD at r=1", at1.min_eigenvalue, 0.0, at1.min_eigenvalue, at1.is_psd);

    PsdVerdict at06 = psd_check(hadamard_power(a, 0.6));
    report.check("not PSD at r=0.6", at06.min_eigenvalue, 0.0, -at06.min_eigenvalue,
                 !at06.is_psd);

    double r_star = min_psd_exponent(a, 0.0, 1.0, 1e-6);
    double truth = std::log(2.0) / std::log(3.0);
    report.check("critical exponent log2/log3", r_star, truth,
                 1e-6 - std::abs(r_star - truth), std::abs(r_star - truth) <= 1e-6);
    return report;
}

VerificationReport verify_infdiv_theorems(const ArithFn& f, const IntegerSet& s,
                                          const GridParams& grid) {
    VerificationReport report;
    report.statement = "thm21";

    ClassReport cm = class_membership(f, s, /*strict=*/false);
    report.check("hypothesis f in C_S", cm.member ? 1.0 : 0.0, 1.0, 0.0, cm.member);
    bool mult = f.is_multiplicative();
    report.check("hypothesis f multiplicative", mult ? 1.0 : 0.0, 1.0, 0.0, mult);

    for (MatrixKind kind : {MatrixKind::GcdValue, MatrixKind::ReciprocalLcm, MatrixKind::Ratio}) {
        SymMatrix a = build_matrix(f, s, kind);
        InfDivVerdict probe = infdiv_check(a, InfDivMode::grid_probe, grid);
        double worst = 0.0;
        for (const auto& [r, mineig] : probe.evidence) {
            (void)r;
            worst = std::min(worst, mineig);
        }
        bool grid_ok = probe.verdict != InfDivOutcome::not_infinitely_divisible;
        report.check("grid sweep PSD, kind=" + to_string(kind) + " on " + set_str(s), worst,
                     0.0, worst, grid_ok);

        bool strictly_positive = true;
        for (double v : a.entries()) strictly_positive = strictly_positive && v > 0.0;
        if (strictly_positive) {
            InfDivVerdict exact = infdiv_check(a, InfDivMode::exact_log, grid);
            bool exact_ok = exact.verdict == InfDivOutcome::infinitely_divisible;
            report.check("exact-log agrees, kind=" + to_string(kind),
                         exact_ok ? 1.0 : 0.0, grid_ok ? 1.0 : 0.0, 0.0, exact_ok == grid_ok);
        }
    }
    return report;
}

std::vector<std::string> statement_ids() {
    return {"smith",   "eq1",   "eq2",    "lemma21", "lemma22", "lemma23", "eq5",
            "thm21",   "thm22", "thm23",  "remark",  "ex31",    "ex32",    "ex33"};
}

namespace {

VerificationReport lemma21_suite() {
    VerificationReport report;
    report.statement = "lemma21";
    struct Inst {
        ArithFn f;
        IntegerSet s;
        std::string label;
    };
    std::vector<Inst> insts;
    insts.push_back({ArithFn::xi(0.5), IntegerSet({6, 10, 15}), "xi(0.5) on {6,10,15}"});
    insts.push_back({ArithFn::jordan(2.0), IntegerSet({12, 18, 30}), "jordan(2) on {12,18,30}"});
    insts.push_back({remark_table_fn(), IntegerSet({6, 10, 15}), "remark table on {6,10,15}"});
    for (auto& inst : insts) {
        ClassReport cm = class_membership(inst.f, inst.s, /*strict=*/false);
        report.check("hypothesis " + inst.label + " in C_S", cm.member ? 1.0 : 0.0, 1.0, 0.0,
                     cm.member);
        PsdVerdict p = psd_check(build_matrix(inst.f, inst.s, MatrixKind::GcdValue));
        report.check("gcd matrix PSD, " + inst.label, p.min_eigenvalue, 0.0, p.min_eigenvalue,
                     p.is_psd);
    }
    return report;
}

VerificationReport eq5_suite() {
    VerificationReport report;
    report.statement = "eq5";
    std::vector<ArithFn> pool;
    pool.push_back(ArithFn::xi(0.0));
    pool.push_back(ArithFn::xi(1.0));
    pool.push_back(ArithFn::jordan(2.0));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            std::vector<ArithFn> gs{pool[i].clone(), pool[j].clone()};
            for (unsigned d = 0; d < 2; ++d) {
                ArithFn composite = ArithFn::conv(
                    ArithFn::conv(gs[0].clone(), gs[1].clone()),
                    ArithFn::conv_power(ArithFn::mu(), d));
                for (std::uint64_t m : {1, 4, 12, 36, 60}) {
                    double lhs = eq5_oracle(gs, d, m);
                    double rhs = mobius_transform_direct(composite, m);
                    double tol = 1e-9 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
                    report.check("eq5 g=(" + std::to_string(i) + "," + std::to_string(j) +
                                     ") d=" + std::to_string(d) + " m=" + std::to_string(m),
                                 lhs, rhs, tol - std::abs(lhs - rhs), std::abs(lhs - rhs) <= tol);
                }
            }
        }
    }
    return report;
}

ArithFn ex33_fn() {
    // xi_0.5 * J_1.5 * mu  (l = t = d = 1, l + t > d)
    return ArithFn::conv(ArithFn::conv(ArithFn::xi(0.5), ArithFn::jordan(1.5)),
                         ArithFn::conv_power(ArithFn::mu(), 1));
}

} // namespace

std::vector<VerificationReport> run_statement_suite(const std::string& id) {
    std::vector<VerificationReport> out;
    if (id == "smith") {
        for (double eps : {0.0, 1.0, 2.0}) {
            for (unsigned n : {1u, 4u, 8u, 10u}) out.push_back(verify_smith(ArithFn::xi(eps), n));
        }
        for (unsigned n : {1u, 4u, 8u, 10u}) out.push_back(verify_smith(ArithFn::jordan(2.0), n));
    } else if (id == "eq1" || id == "eq2") {
        out.push_back(verify_det_lower_bound(ArithFn::xi(1.0), IntegerSet({6, 10, 15}),
                                             {0.1, 1.0}, ArithFn::xi(1.0)));
        out.push_back(verify_det_lower_bound(ArithFn::jordan(2.0), IntegerSet({12, 18, 30, 40}),
                                             {0.1, 1.0}, ArithFn::xi(1.0)));
        out.push_back(verify_det_lower_bound(ArithFn::xi(1.0), IntegerSet({1, 2, 4}),
                                             {0.1, 1.0}, ArithFn::xi(1.0)));
    } else if (id == "lemma21") {
        out.push_back(lemma21_suite());
    } else if (id == "lemma22") {
        out.push_back(verify_lemma22(ArithFn::xi(1.0), IntegerSet({6, 10, 15}),
                                     {0.0, 0.5, 2.0, 3.14159265358979}));
        out.push_back(verify_lemma22(ArithFn::jordan(2.0), IntegerSet({30}), {0.3}));
    } else if (id == "lemma23") {
        std::vector<ArithFn> fs1;
        fs1.push_back(ArithFn::xi(1.0));
        out.push_back(verify_lemma23(fs1, {2}, 1, IntegerSet({6, 10, 15})));
        std::vector<ArithFn> fs2;
        fs2.push_back(ArithFn::xi(0.0));
        out.push_back(verify_lemma23(fs2, {1}, 0, IntegerSet({6, 10, 15})));
        std::vector<ArithFn> fs3;
        fs3.push_back(ArithFn::xi(1.0));
        fs3.push_back(ArithFn::jordan(2.0));
        out.push_back(verify_lemma23(fs3, {1, 1}, 1, IntegerSet({12, 18})));
    } else if (id == "eq5") {
        out.push_back(eq5_suite());
    } else if (id == "thm21") {
        out.push_back(verify_infdiv_theorems(ArithFn::xi(0.7), IntegerSet({6, 10, 15})));
        out.push_back(verify_infdiv_theorems(ArithFn::jordan(2.0), IntegerSet({12, 18, 30})));
    } else if (id == "thm22" || id == "ex33") {
        out.push_back(verify_infdiv_theorems(ex33_fn(), IntegerSet({6, 10, 15})));
    } else if (id == "thm23") {
        ArithFn f = ArithFn::conv(ArithFn::conv_power(ArithFn::xi(1.0), 2),
                                  ArithFn::conv_power(ArithFn::mu(), 1));
        out.push_back(verify_infdiv_theorems(f, IntegerSet({6, 10, 15})));
    } else if (id == "remark") {
        out.push_back(reproduce_counterexample());
    } else if (id == "ex31") {
        for (double eps : {0.0, 0.7, 1.0, 2.5}) {
            out.push_back(verify_infdiv_theorems(ArithFn::xi(eps), IntegerSet({6, 10, 15})));
        }
    } else if (id == "ex32") {
        out.push_back(verify_infdiv_theorems(ArithFn::jordan(1.0), IntegerSet({2, 3, 4})));
        out.push_back(verify_infdiv_theorems(ArithFn::jordan(1.5), IntegerSet({6, 10, 15})));
    } else {
        throw ContractError("unknown statement id: " + id);
    }
    // Tag every report with the requested id so CLI output groups cleanly.
    for (auto& r : out) r.statement = id;
    return out;
}

std::string summarize(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << (r.pass() ? "PASS" : "FAIL") << "  " << r.statement << "  instances="
            << r.instances << " failures=" << r.failures.size() << "\n";
        for (const auto& f : r.failures) {
            out << "      " << f.instance << ": observed=" << f.observed
                << " expected=" << f.expected << " slack=" << f.slack << "\n";
        }
    }
    return out.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& f : r.failures) {
            failures.push_back({{"instance", f.instance},
                                {"observed", f.observed},
                                {"expected", f.expected},
                                {"slack", f.slack}});
        }
        arr.push_back({{"statement", r.statement},
                       {"pass", r.pass()},
                       {"instances", r.instances},
                       {"failures", failures}});
    }
    return arr.dump(2) + "\n";
}

} // namespace smithdiv
