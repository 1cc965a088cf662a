// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Usage: acceptance <path-to-cli-binary> [workdir]

#include "smithdiv/arithfn.hpp"
#include "smithdiv/errors.hpp"
#include "smithdiv/harness.hpp"
#include "smithdiv/io.hpp"
#include "smithdiv/matrix.hpp"
#include "smithdiv/parser.hpp"
#include "smithdiv/sets.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace smithdiv;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            failed_ = true;
            details_.push_back(detail);
        }
    }

    void finish(double time_limit_s = 0.0) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (time_limit_s > 0 && secs > time_limit_s) {
            failed_ = true;
            details_.push_back("runtime " + std::to_string(secs) + "s exceeds " +
                               std::to_string(time_limit_s) + "s");
        }
        std::cout << (failed_ ? "[FAIL]" : "[PASS]") << " criterion " << number_ << ": "
                  << title_ << "  (" << secs << "s)\n";
        for (const auto& d : details_) std::cout << "        " << d << "\n";
        if (failed_) ++g_failures;
    }

private:
    int number_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    bool failed_ = false;
    std::vector<std::string> details_;
};

IntegerSet random_set(std::mt19937_64& rng, std::size_t max_n, std::uint64_t max_elem) {
    std::size_t n = 1 + rng() % max_n;
    std::set<std::uint64_t> elems;
    while (elems.size() < n) elems.insert(rng() % max_elem + 1);
    return IntegerSet(std::vector<std::uint64_t>(elems.begin(), elems.end()));
}

void criterion1() {
    Criterion c(1, "counterexample reproduction (Remark, S={6,10,15})");
    ArithFn f = ArithFn::table({{1, 0.0}, {3, 0.0}, {10, 3.0}}, 1.0);
    IntegerSet s({6, 10, 15});
    SymMatrix a = build_matrix(f, s, MatrixKind::GcdValue);

    const double expected[9] = {1, 1, 0, 1, 3, 1, 0, 1, 1};
    for (int i = 0; i < 9; ++i) {
        c.require(a.entries()[i] == expected[i],
                  "matrix entry " + std::to_string(i) + " != displayed matrix");
    }
    c.require(psd_check(a).is_psd, "not PSD at r=1");
    c.require(!psd_check(hadamard_power(a, 0.6)).is_psd, "unexpectedly PSD at r=0.6");
    double r_star = min_psd_exponent(a, 0.0, 1.0, 1e-6);
    double truth = std::log(2.0) / std::log(3.0);
    c.require(std::abs(r_star - truth) <= 1e-6,
              "critical exponent " + std::to_string(r_star) + " vs log2/log3");
    c.finish(1.0);
}

void criterion2() {
    Criterion c(2, "Smith determinant identity, n = 1..10");
    std::vector<ArithFn> fns;
    fns.push_back(ArithFn::xi(0));
    fns.push_back(ArithFn::xi(1));
    fns.push_back(ArithFn::xi(2));
    fns.push_back(ArithFn::jordan(2));
    for (const auto& f : fns) {
        for (unsigned n = 1; n <= 10; ++n) {
            std::vector<std::uint64_t> elems(n);
            for (unsigned k = 0; k < n; ++k) elems[k] = k + 1;
            double det = determinant(build_matrix(f, IntegerSet(elems), MatrixKind::GcdValue));
            double prod = 1.0;
            for (unsigned k = 1; k <= n; ++k) prod *= mobius_transform_direct(f, k);
            c.require(std::abs(det - prod) <= 1e-6 * std::max(1.0, std::abs(prod)),
                      f.to_string() + " n=" + std::to_string(n) + ": det=" + std::to_string(det) +
                          " prod=" + std::to_string(prod));
        }
    }
    c.finish(1.0);
}

void criterion3() {
    Criterion c(3, "determinant lower bound over 200 seeded random sets");
    std::mt19937_64 rng(20240613);
    std::vector<ArithFn> fns;
    fns.push_back(ArithFn::xi(1));
    fns.push_back(ArithFn::jordan(2));
    fns.push_back(ArithFn::conv(ArithFn::xi(1), ArithFn::jordan(2)));
    for (int trial = 0; trial < 200; ++trial) {
        IntegerSet s = random_set(rng, 6, 200);
        const ArithFn& f = fns[trial % fns.size()];

        double det = determinant(build_matrix(f, s, MatrixKind::GcdValue));
        double bound = alpha_vector(f, s).product();
        double scale = std::max({1.0, std::abs(det), std::abs(bound)});
        c.require(det - bound >= -1e-9 * scale,
                  "eq2 violated, trial " + std::to_string(trial));

        for (double eps : {0.1, 1.0}) {
            ArithFn pert = ArithFn::affine_combo({{1.0, f.clone()}, {eps, ArithFn::xi(1)}});
            double pdet = determinant(build_matrix(pert, s, MatrixKind::GcdValue));
            double pbound = alpha_vector(pert, s).product();
            double pscale = std::max({1.0, std::abs(pdet), std::abs(pbound)});
            c.require(pdet - pbound >= -1e-9 * pscale,
                      "eq1 violated at eps=" + std::to_string(eps) + ", trial " +
                          std::to_string(trial));
        }
    }
    c.finish(10.0);
}

void criterion4() {
    Criterion c(4, "Lemma 2.2 closure: f^r stays in C_S, 50 seeded triples");
    std::mt19937_64 rng(20240614);
    std::uniform_real_distribution<double> xi_eps(0.0, 3.0);
    std::uniform_real_distribution<double> j_eps(1.0, 3.0);
    std::uniform_real_distribution<double> r_dist(0.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        ArithFn f = trial % 2 == 0 ? ArithFn::xi(xi_eps(rng)) : ArithFn::jordan(j_eps(rng));
        IntegerSet s = random_set(rng, 5, 150);
        double r = r_dist(rng);
        ClassReport rep = class_membership(ArithFn::pointwise_power(f, r), s,
                                           /*strict=*/false, 1e-9);
        c.require(rep.member, "trial " + std::to_string(trial) + " failed C_S at r=" +
                                  std::to_string(r));
    }
    c.finish(5.0);
}

void criterion5() {
    Criterion c(5, "Eq. (5) oracle vs pairwise convolution, full sweep");
    std::vector<ArithFn> pool;
    pool.push_back(ArithFn::xi(0));
    pool.push_back(ArithFn::xi(1));
    pool.push_back(ArithFn::jordan(2));

    std::vector<std::vector<std::size_t>> tuples{{}};
    for (unsigned l = 1; l <= 4; ++l) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& t : tuples) {
            if (t.size() != l - 1) continue;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                auto u = t;
                u.push_back(i);
                next.push_back(u);
            }
        }
        for (const auto& t : next) {
            for (unsigned d = 0; d < l; ++d) {
                std::vector<ArithFn> gs;
                ArithFn composite = ArithFn::conv_power(ArithFn::mu(), d);
                for (std::size_t idx : t) {
                    gs.push_back(pool[idx].clone());
                    composite = ArithFn::conv(std::move(composite), pool[idx].clone());
                }
                for (std::uint64_t m = 1; m <= 60; ++m) {
                    double lhs = eq5_oracle(gs, d, m);
                    double rhs = mobius_transform_direct(composite, m);
                    double tol = 1e-9 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
                    if (std::abs(lhs - rhs) > tol) {
                        c.require(false, "mismatch l=" + std::to_string(l) + " d=" +
                                             std::to_string(d) + " m=" + std::to_string(m));
                    }
                }
            }
        }
        tuples.insert(tuples.end(), next.begin(), next.end());
    }

    // composite membership under the sum(l) > d hypothesis
    std::vector<ArithFn> fs;
    fs.push_back(ArithFn::xi(1));
    fs.push_back(ArithFn::jordan(2));
    c.require(verify_lemma23(fs, {1, 1}, 1, IntegerSet({12, 18})).pass(),
              "composite xi(1)*jordan(2)*mu not in C_S");
    std::vector<ArithFn> fs2;
    fs2.push_back(ArithFn::xi(1));
    c.require(verify_lemma23(fs2, {2}, 1, IntegerSet({6, 10, 15})).pass(),
              "cpow(xi(1),2)*mu not in C_S");
    c.finish(30.0);
}

void criterion6() {
    Criterion c(6, "Theorems 2.1-2.3 probing on the Example 3.1-3.3 presets");
    struct Preset {
        ArithFn f;
        IntegerSet s;
        std::string label;
    };
    std::vector<Preset> presets;
    presets.push_back({ArithFn::xi(0.7), IntegerSet({6, 10, 15}), "xi(0.7) {6,10,15}"});
    presets.push_back({ArithFn::xi(2.0), IntegerSet({4, 9, 14, 21}), "xi(2) {4,9,14,21}"});
    presets.push_back({ArithFn::jordan(1.0), IntegerSet({2, 3, 4}), "jordan(1) {2,3,4}"});
    presets.push_back({ArithFn::jordan(1.5), IntegerSet({6, 10, 15}), "jordan(1.5) {6,10,15}"});
    presets.push_back({ArithFn::conv(ArithFn::conv(ArithFn::xi(0.5), ArithFn::jordan(1.5)),
                                     ArithFn::conv_power(ArithFn::mu(), 1)),
                       IntegerSet({6, 10, 15}), "xi(0.5)*jordan(1.5)*mu {6,10,15}"});

    GridParams grid; // 0.05 steps on [0, 4]
    for (const auto& preset : presets) {
        for (MatrixKind kind :
             {MatrixKind::GcdValue, MatrixKind::ReciprocalLcm, MatrixKind::Ratio}) {
            SymMatrix a = build_matrix(preset.f, preset.s, kind);
            bool grid_ok = true;
            for (double r = 0.05; r <= 4.0 + 1e-9; r += 0.05) {
                if (!psd_check(hadamard_power(a, r)).is_psd) grid_ok = false;
            }
            c.require(grid_ok, preset.label + " kind=" + to_string(kind) + ": grid PSD failure");

            bool strictly_positive = true;
            for (double v : a.entries()) strictly_positive = strictly_positive && v > 0.0;
            if (strictly_positive) {
                InfDivVerdict exact = infdiv_check(a, InfDivMode::exact_log, grid);
                c.require(exact.verdict == InfDivOutcome::infinitely_divisible,
                          preset.label + " kind=" + to_string(kind) + ": exact-log not infdiv");
                c.require((exact.verdict == InfDivOutcome::infinitely_divisible) == grid_ok,
                          preset.label + " kind=" + to_string(kind) + ": modes disagree");
            }
        }
    }
    c.finish(30.0);
}

void criterion7() {
    Criterion c(7, "diagonal-scaling identity for rlcm matrices, 20 seeded sets");
    std::mt19937_64 rng(20240617);
    std::vector<ArithFn> fns;
    fns.push_back(ArithFn::xi(1));
    fns.push_back(ArithFn::jordan(2));
    for (int trial = 0; trial < 20; ++trial) {
        IntegerSet s = random_set(rng, 6, 200);
        for (const auto& base : fns) {
            for (double r : {0.5, 1.0, 2.0}) {
                ArithFn fr = ArithFn::pointwise_power(base.clone(), r);
                SymMatrix rlcm = build_matrix(fr, s, MatrixKind::ReciprocalLcm);
                SymMatrix gcd_m = build_matrix(fr, s, MatrixKind::GcdValue);
                std::vector<double> w;
                for (std::uint64_t x : s.elements()) w.push_back(1.0 / fr(x));
                SymMatrix scaled = diag_scale(gcd_m, w);
                double scale = std::max(1.0, std::max(rlcm.max_abs(), scaled.max_abs()));
                double maxdiff = 0.0;
                for (std::size_t i = 0; i < rlcm.entries().size(); ++i) {
                    maxdiff = std::max(maxdiff,
                                       std::abs(rlcm.entries()[i] - scaled.entries()[i]));
                }
                c.require(maxdiff <= 1e-9 * scale,
                          "trial " + std::to_string(trial) + " " + base.to_string() + " r=" +
                              std::to_string(r) + " maxdiff=" + std::to_string(maxdiff));
            }
        }
    }
    c.finish(10.0);
}

void criterion8() {
    Criterion c(8, "PSD engine sanity");
    c.require(psd_check(SymMatrix::identity(3)).is_psd, "identity not PSD");
    PsdVerdict v = psd_check(SymMatrix(2, {1, 2, 2, 1}));
    c.require(!v.is_psd, "[[1,2],[2,1]] reported PSD");
    c.require(std::abs(v.min_eigenvalue - (-1.0)) <= 1e-9,
              "min eigenvalue " + std::to_string(v.min_eigenvalue) + " != -1");

    std::mt19937_64 rng(20240618);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> wd(0.1, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + trial % 5;
        std::vector<double> b(n * n);
        for (auto& x : b) x = nd(rng);
        std::vector<double> g(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += b[i * n + k] * b[j * n + k];
                g[i * n + j] = s;
            }
        SymMatrix a = trial % 3 == 0 ? SymMatrix(2, {1, 2, 2, 1}) : SymMatrix(n, g);
        std::vector<double> w(a.size());
        for (auto& x : w) x = wd(rng) * (rng() % 2 ? 1.0 : -1.0);
        c.require(psd_check(diag_scale(a, w)).is_psd == psd_check(a).is_psd,
                  "congruence verdict flip, trial " + std::to_string(trial));
    }
    c.finish(10.0);
}

int run_cmd(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion9(const std::string& cli, const fs::path& dir) {
    Criterion c(9, "CLI contract: grammar offsets, round trips, exit codes");

    // Grammar error positions (10-case corpus, offsets 1-based, hand-checked).
    struct Case {
        const char* text;
        std::size_t offset;
    };
    const Case cases[] = {
        {"conv(xi(1)", 11}, {"", 1},           {"xi", 3},        {"xi(", 4},
        {"xi(1", 5},        {"frob(2)", 1},    {"conv(mu,)", 9}, {"mu extra", 4},
        {"cpow(mu, x)", 10}, {"xi(1.)", 6},
    };
    for (const auto& cs : cases) {
        try {
            parse_fn_expr(cs.text);
            c.require(false, std::string("no error for '") + cs.text + "'");
        } catch (const ParseError& e) {
            c.require(e.offset() == cs.offset,
                      std::string("offset for '") + cs.text + "': " +
                          std::to_string(e.offset()) + " != " + std::to_string(cs.offset));
        }
    }

    // Matrix round trips, bit-exact.
    SymMatrix a = build_matrix(ArithFn::xi(0.7), IntegerSet({6, 10, 15}), MatrixKind::GcdValue);
    std::string csv = emit_matrix_csv(a);
    c.require(emit_matrix_csv(read_matrix_csv(csv)) == csv, "CSV round trip not bit-exact");
    std::string js = emit_matrix_json(a);
    c.require(emit_matrix_json(read_matrix_json(js)) == js, "JSON round trip not bit-exact");

    // Scripted exit-code scenarios against the real binary.
    const std::string q = "\"";
    auto path = [&](const char* name) { return (dir / name).string(); };
    write_file(path("bad.csv"), "1,2\n2,1\n");
    write_file(path("ones.csv"), "1,1\n1,1\n");
    write_file(path("remark.json"),
               R"({"values": {"1": 0, "3": 0, "10": 3}, "default": 1})");

    auto scenario = [&](const std::string& args, int expected, const std::string& label) {
        std::string cmd = cli + " " + args + " > " + path("out.txt") + " 2> " + path("err.txt");
        int code = run_cmd(cmd);
        c.require(code == expected,
                  label + ": exit " + std::to_string(code) + " != " + std::to_string(expected));
    };

    scenario("classcheck --set 6,10,15 --fn " + q + "xi(1)" + q, 0, "classcheck member");
    scenario("classcheck --set 4 --fn mu", 1, "classcheck non-member");
    scenario("psd --in " + path("bad.csv"), 1, "psd negative verdict");
    scenario("psd --in " + path("ones.csv"), 0, "psd positive verdict");
    scenario("--bogus-flag", 2, "unknown flag");
    scenario("eval --fn " + q + "conv(xi(1)" + q + " --m 3", 2, "DSL syntax error");
    scenario("eval --fn " + q + "xi(1)" + q + " --m 281474976710657", 3, "bound error");
    scenario("minr --in " + path("ones.csv"), 3, "bracket error");
    scenario("infdiv --set 6,10,15 --fn " + q + "table(" + path("remark.json") + ")" + q +
                 " --kind gcd --mode probe",
             1, "remark matrix not infinitely divisible");

    // minr finds the remark threshold through the CLI.
    std::string minr_cmd = cli + " minr --set 6,10,15 --fn " + q + "table(" +
                           path("remark.json") + ")" + q + " --kind gcd --out " +
                           path("minr.json");
    c.require(run_cmd(minr_cmd + " 2> " + path("err.txt")) == 0, "minr exit code");
    try {
        auto doc = nlohmann::json::parse(read_file(path("minr.json")));
        double r = doc["critical_r"].get<double>();
        c.require(std::abs(r - std::log(2.0) / std::log(3.0)) <= 1e-6,
                  "minr critical_r " + std::to_string(r));
    } catch (const std::exception& e) {
        c.require(false, std::string("minr output unreadable: ") + e.what());
    }

    // CLI matrix emit -> read back bit-exact.
    std::string mat_cmd = cli + " matrix --set 6,10,15 --fn " + q + "xi(1)" + q +
                          " --kind gcd --format csv --out " + path("m.csv");
    c.require(run_cmd(mat_cmd) == 0, "matrix emit exit code");
    SymMatrix m = read_matrix_csv(read_file(path("m.csv")));
    c.require(emit_matrix_csv(m) == read_file(path("m.csv")), "CLI CSV not bit-exact");

    c.finish(30.0);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <cli-binary> [workdir]\n";
        return 2;
    }
    fs::path dir = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "smithdiv-accept";
    fs::create_directories(dir);

    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(argv[1], dir);

    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
}
