#pragma once

#include "smithdiv/arithfn.hpp"
#include "smithdiv/matrix.hpp"
#include "smithdiv/sets.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smithdiv {

struct VerificationFailure {
    std::string instance;
    double observed = 0.0;
    double expected = 0.0;
    double slack = 0.0; // signed: negative means the claim was violated
};

struct VerificationReport {
    std::string statement; // smith, eq1, eq2, lemma21, lemma22, lemma23, eq5,
                           // thm21, thm22, thm23, remark, ex31, ex32, ex33
    std::size_t instances = 0;
    std::vector<VerificationFailure> failures;

    bool pass() const { return failures.empty(); }
    void check(const std::string& instance, double observed, double expected, double slack,
               bool ok);
};

/// det(f(i,j)) on {1..n} against the product of (f*mu)(k), 1e-6 relative.
VerificationReport verify_smith(const ArithFn& f, unsigned n);

/// det(f(x_i,x_j)) >= prod_k alpha_f(x_k), and the same for f + eps*fbar at
/// each listed eps. Class preconditions (f in C_S, fbar in C~_S) are
/// reported as failures rather than thrown.
VerificationReport verify_det_lower_bound(const ArithFn& f, const IntegerSet& s,
                                          const std::vector<double>& eps_list,
                                          const ArithFn& fbar);

/// f^r stays in C_S for multiplicative f in C_S, each r in r_list.
VerificationReport verify_lemma22(const ArithFn& f, const IntegerSet& s,
                                  const std::vector<double>& r_list);

/// f_1^{(l_1)} * ... * f_c^{(l_c)} * mu^{(d)} in C_S when sum(l) > d.
/// Throws ContractError if the hypothesis sum(l) > d fails.
VerificationReport verify_lemma23(const std::vector<ArithFn>& fs,
                                  const std::vector<unsigned>& ls, unsigned d,
                                  const IntegerSet& s);

/// Brute-force tuple sum over ordered (m_1,...,m_l) with product m of
/// (g_1*mu)(m_1)...(g_{d+1}*mu)(m_{d+1}) g_{d+2}(m_{d+2})...g_l(m_l).
/// Equals ((g_1*...*g_l*mu^{(d)})*mu)(m). Bounds: l <= 4, d < l, m <= 60.
double eq5_oracle(const std::vector<ArithFn>& gs, unsigned d, std::uint64_t m);

/// The non-multiplicative counterexample on S = {6,10,15}: membership,
/// non-multiplicativity witness, the displayed matrix, PSD at r=1, failure
/// at r=0.6 and the critical exponent log 2 / log 3.
VerificationReport reproduce_counterexample();

/// The table function of the counterexample (f(1)=f(3)=0, f(10)=3, else 1).
ArithFn remark_table_fn();

/// All three matrix kinds PSD at every grid point; exact-log agreement on
/// strictly positive matrices. Hypotheses (multiplicative flag, C_S
/// membership) reported as failures.
VerificationReport verify_infdiv_theorems(const ArithFn& f, const IntegerSet& s,
                                          const GridParams& grid = {});

/// Known statement ids, in paper order.
std::vector<std::string> statement_ids();

/// Default desk-scale instances for one statement id (throws ContractError
/// for unknown ids). "all" in the CLI maps to iterating statement_ids().
std::vector<VerificationReport> run_statement_suite(const std::string& id);

/// Plain-text summary table; one line per report.
std::string summarize(const std::vector<VerificationReport>& reports);

/// JSON rendering of reports.
std::string reports_to_json(const std::vector<VerificationReport>& reports);

} // namespace smithdiv
