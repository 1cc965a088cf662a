#pragma once

#include "smithdiv/arithfn.hpp"
#include "smithdiv/sets.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace smithdiv {

/// Dense real symmetric matrix, row-major. Construction enforces symmetry
/// to 1e-12 relative and finiteness of every entry.
class SymMatrix {
public:
    SymMatrix(std::size_t n, std::vector<double> entries);

    static SymMatrix identity(std::size_t n);
    static SymMatrix all_ones(std::size_t n);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    /// Max absolute row sum.
    double norm_inf() const;
    double max_abs() const;

private:
    std::size_t n_;
    std::vector<double> entries_;
};

enum class MatrixKind { GcdValue, ReciprocalLcm, Ratio };

std::string to_string(MatrixKind kind);
std::optional<MatrixKind> matrix_kind_from_string(const std::string& s);

/// Entry (i,j) is f(gcd(x_i,x_j)), 1/f(lcm(x_i,x_j)) or f(gcd)/f(lcm),
/// with the convention 1/f(a) := 0 when f(a) = 0.
SymMatrix build_matrix(const ArithFn& f, const IntegerSet& s, MatrixKind kind);

/// Entrywise power with 0^0 = 1 and 0^r = 0 for r > 0. Entries must be
/// nonnegative.
SymMatrix hadamard_power(const SymMatrix& a, double r);

/// Entry (i,j) becomes w_i * a_ij * w_j.
SymMatrix diag_scale(const SymMatrix& a, const std::vector<double>& w);

/// All eigenvalues, ascending, by cyclic Jacobi rotations (off-diagonal
/// Frobenius norm driven below 1e-12 * ||A||_F).
std::vector<double> jacobi_eigenvalues(const SymMatrix& a);

struct PsdVerdict {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0; // the effective threshold the verdict used
    std::string method = "jacobi-eigen";
};

/// PSD iff the smallest eigenvalue is >= -tol * max(1, ||A||_inf).
PsdVerdict psd_check(const SymMatrix& a, double tol);

/// Default tolerance 1e-9 * n, scaled internally by max(1, ||A||_inf).
PsdVerdict psd_check(const SymMatrix& a);

/// Pivoted Gaussian elimination.
double determinant(const SymMatrix& a);

enum class InfDivMode { exact_log, grid_probe, bisection };
enum class InfDivOutcome { infinitely_divisible, not_infinitely_divisible, inconclusive };

std::string to_string(InfDivMode mode);
std::string to_string(InfDivOutcome outcome);

struct InfDivVerdict {
    InfDivMode mode = InfDivMode::grid_probe;
    InfDivOutcome verdict = InfDivOutcome::inconclusive;
    std::optional<double> critical_r;
    std::vector<std::pair<double, double>> evidence; // (r, min eigenvalue)
};

struct GridParams {
    double lo = 0.0;
    double hi = 4.0;
    double step = 0.05;
    double tol = 1e-9; // per-point psd tolerance factor, scaled like psd_check
};

/// exact_log: decides via conditional positive semi-definiteness of the
/// entrywise log (requires strictly positive entries). grid_probe: sweeps
/// hadamard powers over the r grid; a failure is conclusive, a clean sweep
/// is reported as inconclusive (with evidence).
InfDivVerdict infdiv_check(const SymMatrix& a, InfDivMode mode, const GridParams& params = {});

/// Least r in [r_lo, r_hi] with A^{o r} PSD, located by bisection to width
/// eps after a guard scan (step 10*eps) confirms the PSD region is an upper
/// interval. Requires A^{o r_lo} not PSD and A^{o r_hi} PSD.
double min_psd_exponent(const SymMatrix& a, double r_lo, double r_hi, double eps,
                        double tol = 1e-9);

} // namespace smithdiv
