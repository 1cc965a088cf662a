#include "smithdiv/matrix.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/integers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smithdiv {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ == 0 || entries_.size() != n_ * n_) {
        throw ContractError("SymMatrix: entry count does not match dimension");
    }
    double mx = 0.0;
    for (double v : entries_) {
        if (!std::isfinite(v)) throw ContractError("SymMatrix: non-finite entry");
        mx = std::max(mx, std::abs(v));
    }
    double tol = 1e-12 * std::max(1.0, mx);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (std::abs(entries_[i * n_ + j] - entries_[j * n_ + i]) > tol) {
                throw ContractError("SymMatrix: asymmetry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") beyond tolerance");
            }
        }
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return SymMatrix(n, std::move(e));
}

SymMatrix SymMatrix::all_ones(std::size_t n) {
    return SymMatrix(n, std::vector<double>(n * n, 1.0));
}

double SymMatrix::norm_inf() const {
    double mx = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += std::abs(entries_[i * n_ + j]);
        mx = std::max(mx, row);
    }
    return mx;
}

double SymMatrix::max_abs() const {
    double mx = 0.0;
    for (double v : entries_) mx = std::max(mx, std::abs(v));
    return mx;
}

std::string to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::GcdValue: return "gcd";
    case MatrixKind::ReciprocalLcm: return "rlcm";
    case MatrixKind::Ratio: return "ratio";
    }
    return "?";
}

std::optional<MatrixKind> matrix_kind_from_string(const std::string& s) {
    if (s == "gcd") return MatrixKind::GcdValue;
    if (s == "rlcm") return MatrixKind::ReciprocalLcm;
    if (s == "ratio") return MatrixKind::Ratio;
    return std::nullopt;
}

SymMatrix build_matrix(const ArithFn& f, const IntegerSet& s, MatrixKind kind) {
    const auto& xs = s.elements();
    std::size_t n = xs.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = 0.0;
            switch (kind) {
            case MatrixKind::GcdValue:
                v = f(gcd_pair(xs[i], xs[j]));
                break;
            case MatrixKind::ReciprocalLcm: {
                double fl = f(lcm_pair(xs[i], xs[j]));
                v = fl == 0.0 ? 0.0 : 1.0 / fl;
                break;
            }
            case MatrixKind::Ratio: {
                double fl = f(lcm_pair(xs[i], xs[j]));
                v = fl == 0.0 ? 0.0 : f(gcd_pair(xs[i], xs[j])) / fl;
                break;
            }
            }
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    return SymMatrix(n, std::move(e));
}

SymMatrix hadamard_power(const SymMatrix& a, double r) {
    if (r < 0) throw ContractError("hadamard_power: exponent must be nonnegative");
    std::size_t n = a.size();
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = a(i, j);
            if (v < 0) {
                throw DomainError("hadamard_power: negative entry at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
            }
            e[i * n + j] = v == 0.0 ? (r == 0.0 ? 1.0 : 0.0) : std::pow(v, r);
        }
    }
    return SymMatrix(n, std::move(e));
}

SymMatrix diag_scale(const SymMatrix& a, const std::vector<double>& w) {
    std::size_t n = a.size();
    if (w.size() != n) throw ContractError("diag_scale: weight length does not match dimension");
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = w[i] * a(i, j) * w[j];
    return SymMatrix(n, std::move(e));
}

std::vector<double> jacobi_eigenvalues(const SymMatrix& a) {
    std::size_t n = a.size();
    std::vector<double> m = a.entries();
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };

    double frob = 0.0;
    for (double v : m) frob += v * v;
    frob = std::sqrt(frob);
    double target = 1e-12 * std::max(frob, 1e-300);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * at(i, j) * at(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sgn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = at(k, p);
                    double akq = at(k, q);
                    at(k, p) = c * akp - sgn * akq;
                    at(k, q) = sgn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = at(p, k);
                    double aqk = at(q, k);
                    at(p, k) = c * apk - sgn * aqk;
                    at(q, k) = sgn * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

PsdVerdict psd_check(const SymMatrix& a, double tol) {
    if (tol < 0) throw ContractError("psd_check: tolerance must be nonnegative");
    auto eig = jacobi_eigenvalues(a);
    PsdVerdict v;
    v.min_eigenvalue = eig.front();
    v.tolerance = tol * std::max(1.0, a.norm_inf());
    v.is_psd = v.min_eigenvalue >= -v.tolerance;
    return v;
}

PsdVerdict psd_check(const SymMatrix& a) {
    return psd_check(a, 1e-9 * static_cast<double>(a.size()));
}

double determinant(const SymMatrix& a) {
    std::size_t n = a.size();
    std::vector<double> m = a.entries();
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (at(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
            det = -det;
        }
        det *= at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = at(r, col) / at(col, col);
            for (std::size_t j = col; j < n; ++j) at(r, j) -= factor * at(col, j);
        }
    }
    return det;
}

std::string to_string(InfDivMode mode) {
    switch (mode) {
    case InfDivMode::exact_log: return "exact-log";
    case InfDivMode::grid_probe: return "grid-probe";
    case InfDivMode::bisection: return "bisection";
    }
    return "?";
}

std::string to_string(InfDivOutcome outcome) {
    switch (outcome) {
    case InfDivOutcome::infinitely_divisible: return "infinitely-divisible";
    case InfDivOutcome::not_infinitely_divisible: return "not-infinitely-divisible";
    case InfDivOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void require_nonnegative(const SymMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a(i, j) < 0)
                throw DomainError("infdiv: negative entry at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
}

InfDivVerdict grid_probe(const SymMatrix& a, const GridParams& params) {
    InfDivVerdict v;
    v.mode = InfDivMode::grid_probe;
    bool failed = false;
    for (double r = params.lo; r <= params.hi + 0.5 * params.step; r += params.step) {
        PsdVerdict p = psd_check(hadamard_power(a, r), params.tol);
        v.evidence.emplace_back(r, p.min_eigenvalue);
        if (!p.is_psd) failed = true;
    }
    v.verdict = failed ? InfDivOutcome::not_infinitely_divisible : InfDivOutcome::inconclusive;
    return v;
}

} // namespace

InfDivVerdict infdiv_check(const SymMatrix& a, InfDivMode mode, const GridParams& params) {
    require_nonnegative(a);
    if (mode == InfDivMode::grid_probe) return grid_probe(a, params);
    if (mode != InfDivMode::exact_log) {
        throw ContractError("infdiv_check: mode must be exact-log or grid-probe");
    }

    std::size_t n = a.size();
    for (std::size_t i = 0; i < n * n; ++i) {
        if (a.entries()[i] == 0.0) {
            throw DomainError("infdiv exact-log: zero entry; use grid-probe mode");
        }
    }

    InfDivVerdict v;
    v.mode = InfDivMode::exact_log;

    PsdVerdict base = psd_check(a, params.tol);
    v.evidence.emplace_back(1.0, base.min_eigenvalue);

    // Conditional PSD test for L = (log a_ij): project onto the sum-zero
    // subspace with P = I - (1/n) * ones and check P L P.
    std::vector<double> l(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) l[i * n + j] = std::log(a(i, j));

    std::vector<double> plp(n * n, 0.0);
    auto pmat = [&](std::size_t i, std::size_t j) {
        return (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t t = 0; t < n; ++t) sum += pmat(i, k) * l[k * n + t] * pmat(t, j);
            plp[i * n + j] = sum;
        }
    }
    // Symmetrize away projection round-off before the eigensolve.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double m = 0.5 * (plp[i * n + j] + plp[j * n + i]);
            plp[i * n + j] = m;
            plp[j * n + i] = m;
        }
    PsdVerdict cond = psd_check(SymMatrix(n, std::move(plp)), params.tol);

    if (base.is_psd && cond.is_psd) {
        v.verdict = InfDivOutcome::infinitely_divisible;
        return v;
    }

    // Negative answer: back it with a concrete failing Hadamard power.
    InfDivVerdict probe = grid_probe(a, params);
    v.evidence = probe.evidence;
    v.verdict = probe.verdict == InfDivOutcome::not_infinitely_divisible
                    ? InfDivOutcome::not_infinitely_divisible
                    : InfDivOutcome::inconclusive;
    return v;
}

double min_psd_exponent(const SymMatrix& a, double r_lo, double r_hi, double eps, double tol) {
    require_nonnegative(a);
    if (!(r_lo < r_hi) || eps <= 0) {
        throw ContractError("min_psd_exponent: need r_lo < r_hi and eps > 0");
    }
    auto psd_at = [&](double r) { return psd_check(hadamard_power(a, r), tol).is_psd; };

    double scan_step = eps * 10.0;
    // r = 0 is a discontinuity point of r -> A^(o r) whenever A has zero
    // entries (0^0 = 1 flips them on); the bracket is open on the left there.
    double start = r_lo == 0.0 ? scan_step : r_lo;

    if (psd_at(start)) {
        throw DomainError("min_psd_exponent: bracket invalid, A^(o r_lo) already PSD");
    }
    if (!psd_at(r_hi)) {
        throw DomainError("min_psd_exponent: bracket invalid, A^(o r_hi) not PSD");
    }

    // Guard scan: the PSD indicator must switch exactly once on the bracket.
    double lo = start;
    double hi = r_hi;
    bool seen_psd = false;
    for (double r = start; r < r_hi; r += scan_step) {
        bool ok = psd_at(r);
        if (ok && !seen_psd) {
            seen_psd = true;
            hi = r;
        } else if (!ok && seen_psd) {
            throw DomainError("min_psd_exponent: non-monotone PSD region on the bracket");
        }
        if (!ok) lo = r;
    }

    while (hi - lo > eps) {
        double mid = 0.5 * (lo + hi);
        if (psd_at(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace smithdiv
