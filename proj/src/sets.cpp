#include "smithdiv/sets.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/integers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace smithdiv {

IntegerSet::IntegerSet(std::vector<std::uint64_t> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ContractError("IntegerSet: at least one element required");
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] == 0 || elements_[i] > kFactorizeBound) {
            throw BoundError("IntegerSet: element " + std::to_string(elements_[i]) +
                             " outside [1, 2^48]");
        }
        if (i > 0 && elements_[i] == elements_[i - 1]) {
            throw ContractError("IntegerSet: duplicate element " + std::to_string(elements_[i]));
        }
    }
}

DivisorClosure divisor_closure(const IntegerSet& s) {
    std::set<std::uint64_t> all;
    for (std::uint64_t x : s.elements()) {
        auto divs = divisors(x);
        all.insert(divs.begin(), divs.end());
    }
    return DivisorClosure{std::vector<std::uint64_t>(all.begin(), all.end())};
}

double mobius_transform_direct(const ArithFn& f, std::uint64_t d, double* scale_out) {
    double sum = 0.0;
    double scale = 0.0;
    for (std::uint64_t t : divisors(d)) {
        int mu_val = mobius(d / t);
        if (mu_val == 0) continue;
        double term = f.evaluate_direct(t) * mu_val;
        sum += term;
        scale = std::max(scale, std::abs(term));
    }
    if (scale_out) *scale_out = scale;
    return sum;
}

ClassReport class_membership(const ArithFn& f, const IntegerSet& s, bool strict, double tol) {
    if (tol < 0) throw ContractError("class_membership: tolerance must be nonnegative");
    ClassReport report;
    report.strict = strict;
    report.tolerance = tol;
    for (std::uint64_t d : divisor_closure(s).divisors) {
        double scale = 0.0;
        double v = mobius_transform_direct(f, d, &scale);
        double eff = tol * std::max(1.0, scale);
        ++report.checked;
        bool ok = strict ? (v > eff) : (v >= -eff);
        if (!ok) report.violations.emplace_back(d, v);
    }
    report.member = report.violations.empty();
    return report;
}

std::vector<double> AlphaVector::values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.alpha);
    return v;
}

double AlphaVector::product() const {
    double p = 1.0;
    for (const auto& e : entries) p *= e.alpha;
    return p;
}

AlphaVector alpha_vector(const ArithFn& f, const IntegerSet& s) {
    AlphaVector out;
    const auto& xs = s.elements();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        AlphaVector::Entry entry;
        entry.element = xs[k];
        entry.alpha = 0.0;
        for (std::uint64_t d : divisors(xs[k])) {
            bool divides_smaller = false;
            for (std::size_t t = 0; t < k; ++t) {
                if (xs[t] % d == 0) {
                    divides_smaller = true;
                    break;
                }
            }
            if (divides_smaller) continue;
            entry.contributing_divisors.push_back(d);
            entry.alpha += mobius_transform_direct(f, d);
        }
        out.entries.push_back(std::move(entry));
    }
    return out;
}

} // namespace smithdiv
