#pragma once

#include "smithdiv/arithfn.hpp"

#include <cstdint>
#include <vector>

namespace smithdiv {

/// The set S = {x_1 < ... < x_n}. Canonicalized ascending at construction;
/// duplicates rejected, every element within the factorization bound.
class IntegerSet {
public:
    explicit IntegerSet(std::vector<std::uint64_t> elements);

    const std::vector<std::uint64_t>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::uint64_t operator[](std::size_t k) const { return elements_[k]; }

private:
    std::vector<std::uint64_t> elements_;
};

/// Every d dividing some x in S, ascending.
struct DivisorClosure {
    std::vector<std::uint64_t> divisors;
};

DivisorClosure divisor_closure(const IntegerSet& s);

/// Evidence for an (f*mu)(d) >= 0 (or > 0) sweep over the divisor closure.
struct ClassReport {
    bool strict = false; // false: C_S, true: C~_S
    bool member = false;
    std::size_t checked = 0;
    double tolerance = 0.0;
    std::vector<std::pair<std::uint64_t, double>> violations; // (d, (f*mu)(d))
};

/// (f*mu)(d) by the generic divisor sum, ignoring the multiplicative flag.
/// When scale_out is non-null it receives the largest |f(t)*mu(d/t)| term,
/// the magnitude sign tolerances are scaled by.
double mobius_transform_direct(const ArithFn& f, std::uint64_t d, double* scale_out = nullptr);

/// Tests (f*mu)(d) for every d dividing an element of S. Non-strict accepts
/// values >= -tol*max(1, scale); strict requires values > tol*max(1, scale),
/// where scale is the largest intermediate magnitude of the divisor sum.
ClassReport class_membership(const ArithFn& f, const IntegerSet& s, bool strict, double tol = 1e-9);

/// alpha_f(x_k) = sum of (f*mu)(d) over divisors d of x_k that divide no
/// smaller element of S.
struct AlphaVector {
    struct Entry {
        std::uint64_t element;
        double alpha;
        std::vector<std::uint64_t> contributing_divisors;
    };
    std::vector<Entry> entries;

    std::vector<double> values() const;
    double product() const;
};

AlphaVector alpha_vector(const ArithFn& f, const IntegerSet& s);

} // namespace smithdiv
