#pragma once

#include <cstdint>
#include <vector>

namespace smithdiv {

// Inputs above this are rejected; factorization is plain trial division.
inline constexpr std::uint64_t kFactorizeBound = std::uint64_t{1} << 48;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization of a positive integer. Primes strictly increasing,
// exponents >= 1; the factorization of 1 is the empty list.
struct Factorization {
    std::uint64_t value = 1;
    std::vector<PrimePower> factors;

    std::size_t num_primes() const { return factors.size(); }
};

// Trial division. Throws BoundError for m = 0 or m > 2^48.
Factorization factorize(std::uint64_t m);

// All divisors of m, ascending (first 1, last m).
std::vector<std::uint64_t> divisors(std::uint64_t m);

std::uint64_t gcd_pair(std::uint64_t a, std::uint64_t b);

// Throws BoundError if the lcm exceeds 2^48.
std::uint64_t lcm_pair(std::uint64_t a, std::uint64_t b);

// Mobius function of m. Plain integer arithmetic, used as the oracle kernel
// throughout.
int mobius(std::uint64_t m);

} // namespace smithdiv
