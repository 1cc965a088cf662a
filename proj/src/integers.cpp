#include "smithdiv/integers.hpp"

#include "smithdiv/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace smithdiv {

Factorization factorize(std::uint64_t m) {
    if (m == 0 || m > kFactorizeBound) {
        throw BoundError("factorize: input " + std::to_string(m) +
                         " outside [1, 2^48]");
    }
    Factorization fac;
    fac.value = m;
    std::uint64_t rest = m;
    auto strip = [&](std::uint64_t p) {
        if (rest % p != 0) return;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        fac.factors.push_back({p, e});
    };
    strip(2);
    strip(3);
    // 6k +/- 1 wheel up to sqrt(rest) <= 2^24
    for (std::uint64_t p = 5; p * p <= rest; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (rest > 1) fac.factors.push_back({rest, 1});
    return fac;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
    Factorization fac = factorize(m);
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : fac.factors) {
        std::size_t base = divs.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::uint64_t gcd_pair(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) throw ContractError("gcd_pair: arguments must be >= 1");
    return std::gcd(a, b);
}

std::uint64_t lcm_pair(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) throw ContractError("lcm_pair: arguments must be >= 1");
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t q = a / g;
    if (q > kFactorizeBound / b) {
        throw BoundError("lcm_pair: lcm of " + std::to_string(a) + " and " +
                         std::to_string(b) + " exceeds 2^48");
    }
    return q * b;
}

int mobius(std::uint64_t m) {
    Factorization fac = factorize(m);
    for (const auto& pp : fac.factors) {
        if (pp.exponent > 1) return 0;
    }
    return fac.factors.size() % 2 == 0 ? 1 : -1;
}

} // namespace smithdiv
