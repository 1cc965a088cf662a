#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace smithdiv {

enum class Multiplicative { yes, no, unknown };

/// Immutable expression tree over arithmetical functions, closed under
/// Dirichlet convolution, convolution powers, pointwise fractional powers
/// and affine combinations.
///
/// Evaluation is memoized per node; trees are cheap to copy (shared nodes).
/// The memo caches make evaluation non-reentrant across threads for a shared
/// tree -- give each worker its own copy (clone()) for parallel use.
class ArithFn {
public:
    // Builtins
    static ArithFn mu();
    static ArithFn delta();
    static ArithFn xi(double eps);     // xi_eps(m) = m^eps
    static ArithFn jordan(double eps); // J_eps = xi_eps * mu

    // Tabulated function: explicit values with a default elsewhere.
    static ArithFn table(std::map<std::uint64_t, double> values, double default_value,
                         bool multiplicative = false, std::string source_path = {});

    static ArithFn conv(ArithFn left, ArithFn right);
    static ArithFn conv_power(ArithFn base, unsigned l);
    static ArithFn pointwise_power(ArithFn base, double r);
    static ArithFn affine_combo(std::vector<std::pair<double, ArithFn>> terms);

    Multiplicative multiplicative() const;
    bool is_multiplicative() const { return multiplicative() == Multiplicative::yes; }

    /// Value at m. Multiplicative trees evaluate as the product over the
    /// prime powers of m; this agrees with evaluate_direct up to rounding.
    double operator()(std::uint64_t m) const;

    /// Generic divisor-sum evaluation with the multiplicative fast path
    /// disabled everywhere in the tree. Test oracle and the path used by
    /// the class-membership checker.
    double evaluate_direct(std::uint64_t m) const;

    /// (f*mu)(p^e) = f(p^e) - f(p^{e-1}) for multiplicative f.
    /// Throws ContractError when the multiplicative flag is not `yes`.
    double mobius_conv_prime_power(std::uint64_t p, unsigned e) const;

    /// Expression in the CLI DSL syntax. Parsing the result of to_string()
    /// yields a structurally identical tree.
    std::string to_string() const;

    /// Deep copy with fresh (empty) memo caches.
    ArithFn clone() const;

    /// Structural equality (node kinds, parameters, children).
    friend bool operator==(const ArithFn& a, const ArithFn& b);

    struct Node;

private:
    explicit ArithFn(std::shared_ptr<Node> node) : node_(std::move(node)) {}
    std::shared_ptr<Node> node_;
};

inline ArithFn dirichlet_conv(ArithFn f, ArithFn g) { return ArithFn::conv(std::move(f), std::move(g)); }

/// Shortest round-tripping decimal representation of a double.
std::string format_double(double v);

} // namespace smithdiv
