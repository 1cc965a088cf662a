#include "smithdiv/arithfn.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/integers.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

namespace smithdiv {

namespace {

const std::vector<std::uint64_t>& cached_divisors(std::uint64_t m) {
    thread_local std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, divisors(m)).first;
    return it->second;
}

} // namespace

struct ArithFn::Node {
    enum class Kind { Mu, Delta, Xi, Jordan, Table, Conv, ConvPower, PointwisePower, Affine };

    Kind kind;
    Multiplicative mult = Multiplicative::unknown;

    double param = 0.0; // eps (Xi/Jordan) or r (PointwisePower)
    unsigned lpow = 0;  // ConvPower exponent

    std::vector<std::shared_ptr<Node>> children;
    std::vector<double> coefs; // Affine, parallel to children

    std::map<std::uint64_t, double> table_values;
    double table_default = 0.0;
    std::string table_path;

    // ConvPower evaluates through this desugared tree (delta / base / conv chain).
    std::shared_ptr<Node> expanded;

    mutable std::unordered_map<std::uint64_t, double> memo_fast;
    mutable std::unordered_map<std::uint64_t, double> memo_direct;
};

namespace {

using Node = ArithFn::Node;
using Kind = Node::Kind;

double eval(const Node& node, std::uint64_t m, bool fast);
void print_node(const Node& node, std::string& out);

double eval_base(const Node& node, std::uint64_t m, bool fast) {
    switch (node.kind) {
    case Kind::Mu:
        return static_cast<double>(mobius(m));
    case Kind::Delta:
        return m == 1 ? 1.0 : 0.0;
    case Kind::Xi:
        return std::pow(static_cast<double>(m), node.param);
    case Kind::Jordan: {
        double sum = 0.0;
        for (std::uint64_t d : cached_divisors(m)) {
            int mu_val = mobius(m / d);
            if (mu_val != 0) sum += std::pow(static_cast<double>(d), node.param) * mu_val;
        }
        return sum;
    }
    case Kind::Table: {
        auto it = node.table_values.find(m);
        return it == node.table_values.end() ? node.table_default : it->second;
    }
    case Kind::Conv: {
        const Node& lhs = *node.children[0];
        const Node& rhs = *node.children[1];
        double sum = 0.0;
        for (std::uint64_t d : cached_divisors(m)) sum += eval(lhs, d, fast) * eval(rhs, m / d, fast);
        return sum;
    }
    case Kind::ConvPower:
        return eval(*node.expanded, m, fast);
    case Kind::PointwisePower: {
        if (node.param == 0.0) return 1.0;
        double v = eval(*node.children[0], m, fast);
        if (v < 0.0) {
            std::string sub;
            print_node(node, sub);
            throw DomainError("pointwise power: negative base f(" + std::to_string(m) +
                              ") = " + format_double(v) + " in subexpression " + sub);
        }
        if (v == 0.0) return 0.0;
        return std::pow(v, node.param);
    }
    case Kind::Affine: {
        double sum = 0.0;
        for (std::size_t i = 0; i < node.children.size(); ++i)
            sum += node.coefs[i] * eval(*node.children[i], m, fast);
        return sum;
    }
    }
    throw ContractError("eval: unreachable node kind");
}

double eval(const Node& node, std::uint64_t m, bool fast) {
    auto& memo = fast ? node.memo_fast : node.memo_direct;
    if (auto it = memo.find(m); it != memo.end()) return it->second;

    double v;
    if (fast && node.mult == Multiplicative::yes && m > 1) {
        Factorization fac = factorize(m);
        if (fac.num_primes() > 1) {
            v = 1.0;
            for (const auto& [p, e] : fac.factors) {
                std::uint64_t pe = 1;
                for (unsigned k = 0; k < e; ++k) pe *= p;
                v *= eval(node, pe, fast);
            }
        } else {
            v = eval_base(node, m, fast);
        }
    } else {
        v = eval_base(node, m, fast);
    }
    memo.emplace(m, v);
    return v;
}

std::shared_ptr<Node> make_node(Kind kind) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    return n;
}

std::shared_ptr<Node> make_conv_node(std::shared_ptr<Node> a, std::shared_ptr<Node> b) {
    auto n = make_node(Kind::Conv);
    n->mult = (a->mult == Multiplicative::yes && b->mult == Multiplicative::yes)
                  ? Multiplicative::yes
                  : Multiplicative::unknown;
    n->children = {std::move(a), std::move(b)};
    return n;
}

std::shared_ptr<Node> clone_node(const Node& node) {
    auto n = std::make_shared<Node>();
    n->kind = node.kind;
    n->mult = node.mult;
    n->param = node.param;
    n->lpow = node.lpow;
    n->coefs = node.coefs;
    n->table_values = node.table_values;
    n->table_default = node.table_default;
    n->table_path = node.table_path;
    for (const auto& c : node.children) n->children.push_back(clone_node(*c));
    if (node.expanded) n->expanded = clone_node(*node.expanded);
    return n;
}

bool equal_nodes(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.param != b.param || a.lpow != b.lpow) return false;
    if (a.kind == Kind::Table &&
        (a.table_values != b.table_values || a.table_default != b.table_default))
        return false;
    if (a.coefs != b.coefs) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!equal_nodes(*a.children[i], *b.children[i])) return false;
    return true;
}

void print_node(const Node& node, std::string& out) {
    switch (node.kind) {
    case Kind::Mu: out += "mu"; return;
    case Kind::Delta: out += "delta"; return;
    case Kind::Xi:
        out += "xi(" + format_double(node.param) + ")";
        return;
    case Kind::Jordan:
        out += "jordan(" + format_double(node.param) + ")";
        return;
    case Kind::Table:
        out += "table(" + (node.table_path.empty() ? std::string("<inline>") : node.table_path) + ")";
        return;
    case Kind::Conv:
        out += "conv(";
        print_node(*node.children[0], out);
        out += ", ";
        print_node(*node.children[1], out);
        out += ")";
        return;
    case Kind::ConvPower:
        out += "cpow(";
        print_node(*node.children[0], out);
        out += ", " + std::to_string(node.lpow) + ")";
        return;
    case Kind::PointwisePower:
        out += "ppow(";
        print_node(*node.children[0], out);
        out += ", " + format_double(node.param) + ")";
        return;
    case Kind::Affine: {
        out += "affine(";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i) out += "; ";
            out += format_double(node.coefs[i]) + ", ";
            print_node(*node.children[i], out);
        }
        out += ")";
        return;
    }
    }
}

} // namespace

ArithFn ArithFn::mu() {
    auto n = make_node(Kind::Mu);
    n->mult = Multiplicative::yes;
    return ArithFn(std::move(n));
}

ArithFn ArithFn::delta() {
    auto n = make_node(Kind::Delta);
    n->mult = Multiplicative::yes;
    return ArithFn(std::move(n));
}

ArithFn ArithFn::xi(double eps) {
    if (eps < 0) throw ContractError("xi: epsilon must be nonnegative");
    auto n = make_node(Kind::Xi);
    n->mult = Multiplicative::yes;
    n->param = eps;
    return ArithFn(std::move(n));
}

ArithFn ArithFn::jordan(double eps) {
    if (eps < 0) throw ContractError("jordan: epsilon must be nonnegative");
    auto n = make_node(Kind::Jordan);
    n->mult = Multiplicative::yes;
    n->param = eps;
    return ArithFn(std::move(n));
}

ArithFn ArithFn::table(std::map<std::uint64_t, double> values, double default_value,
                       bool multiplicative, std::string source_path) {
    for (const auto& [k, v] : values) {
        if (k == 0) throw ContractError("table: keys must be positive integers");
        (void)v;
    }
    auto n = make_node(Kind::Table);
    n->mult = multiplicative ? Multiplicative::yes : Multiplicative::unknown;
    n->table_values = std::move(values);
    n->table_default = default_value;
    n->table_path = std::move(source_path);
    return ArithFn(std::move(n));
}

ArithFn ArithFn::conv(ArithFn left, ArithFn right) {
    return ArithFn(make_conv_node(std::move(left.node_), std::move(right.node_)));
}

ArithFn ArithFn::conv_power(ArithFn base, unsigned l) {
    auto n = make_node(Kind::ConvPower);
    n->lpow = l;
    n->children = {base.node_};
    if (l == 0) {
        n->mult = Multiplicative::yes;
        n->expanded = make_node(Kind::Delta);
        n->expanded->mult = Multiplicative::yes;
    } else {
        n->mult = base.node_->mult == Multiplicative::yes ? Multiplicative::yes
                                                          : Multiplicative::unknown;
        auto acc = base.node_;
        for (unsigned k = 1; k < l; ++k) acc = make_conv_node(acc, base.node_);
        n->expanded = std::move(acc);
    }
    return ArithFn(std::move(n));
}

ArithFn ArithFn::pointwise_power(ArithFn base, double r) {
    if (r < 0) throw ContractError("pointwise_power: exponent must be nonnegative");
    auto n = make_node(Kind::PointwisePower);
    n->param = r;
    n->children = {std::move(base.node_)};
    // r = 0 is the constant-one function, multiplicative by convention 0^0 = 1.
    n->mult = (r == 0.0 || n->children[0]->mult == Multiplicative::yes)
                  ? Multiplicative::yes
                  : Multiplicative::unknown;
    return ArithFn(std::move(n));
}

ArithFn ArithFn::affine_combo(std::vector<std::pair<double, ArithFn>> terms) {
    if (terms.empty()) throw ContractError("affine_combo: empty term list");
    auto n = make_node(Kind::Affine);
    n->mult = Multiplicative::unknown;
    for (auto& [c, f] : terms) {
        n->coefs.push_back(c);
        n->children.push_back(std::move(f.node_));
    }
    return ArithFn(std::move(n));
}

Multiplicative ArithFn::multiplicative() const { return node_->mult; }

double ArithFn::operator()(std::uint64_t m) const {
    if (m == 0 || m > kFactorizeBound) {
        throw BoundError("ArithFn: argument " + std::to_string(m) + " outside [1, 2^48]");
    }
    return eval(*node_, m, /*fast=*/true);
}

double ArithFn::evaluate_direct(std::uint64_t m) const {
    if (m == 0 || m > kFactorizeBound) {
        throw BoundError("ArithFn: argument " + std::to_string(m) + " outside [1, 2^48]");
    }
    return eval(*node_, m, /*fast=*/false);
}

double ArithFn::mobius_conv_prime_power(std::uint64_t p, unsigned e) const {
    if (node_->mult != Multiplicative::yes) {
        throw ContractError("mobius_conv_prime_power: function is not known multiplicative");
    }
    if (e == 0) throw ContractError("mobius_conv_prime_power: exponent must be >= 1");
    std::uint64_t pe1 = 1; // p^{e-1}
    for (unsigned k = 1; k < e; ++k) pe1 *= p;
    return (*this)(pe1 * p) - (*this)(pe1);
}

std::string ArithFn::to_string() const {
    std::string out;
    print_node(*node_, out);
    return out;
}

ArithFn ArithFn::clone() const { return ArithFn(clone_node(*node_)); }

bool operator==(const ArithFn& a, const ArithFn& b) { return equal_nodes(*a.node_, *b.node_); }

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace smithdiv
