#include "smithdiv/parser.hpp"

#include "smithdiv/errors.hpp"
#include "smithdiv/io.hpp"

#include <cctype>
#include <cstdlib>

namespace smithdiv {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ArithFn parse() {
        ArithFn fn = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"end of input"});
        return fn;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) {
        std::string msg = "syntax error at offset " + std::to_string(pos_ + 1) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += " | ";
            msg += expected[i];
        }
        throw ParseError(pos_ + 1, std::move(expected), msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_is(char c) { return pos_ < text_.size() && text_[pos_] == c; }

    void expect(char c) {
        skip_ws();
        if (!peek_is(c)) fail({std::string("'") + c + "'"});
        ++pos_;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    double number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail({"number"});
        if (peek_is('.')) {
            ++pos_;
            std::size_t frac = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == frac) fail({"digit"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            std::size_t ex = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == ex) fail({"exponent digits"});
        }
        return std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr);
    }

    unsigned integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail({"integer"});
        return static_cast<unsigned>(std::strtoul(text_.substr(start, pos_ - start).c_str(), nullptr, 10));
    }

    std::string path_arg() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
        std::size_t end = pos_;
        while (end > start && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
        if (end == start) fail({"file path"});
        return text_.substr(start, end - start);
    }

    ArithFn expr() {
        skip_ws();
        std::size_t name_pos = pos_;
        std::string name = ident();
        if (name == "mu") return ArithFn::mu();
        if (name == "delta") return ArithFn::delta();
        if (name == "one") return ArithFn::xi(0.0);
        if (name == "id") return ArithFn::xi(1.0);
        if (name == "xi") {
            expect('(');
            double eps = number();
            expect(')');
            return ArithFn::xi(eps);
        }
        if (name == "jordan") {
            expect('(');
            double eps = number();
            expect(')');
            return ArithFn::jordan(eps);
        }
        if (name == "table") {
            expect('(');
            std::string path = path_arg();
            expect(')');
            return load_table_fn(path);
        }
        if (name == "conv") {
            expect('(');
            ArithFn a = expr();
            expect(',');
            ArithFn b = expr();
            expect(')');
            return ArithFn::conv(std::move(a), std::move(b));
        }
        if (name == "cpow") {
            expect('(');
            ArithFn a = expr();
            expect(',');
            unsigned l = integer();
            expect(')');
            return ArithFn::conv_power(std::move(a), l);
        }
        if (name == "ppow") {
            expect('(');
            ArithFn a = expr();
            expect(',');
            double r = number();
            expect(')');
            return ArithFn::pointwise_power(std::move(a), r);
        }
        if (name == "mupow") {
            expect('(');
            unsigned d = integer();
            expect(')');
            return ArithFn::conv_power(ArithFn::mu(), d);
        }
        pos_ = name_pos;
        fail({"mu", "delta", "one", "id", "xi", "jordan", "table", "conv", "cpow", "ppow", "mupow"});
    }
};

} // namespace

ArithFn parse_fn_expr(const std::string& text) { return Parser(text).parse(); }

} // namespace smithdiv
