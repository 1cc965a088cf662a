#include "smithdiv/errors.hpp"
#include "smithdiv/parser.hpp"

#include <doctest.h>

using namespace smithdiv;

TEST_CASE("parse builtins and sugar") {
    CHECK(parse_fn_expr("mu") == ArithFn::mu());
    CHECK(parse_fn_expr("delta") == ArithFn::delta());
    CHECK(parse_fn_expr("one") == ArithFn::xi(0));
    CHECK(parse_fn_expr("id") == ArithFn::xi(1));
    CHECK(parse_fn_expr("xi(2.5)") == ArithFn::xi(2.5));
    CHECK(parse_fn_expr("jordan(1.5)") == ArithFn::jordan(1.5));
    CHECK(parse_fn_expr("mupow(3)") == ArithFn::conv_power(ArithFn::mu(), 3));
}

TEST_CASE("parse composite expressions") {
    ArithFn f = parse_fn_expr("conv(cpow(xi(1),2), mupow(1))");
    CHECK(f == ArithFn::conv(ArithFn::conv_power(ArithFn::xi(1), 2),
                             ArithFn::conv_power(ArithFn::mu(), 1)));
    CHECK(f.multiplicative() == Multiplicative::yes);

    ArithFn g = parse_fn_expr("ppow(jordan(1.5), 0.5)");
    CHECK(g == ArithFn::pointwise_power(ArithFn::jordan(1.5), 0.5));
    CHECK(g.multiplicative() == Multiplicative::yes);
}

TEST_CASE("whitespace insensitivity") {
    CHECK(parse_fn_expr("  conv( xi( 1 ) ,  mu )  ") ==
          ArithFn::conv(ArithFn::xi(1), ArithFn::mu()));
}

TEST_CASE("round trip: print then parse gives an identical tree") {
    for (const char* src : {"mu", "delta", "xi(0.25)", "jordan(2)",
                            "conv(cpow(xi(1), 2), cpow(mu, 1))",
                            "ppow(conv(xi(0.5), jordan(1.5)), 0.75)"}) {
        ArithFn f = parse_fn_expr(src);
        ArithFn g = parse_fn_expr(f.to_string());
        CHECK(f == g);
        CHECK(f.to_string() == g.to_string());
    }
}

TEST_CASE("error positions are exact (1-based byte offsets)") {
    struct Case {
        const char* text;
        std::size_t offset;
    };
    // Ten-case corpus; offsets verified by hand against the grammar.
    const Case cases[] = {
        {"conv(xi(1)", 11},      // expected ','
        {"", 1},                 // expected a function
        {"xi", 3},               // expected '('
        {"xi(", 4},              // expected number
        {"xi(1", 5},             // expected ')'
        {"frob(2)", 1},          // unknown function name
        {"conv(mu,)", 9},        // expected a function
        {"mu extra", 4},         // expected end of input
        {"cpow(mu, x)", 10},     // expected integer
        {"xi(1.)", 6},           // expected digit after '.'
    };
    for (const auto& c : cases) {
        INFO("input: '" << c.text << "'");
        try {
            parse_fn_expr(c.text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() == c.offset);
            CHECK_FALSE(e.expected().empty());
        }
    }
}

TEST_CASE("no partial consumption") {
    CHECK_THROWS_AS(parse_fn_expr("mu,mu"), ParseError);
    CHECK_THROWS_AS(parse_fn_expr("xi(1))"), ParseError);
}

TEST_CASE("table file errors surface the path") {
    try {
        parse_fn_expr("table(/nonexistent/file.json)");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/file.json") != std::string::npos);
    }
}
