#include <random>

#include "doctest.h"
#include "padyn/errors.hpp"
#include "padyn/parse.hpp"
#include "test_support.hpp"

using namespace padyn;

TEST_CASE("polynomial grammar: dense, sparse and implicit products") {
    auto a = parse_quad_poly("x^4 + 2x + 1");
    CHECK(a.degree() == 4);
    CHECK(a[1] == QuadElement(2));
    CHECK(a[0] == QuadElement(1));
    CHECK(parse_quad_poly("1 + 2*x + 0*x^2 + x^4") == a);
    CHECK(parse_quad_poly("(x+1)(x-1)") == parse_quad_poly("x^2-1"));
    CHECK(parse_quad_poly("-x^2") == parse_quad_poly("0 - x*x"));
    CHECK(parse_quad_poly("X^2/2 + 3/4")[0] == QuadElement(mpq_class(3, 4)));
    CHECK(parse_quad_poly("x^2 + c", QuadElement(-1)) == parse_quad_poly("x^2-1"));

    auto w = parse_quad_poly("x^2 + (-1 + sqrt(-3))/2");
    CHECK(w[0] == QuadElement(mpq_class(-1, 2), mpq_class(1, 2), -3));

    CHECK_THROWS_WITH_AS(parse_quad_poly("x^2 + c"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_quad_poly("x^2 +"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_quad_poly("1/x"), doctest::Contains("non-constant"), Error);
    CHECK_THROWS_WITH_AS(parse_quad_poly("y^2"), doctest::Contains("unknown name"), Error);
    CHECK_THROWS_AS(parse_quad_poly("sqrt(2) + sqrt(3)"), Error);
}

TEST_CASE("quadratic constants") {
    CHECK(parse_quad("-71/48") == QuadElement(mpq_class(-71, 48)));
    CHECK(parse_quad("2i") == QuadElement(0, 2, -1));
    CHECK(parse_quad("sqrt(12)") == QuadElement(0, 2, 3));
    CHECK(parse_quad("sqrt(9/4)") == QuadElement(mpq_class(3, 2)));
    CHECK(parse_quad("sqrt(1/2)") == QuadElement(0, mpq_class(1, 2), 2));
    auto alpha = parse_quad("(1+sqrt(5))/2");
    CHECK(alpha * alpha - alpha == QuadElement(1));
    CHECK(parse_quad("i^2") == QuadElement(-1));
    CHECK(parse_quad("i^-1") == QuadElement(0, -1, -1));
}

TEST_CASE("symbolic parameter") {
    auto p = parse_symbolic_poly("x^2 + c");
    CHECK(p.degree() == 2);
    CHECK(p[0] == Poly<mpq_class>::x());
    CHECK(p[2] == Poly<mpq_class>(mpq_class(1)));
    CHECK(parse_symbolic_poly("x^2 + 3c/2 - 1")[0] == Poly<mpq_class>(std::vector<mpq_class>{-1, mpq_class(3, 2)}));
    CHECK_THROWS_AS(parse_symbolic_poly("x^2 + sqrt(5)"), Error);
}

TEST_CASE("p-adic text round trip") {
    std::mt19937_64 rng(7);
    for (auto F : {make_field(2, 1, 1, {}, 24), make_field(2, 2, 1, {}, 24), make_field(3, 2, 1, {}, 16),
                   make_field(2, 1, 2, std::vector<std::vector<long>>{{-2}, {0}, {1}}, 20)}) {
        for (int i = 0; i < 40; ++i) {
            auto x = testing::random_element(F, rng, -3, 4);
            std::string s = x.to_string();
            auto y = parse_padic(F, s);
            CHECK(y.to_string() == s);
            CHECK(y.precision() == x.precision());
        }
    }
    auto q2 = make_field(2, 1, 1, {}, 16);
    CHECK(parse_padic(q2, "1 + 1*pi^2 (mod pi^8)") == PadicElement::from_integer(q2, 5));
    CHECK(parse_padic(q2, "1 + 1*pi^2 (mod pi^8)").precision() == 8);
    CHECK(parse_padic(q2, "1/3") * PadicElement::from_integer(q2, 3) == PadicElement::from_integer(q2, 1));
    CHECK(parse_padic(q2, "sqrt(17)") * parse_padic(q2, "sqrt(17)") == PadicElement::from_integer(q2, 17));
    CHECK_THROWS_AS(parse_padic(q2, "sqrt(5)"), Error);
    CHECK_THROWS_AS(parse_padic(q2, "x + 1"), Error);
    CHECK_THROWS_WITH_AS(parse_padic(q2, "1 (mod pi^)"), doctest::Contains("ParseError"), Error);
}
