#include <random>
#include <set>

#include "doctest.h"
#include "padyn/errors.hpp"
#include "padyn/functional_graph.hpp"
#include "padyn/number_field.hpp"

using namespace padyn;

namespace {

QuadElement q(long D, mpq_class a, mpq_class b = 0) {
    a.canonicalize();
    b.canonicalize();
    return QuadElement(a, b, D);
}

std::vector<std::string> values(const Classification& c) {
    std::vector<std::string> out;
    for (const auto& p : c.points) out.push_back(p.value.to_string() + "@" + std::to_string(p.period));
    return out;
}

}  // namespace

TEST_CASE("quadratic fields") {
    CHECK_THROWS_WITH_AS(QuadField(12), doctest::Contains("NotSquarefree"), Error);
    CHECK_THROWS_WITH_AS(QuadField(1), doctest::Contains("InvalidArgument"), Error);
    CHECK_THROWS_WITH_AS(QuadField(0), doctest::Contains("InvalidArgument"), Error);
    QuadField K(5);
    CHECK(K.adopt(QuadElement(3)) == q(5, 3));
    CHECK_THROWS_WITH_AS(K.adopt(QuadElement::sqrt_delta(-1)), doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("splitting of 2") {
    auto s17 = splitting_of_two(QuadField(17));
    CHECK(s17.kind == SplitKind::Split);
    CHECK(s17.f == 1);
    CHECK(s17.e == 1);
    auto sm3 = splitting_of_two(QuadField(-3));
    CHECK(sm3.kind == SplitKind::Inert);
    CHECK(sm3.f == 2);
    auto s2 = splitting_of_two(QuadField(2));
    CHECK(s2.kind == SplitKind::Ramified);
    CHECK(s2.f == 1);
    CHECK(s2.e == 2);
    CHECK(splitting_of_two(QuadField(-1)).kind == SplitKind::Ramified);
    CHECK(splitting_of_two(QuadField(3)).kind == SplitKind::Ramified);
    CHECK(splitting_of_two(QuadField(5)).kind == SplitKind::Inert);
    CHECK(splitting_of_two(QuadField(33)).kind == SplitKind::Split);
    CHECK(splitting_of_two(QuadField(-7)).kind == SplitKind::Split);

    // The chosen square root is a square root, and the two primes use opposite ones.
    auto a = splitting_of_two(QuadField(17)), b = splitting_of_two(QuadField(17), 64, true);
    auto ra = *a.embedding.root(), rb = *b.embedding.root();
    CHECK(ra * ra == PadicElement::from_integer(a.completion, 17));
    CHECK(ra + rb == PadicElement(a.completion));
    CHECK(ra.coordinates()[0] % 8 == 1);
}

TEST_CASE("valuation at the prime above 2") {
    QuadField Km3(-3), K2(2), Ki(-1), K17(17);
    auto dm3 = splitting_of_two(Km3), d2 = splitting_of_two(K2), di = splitting_of_two(Ki);
    CHECK(valuation_at_2(Km3, q(-3, mpq_class(-1, 2), mpq_class(1, 2)), dm3) == 0);
    CHECK(valuation_at_2(Km3, q(-3, 4), dm3) == 2);
    CHECK(valuation_at_2(K2, K2.sqrt_delta(), d2) == 1);
    CHECK(valuation_at_2(K2, q(2, 2), d2) == 2);
    CHECK(valuation_at_2(Ki, q(-1, 1, 1), di) == 1);
    CHECK(valuation_at_2(Ki, q(-1, mpq_class(1, 2)), di) == -2);
    CHECK_FALSE(valuation_at_2(Ki, q(-1, 0), di).has_value());

    // (1 + sqrt 17)/2 has norm -4: one prime sees a unit, the other v = 2.
    auto x = q(17, mpq_class(1, 2), mpq_class(1, 2));
    CHECK(valuation_at_2(K17, x, splitting_of_two(K17)) == 0);
    CHECK(valuation_at_2(K17, x, splitting_of_two(K17, 64, true)) == 2);
    CHECK(valuation_at_2(K17, q(17, 3, 0), splitting_of_two(K17)) == 0);
    CHECK(valuation_at_2(K17, q(17, mpq_class(3, 8), 0), splitting_of_two(K17)) == -3);
}

TEST_CASE("exact square roots") {
    QuadField K5(5), Ki(-1), K2(2);
    CHECK(is_square(K5, QuadElement(9)) == q(5, 3));
    CHECK(is_square(K5, QuadElement(5)) == K5.sqrt_delta());
    CHECK(is_square(K5, q(5, mpq_class(7, 2), mpq_class(3, 2))) == q(5, mpq_class(3, 2), mpq_class(1, 2)));
    CHECK_FALSE(is_square(K5, QuadElement(2)).has_value());
    CHECK_FALSE(is_square(K5, q(5, mpq_class(1, 2), mpq_class(-1, 2))).has_value());
    CHECK(is_square(Ki, QuadElement(-1)) == Ki.sqrt_delta());
    CHECK(is_square(Ki, q(-1, 0, 2)) == q(-1, 1, 1));
    CHECK(is_square(K2, QuadElement(mpq_class(1, 2))) == q(2, 0, mpq_class(1, 2)));
    CHECK(is_square(K2, QuadElement(0)) == q(2, 0));

    // Squares of random elements are recognised, non-squares times a square are not.
    std::mt19937_64 rng(7);
    for (long D : {-1L, 2L, 5L, -3L, 17L, 33L}) {
        QuadField K(D);
        for (int i = 0; i < 40; ++i) {
            auto w = q(D, mpq_class(long(rng() % 41) - 20, long(rng() % 5) + 1), mpq_class(long(rng() % 41) - 20, 3));
            auto r = is_square(K, w * w);
            REQUIRE(r.has_value());
            CHECK((*r == w || *r == -w));
            CHECK((*r) * (*r) == w * w);
        }
    }
}

TEST_CASE("classification of X^2 + c over quadratic fields") {
    SUBCASE("Q(sqrt 5), c = -1: two fixed points and a 2-cycle") {
        auto r = classify_quadratic(QuadField(5), QuadElement(-1));
        CHECK(values(r) == std::vector<std::string>{"1/2 - 1/2*sqrt(5)@1", "1/2 + 1/2*sqrt(5)@1", "-1@2", "0@2"});
        CHECK(r.kind == SplitKind::Inert);
        CHECK(r.v_c == 0);
        CHECK(r.local_points.size() == 4);
        CHECK_FALSE(r.period4_searched);
        CHECK(r.all_checks_pass());
    }
    SUBCASE("Q(sqrt -3), c = -1: only the 2-cycle") {
        auto r = classify_quadratic(QuadField(-3), QuadElement(-1));
        CHECK(values(r) == std::vector<std::string>{"-1@2", "0@2"});
        CHECK(r.local_points.size() == 4);
        CHECK(r.all_checks_pass());
    }
    SUBCASE("c not integral at 2") {
        CHECK_THROWS_WITH_AS(classify_quadratic(QuadField(33), QuadElement(mpq_class(-71, 48))),
                             doctest::Contains("NotIntegralAt2"), Error);
        CHECK_THROWS_WITH_AS(classify_quadratic(QuadField(5), QuadElement(mpq_class(-1, 2))),
                             doctest::Contains("-1/2"), Error);
    }
    SUBCASE("Q(i), c = 2i: v(c) > 0 and 1 - 8i is not a square") {
        auto r = classify_quadratic(QuadField(-1), q(-1, 0, 2));
        CHECK(r.v_c == 2);
        CHECK(r.points.empty());
        CHECK(r.all_checks_pass());
    }
    SUBCASE("Q(i), c = 0: fixed points 0 and 1") {
        auto r = classify_quadratic(QuadField(-1), QuadElement(0));
        CHECK_FALSE(r.v_c.has_value());
        CHECK(values(r) == std::vector<std::string>{"0@1", "1@1"});
        CHECK(r.all_checks_pass());
    }
    SUBCASE("Q(sqrt -3), c = 0: the cube roots of unity form a 2-cycle") {
        auto r = classify_quadratic(QuadField(-3), QuadElement(0));
        CHECK(values(r) ==
              std::vector<std::string>{"0@1", "1@1", "-1/2 - 1/2*sqrt(-3)@2", "-1/2 + 1/2*sqrt(-3)@2"});
        CHECK(r.all_checks_pass());
    }
    SUBCASE("inert, c outside F_2 mod 2: period-4 search runs") {
        auto r = classify_quadratic(QuadField(5), q(5, mpq_class(1, 2), mpq_class(1, 2)));
        CHECK(r.period4_searched);
        for (const auto& lp : r.local_points) CHECK(lp.exact_period == 4);
        CHECK(r.all_checks_pass());
    }
}

TEST_CASE("classification properties over random integral c") {
    std::mt19937_64 rng(2024);
    for (long D : {-1L, 2L, 3L, -2L, 5L, -3L, 13L, 17L, -7L, 21L}) {
        QuadField K(D);
        const bool inert = ((D % 8) + 8) % 8 == 5;
        for (int i = 0; i < 12; ++i) {
            long a = long(rng() % 21) - 10, b = long(rng() % 21) - 10;
            // a + b w is integral for w = sqrt D, or (1 + sqrt D)/2 when D = 1 mod 4
            QuadElement w = ((D % 4) + 4) % 4 == 1 ? q(D, mpq_class(1, 2), mpq_class(1, 2)) : K.sqrt_delta();
            QuadElement c = q(D, a) + q(D, b) * w;
            auto r = classify_quadratic(K, c, 48);
            INFO("D = " << D << ", c = " << c);
            CHECK(r.all_checks_pass());
            CHECK(r.points.size() != 3);
            CHECK(r.points.size() <= (inert ? 4u : 2u));
            for (const auto& p : r.points) {
                QuadElement y = p.value;
                for (int n = 0; n < p.period; ++n) y = y * y + c;
                CHECK(y == p.value);
            }
        }
    }
}

TEST_CASE("no 3-cycles when 2 is inert") {
    auto cert = three_cycle_obstruction();
    CHECK(cert.verified());
    REQUIRE(cert.evaluations.size() == 4);
    auto F4 = make_field(2, 2, 1).residue_field();
    // tau = 0 -> 1, tau = 1 -> 1, tau = t -> t^2 = t + 1, tau = t + 1 -> t
    CHECK(F4.to_string(cert.evaluations[0].second) == F4.to_string(F4.one()));
    CHECK(F4.to_string(cert.evaluations[1].second) == F4.to_string(F4.one()));
    auto t = F4.generator();
    CHECK(F4.index(cert.evaluations[2].second) == F4.index(F4.mul(t, t)));
    for (const auto& [v, vc] : cert.branch_samples) CHECK(vc == 2 * v - 2);
}

TEST_CASE("preperiodic portraits") {
    SUBCASE("Q(i), c = 0") {
        auto P = compute_portrait(QuadField(-1), QuadElement(0));
        CHECK(P.label == "5(1,1)");
        CHECK(P.vertices.size() == 5);
        CHECK(P.depth == 2);
    }
    SUBCASE("Q(sqrt 5), c = -1") {
        auto P = compute_portrait(QuadField(5), QuadElement(-1));
        CHECK(P.cycle_lengths == std::vector<int>{2, 1, 1});
        CHECK(P.label == "7(2,1,1)");
    }
    SUBCASE("Q(sqrt -3), c = 0") {
        auto P = compute_portrait(QuadField(-3), QuadElement(0));
        CHECK(P.label == "7(2,1,1)");
    }
    SUBCASE("no periodic points") {
        auto P = compute_portrait(QuadField(-1), QuadElement(1));
        CHECK(P.label == "0");
        CHECK(P.vertices.empty());
    }
    SUBCASE("depth cap") {
        CHECK_THROWS_WITH_AS(compute_portrait(QuadField(-1), QuadElement(0), 1), doctest::Contains("DepthCapReached"),
                             Error);
        CHECK_NOTHROW(compute_portrait(QuadField(-1), QuadElement(0), 2));
    }
    SUBCASE("hash separates shapes and ignores the field") {
        auto a = compute_portrait(QuadField(5), QuadElement(-1));
        auto b = compute_portrait(QuadField(-3), QuadElement(0));
        auto c = compute_portrait(QuadField(-1), QuadElement(0));
        CHECK(a.graph_hash.size() == 16);
        CHECK(a.label == b.label);
        CHECK(a.graph_hash != b.graph_hash);  // same label, different trees
        CHECK(a.graph_hash != c.graph_hash);
        CHECK(compute_portrait(QuadField(-7), QuadElement(0)).graph_hash ==
              compute_portrait(QuadField(2), QuadElement(0)).graph_hash);
    }
    SUBCASE("closure and orbits") {
        for (long c : {-2L, -1L, 0L, 1L, 2L, 3L}) {
            for (long D : {-1L, -3L, 5L, 2L}) {
                auto P = compute_portrait(QuadField(D), QuadElement(c));
                std::vector<std::uint64_t> img(P.vertices.size());
                for (auto [x, y] : P.edges) {
                    CHECK(P.vertices[x] * P.vertices[x] + QuadElement(c) == P.vertices[y]);
                    img[x] = y;
                }
                auto g = analyze_functional_graph(img);
                auto cls = classify_quadratic(QuadField(D), QuadElement(c));
                CHECK(g.periodic_count() == cls.points.size());
            }
        }
    }
    CHECK(strip_label_suffix("5(1,1)a") == "5(1,1)");
    CHECK(strip_label_suffix("5(1,1)a/b") == "5(1,1)");
    CHECK(strip_label_suffix("0") == "0");
    auto dot = portrait_dot(compute_portrait(QuadField(-1), QuadElement(0)), "Q(i)");
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("label=\"5(1,1)\"") != std::string::npos);
}
