#include <random>

#include "doctest.h"
#include "padyn/arith.hpp"
#include "padyn/errors.hpp"
#include "padyn/padic.hpp"
#include "test_support.hpp"

using namespace padyn;

namespace {

PadicElement integer(const FieldDescriptor& F, long n) { return PadicElement::from_integer(F, n); }

PadicElement sqrt5_over(const FieldDescriptor& F) { return *sqrt(integer(F, 5)); }

}  // namespace

TEST_CASE("make_field builds the tower and validates its inputs") {
    auto q2 = make_field(2, 1, 1, {}, 32);
    CHECK(q2.p() == 2);
    CHECK(q2.residue_size() == 2);
    CHECK(q2.precision() == 32);

    auto q2u = make_field(2, 2, 1, {}, 32);
    CHECK(q2u.unram_poly() == std::vector<long>{1, 1, 1});
    CHECK(q2u.residue_size() == 4);
    // 5 becomes a square once the residue field is F_4.
    CHECK(sqrt(integer(q2u, 5)).has_value());

    auto ram = make_field(2, 1, 2, std::vector<std::vector<long>>{{-2}, {0}, {1}}, 32);
    auto pi = PadicElement::uniformizer(ram);
    CHECK(pi.valuation() == 1);
    CHECK(integer(ram, 2).valuation() == 2);
    // pi^2 = 2
    CHECK(pi * pi == integer(ram, 2));

    CHECK(make_field(2, 3, 1).unram_poly() == std::vector<long>{1, 1, 0, 1});
    CHECK(make_field(3, 2, 1).unram_poly() == std::vector<long>{1, 0, 1});

    CHECK_THROWS_WITH_AS(make_field(4, 1, 1), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(make_field(2, 2, 1, {}, 16, std::vector<long>{1, 0, 1}), doctest::Contains("NotIrreducible"),
                         Error);
    CHECK_THROWS_WITH_AS(make_field(2, 1, 2, std::vector<std::vector<long>>{{-4}, {0}, {1}}),
                         doctest::Contains("NotEisenstein"), Error);
    CHECK_THROWS_WITH_AS(make_field(2, 1, 2, std::vector<std::vector<long>>{{2}, {1}, {1}}),
                         doctest::Contains("NotEisenstein"), Error);
    CHECK_THROWS_AS(make_field(2, 1, 2), Error);
}

TEST_CASE("field descriptors serialize to JSON and back") {
    auto F = make_field(3, 2, 2, std::vector<std::vector<long>>{{3, 0}, {3, 3}, {1, 0}}, 20);
    auto j = F.to_json();
    CHECK(j["p"] == 3);
    CHECK(j["unram_poly"] == nlohmann::json({1, 0, 1}));
    auto G = FieldDescriptor::from_json(j);
    CHECK(G.same_as(F));
    CHECK(G.to_json() == j);
}

TEST_CASE("ring arithmetic: small worked cases") {
    auto q2 = make_field(2, 1, 1, {}, 32);
    auto two = integer(q2, 1) + integer(q2, 1);
    CHECK(two == integer(q2, 2));
    CHECK(two.valuation() == 1);

    auto a = PadicElement::from_rational(q2, mpq_class(7, 3));
    CHECK((a + (-a)).is_zero());
    CHECK((a + (-a)).precision() == 32);

    // alpha = (1 + sqrt5)/2 and 1 - alpha = (1 - sqrt5)/2 multiply to -1.
    auto F = make_field(2, 2, 1, {}, 48);
    auto s = sqrt5_over(F);
    auto half = PadicElement::from_rational(F, mpq_class(1, 2));
    auto alpha = (integer(F, 1) + s) * half;
    auto beta = (integer(F, 1) - s) * half;
    CHECK(alpha * beta == integer(F, -1));
    CHECK(alpha * alpha - alpha - integer(F, 1) == PadicElement(F));

    CHECK_THROWS_WITH_AS(integer(q2, 1) + integer(F, 1), doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("inverses") {
    auto q2 = make_field(2, 1, 1, {}, 64);
    CHECK(inv(integer(q2, 1)) == integer(q2, 1));

    // Oracle: extended Euclid modulo 2^64.
    mpz_class modulus = pow_ui(2, 64), expected;
    mpz_class three = 3;
    mpz_invert(expected.get_mpz_t(), three.get_mpz_t(), modulus.get_mpz_t());
    auto i3 = inv(integer(q2, 3));
    CHECK(i3.coordinates()[0] % modulus == expected);
    CHECK(integer(q2, 3) * i3 == integer(q2, 1));
    // 3^{-1} = ...10101011 in base 2.
    auto digits = i3.integral_digits();
    std::vector<long> low;
    for (int i = 0; i < 8; ++i) low.push_back(digits[i].coeffs[0]);
    CHECK(low == std::vector<long>{1, 1, 0, 1, 0, 1, 0, 1});

    auto i2 = inv(integer(q2, 2));
    CHECK(i2.valuation() == -1);
    CHECK(i2 * integer(q2, 2) == integer(q2, 1));

    CHECK_THROWS_WITH_AS(inv(PadicElement(q2)), doctest::Contains("NotInvertibleAtPrecision"), Error);
    auto tiny = integer(q2, 0).reduced_precision(5);
    CHECK_THROWS_AS(inv(tiny), Error);
}

TEST_CASE("valuations") {
    auto q2 = make_field(2, 1, 1, {}, 32);
    CHECK(integer(q2, 8).valuation() == 3);
    CHECK_FALSE(PadicElement(q2).valuation().has_value());

    auto ram = make_field(2, 1, 2, std::vector<std::vector<long>>{{-2}, {0}, {1}}, 32);
    CHECK(integer(ram, 2).valuation() == 2);  // e * v_2(2)

    // sqrt5 - 1 = 2(alpha - 1) with alpha - 1 a unit, so the valuation is 1.
    auto F = make_field(2, 2, 1, {}, 32);
    auto s = sqrt5_over(F);
    auto alpha = (integer(F, 1) + s) * PadicElement::from_rational(F, mpq_class(1, 2));
    CHECK((alpha - integer(F, 1)).valuation() == 0);
    CHECK((s - integer(F, 1)).valuation() == 1);
    CHECK((s - integer(F, 1)) == integer(F, 2) * (alpha - integer(F, 1)));
}

TEST_CASE("residue map") {
    auto q2 = make_field(2, 1, 1, {}, 32);
    CHECK(integer(q2, 3).residue().coeffs == std::vector<long>{1});

    auto F = make_field(2, 2, 1, {}, 32);
    const auto& rf = F.residue_field();
    auto s = sqrt5_over(F);
    auto alpha = (integer(F, 1) + s) * PadicElement::from_rational(F, mpq_class(1, 2));
    auto r = alpha.residue();
    // r^2 = r + 1 and r is not in F_2.
    CHECK(rf.mul(r, r) == rf.add(r, rf.one()));
    CHECK(rf.index(r) >= 2);
    CHECK((integer(F, 2) * alpha).residue().is_zero());

    CHECK_THROWS_WITH_AS(inv(integer(q2, 2)).residue(), doctest::Contains("NotIntegral"), Error);
}

TEST_CASE("Hensel lifting") {
    auto F = make_field(2, 2, 1, {}, 40);
    auto t = PadicElement::unram_generator(F);
    std::vector<PadicElement> g{integer(F, -1), integer(F, -1), integer(F, 1)};  // X^2 - X - 1
    auto r = hensel_lift(g, t);
    CHECK(r.residue() == t.residue());
    CHECK(r * r - r - integer(F, 1) == PadicElement(F));
    auto s = sqrt5_over(F);
    auto half = PadicElement::from_rational(F, mpq_class(1, 2));
    auto alpha = (integer(F, 1) + s) * half;
    auto beta = (integer(F, 1) - s) * half;
    CHECK((r == alpha || r == beta));
    CHECK(r.precision() == 40);

    std::vector<PadicElement> h{PadicElement(F), integer(F, -1), integer(F, 1)};  // X^2 - X
    CHECK(hensel_lift(h, PadicElement(F)) == PadicElement(F));

    auto q2 = make_field(2, 1, 1, {}, 64);
    std::vector<PadicElement> k{integer(q2, -17), PadicElement(q2), integer(q2, 1)};
    auto root = hensel_lift(k, integer(q2, 1), 60);
    CHECK(root * root == integer(q2, 17));
    CHECK((root - integer(q2, 1)).valuation().value_or(99) >= 2);

    CHECK_THROWS_WITH_AS(hensel_lift(k, integer(q2, 2), 60), doctest::Contains("HenselConditionFailed"), Error);
    CHECK_THROWS_WITH_AS(hensel_lift(k, integer(q2, 1), 64), doctest::Contains("PrecisionExhausted"), Error);
    CHECK_THROWS_WITH_AS(hensel_lift(k, integer(q2, 1), 65), doctest::Contains("PrecisionExhausted"), Error);
}

TEST_CASE("square roots") {
    auto q2 = make_field(2, 1, 1, {}, 64);
    auto zero = sqrt(PadicElement(q2));
    REQUIRE(zero.has_value());
    CHECK(zero->is_zero());

    auto r17 = sqrt(integer(q2, 17));
    REQUIRE(r17.has_value());
    CHECK(*r17 * *r17 == integer(q2, 17));
    CHECK(r17->precision() >= 63);
    // canonical choice: the root that is 1 or 3 mod 8
    CHECK((r17->coordinates()[0] % 8 <= 3));

    CHECK_FALSE(sqrt(integer(q2, 5)).has_value());
    CHECK_FALSE(sqrt(integer(q2, 3)).has_value());
    CHECK_FALSE(sqrt(integer(q2, 2)).has_value());
    CHECK(sqrt(integer(q2, 4 * 17)).has_value());
    auto quarter = sqrt(PadicElement::from_rational(q2, mpq_class(17, 4)));
    REQUIRE(quarter.has_value());
    CHECK(quarter->valuation() == -1);

    auto F = make_field(2, 2, 1, {}, 32);
    CHECK(sqrt(integer(F, 5)).has_value());
    CHECK(sqrt(integer(F, -3)).has_value());
    CHECK_FALSE(sqrt(integer(F, 3)).has_value());

    auto q3 = make_field(3, 1, 1, {}, 30);
    CHECK(sqrt(integer(q3, 7)).has_value());
    CHECK_FALSE(sqrt(integer(q3, 2)).has_value());

    auto ram = make_field(2, 1, 2, std::vector<std::vector<long>>{{-2}, {0}, {1}}, 32);
    auto r2 = sqrt(integer(ram, 2));
    REQUIRE(r2.has_value());
    CHECK(r2->valuation() == 1);
    CHECK(*r2 * *r2 == integer(ram, 2));

    auto low = integer(q2, 5).reduced_precision(2);
    CHECK_THROWS_WITH_AS(sqrt(low), doctest::Contains("PrecisionTooLowToDecide"), Error);
}

TEST_CASE("text form") {
    auto q2 = make_field(2, 1, 1, {}, 8);
    CHECK(integer(q2, 5).to_string() == "1 + 1*pi^2 (mod pi^8)");
    CHECK(PadicElement::from_rational(q2, mpq_class(1, 2)).to_string() == "1*pi^-1 (mod pi^7)");
    CHECK(PadicElement(q2).to_string() == "0 (mod pi^8)");
    auto F = make_field(2, 2, 1, {}, 3);
    CHECK(PadicElement::unram_generator(F).to_string() == "t (mod pi^3)");
}

TEST_CASE("properties over random elements") {
    std::mt19937_64 rng(20261019);
    const std::vector<FieldDescriptor> fields{
        make_field(2, 1, 1, {}, 24),
        make_field(2, 2, 1, {}, 24),
        make_field(3, 2, 1, {}, 16),
        make_field(5, 1, 1, {}, 16),
        make_field(2, 1, 2, std::vector<std::vector<long>>{{2}, {2}, {1}}, 24),
        make_field(3, 2, 2, std::vector<std::vector<long>>{{3, 3}, {0, 3}, {1, 0}}, 16),
    };
    for (const auto& F : fields) {
        const auto& rf = F.residue_field();
        for (int trial = 0; trial < 60; ++trial) {
            auto a = testing::random_element(F, rng, 0, 6);
            auto b = testing::random_element(F, rng, 0, 6);
            auto va = a.valuation(), vb = b.valuation();
            auto sum = a + b;
            // ultrametric inequality, with equality when valuations differ
            if (va && vb) {
                long lo = std::min(*va, *vb);
                CHECK(sum.valuation().value_or(sum.precision()) >= lo);
                if (*va != *vb) CHECK(sum.valuation() == lo);
                CHECK((a * b).valuation() == *va + *vb);
            }
            // residue is a ring homomorphism
            CHECK(sum.residue() == rf.add(a.residue(), b.residue()));
            CHECK((a * b).residue() == rf.mul(a.residue(), b.residue()));
            // Frobenius fixes the residue field
            CHECK(rf.pow(a.residue(), rf.size()) == a.residue());
            // digits rebuild the element
            auto rebuilt = PadicElement::from_digits(F, a.integral_digits(), 0, a.precision());
            CHECK(rebuilt == a);
            if (a.is_unit()) CHECK(a * inv(a) == PadicElement::from_integer(F, 1));
        }
    }
}
