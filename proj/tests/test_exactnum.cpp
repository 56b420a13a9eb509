#include "paclab/exact/digit_stream.hpp"
#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <thread>
#include <vector>

using namespace paclab;

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(6, 4);
    REQUIRE(a == Rational(3, 2));
    REQUIRE(a.numerator() == 3);
    REQUIRE(a.denominator() == 2);
    REQUIRE((a + Rational(1, 2)) == Rational(2));
    REQUIRE((a * Rational(2, 3)) == Rational(1));
    REQUIRE((-a).str() == "-3/2");
    REQUIRE(Rational(7, 2).floor() == 3);
    REQUIRE(Rational(-1, 2).floor() == -1);
    REQUIRE(Rational(-3, -6) == Rational(1, 2));
    REQUIRE(Rational(5).str() == "5");
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(2, 3).abs() == Rational(2, 3));
    REQUIRE(Rational(-2, 3).abs() == Rational(2, 3));
}

TEST_CASE("champernowne streams concatenate the integers") {
    DigitStream c10 = champernowne_stream(10);
    REQUIRE(c10.base() == 10);
    REQUIRE(c10.prefix(20) ==
            std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1, 1, 2, 1, 3, 1, 4, 1});

    DigitStream c4 = champernowne_stream(4);
    REQUIRE(c4.base() == 4);
    // 1 2 3 10 11 12 ... written in base 4
    REQUIRE(c4.prefix(12) == std::vector<int>{1, 2, 3, 1, 0, 1, 1, 1, 2, 1, 3, 2});

    SECTION("prefixes are memoized consistently under concurrent access") {
        DigitStream shared = champernowne_stream(10);
        std::vector<int> a, b;
        std::thread t1([&] { a = shared.prefix(4000); });
        std::thread t2([&] { b = shared.prefix(4000); });
        t1.join();
        t2.join();
        REQUIRE(a == b);
        REQUIRE(a == champernowne_stream(10).prefix(4000));
    }
}

TEST_CASE("rational digit expansions have minimal preperiod and nonempty period") {
    RationalDigits third = digits_of_rational(Rational(1, 3), 10);
    REQUIRE(third.preperiod.empty());
    REQUIRE(third.period == std::vector<int>{3});

    RationalDigits sixth = digits_of_rational(Rational(1, 6), 10);
    REQUIRE(sixth.preperiod == std::vector<int>{1});
    REQUIRE(sixth.period == std::vector<int>{6});

    RationalDigits quarter = digits_of_rational(Rational(1, 4), 10);
    REQUIRE(quarter.preperiod == std::vector<int>{2, 5});
    REQUIRE(quarter.period == std::vector<int>{0});

    RationalDigits seventh = digits_of_rational(Rational(1, 7), 10);
    REQUIRE(seventh.preperiod.empty());
    REQUIRE(seventh.period == std::vector<int>{1, 4, 2, 8, 5, 7});

    SECTION("value_of_digits inverts the expansion") {
        for (long long num = 0; num < 40; ++num) {
            Rational r(num, 41);
            REQUIRE(value_of_digits(digits_of_rational(r, 10), 10) == r);
            REQUIRE(value_of_digits(digits_of_rational(r, 4), 4) == r);
        }
    }

    SECTION("arguments outside [0,1) are rejected") {
        REQUIRE_THROWS_AS(digits_of_rational(Rational(5, 4), 10), std::domain_error);
        REQUIRE_THROWS_AS(digits_of_rational(Rational(-1, 4), 10), std::domain_error);
        REQUIRE_THROWS_AS(digits_of_rational(Rational(1), 10), std::domain_error);
    }

    SECTION("prefix helper matches the expansion") {
        REQUIRE(rational_digit_prefix(Rational(1, 7), 10, 12) ==
                std::vector<int>{1, 4, 2, 8, 5, 7, 1, 4, 2, 8, 5, 7});
        REQUIRE(rational_digit_prefix(Rational(1, 3), 4, 5) ==
                std::vector<int>{1, 1, 1, 1, 1});
    }
}

TEST_CASE("offset_add shifts a stream by a terminating rational") {
    DigitStream c10 = champernowne_stream(10);
    DigitStream shifted = offset_add(c10, Rational(1, 4));
    REQUIRE(shifted.prefix(8) == std::vector<int>{3, 7, 3, 4, 5, 6, 7, 8});

    DigitStream down = offset_add(champernowne_stream(4), Rational(-1, 4));
    REQUIRE(down.prefix(6) == std::vector<int>{0, 2, 3, 1, 0, 1});

    SECTION("non-terminating offsets are rejected") {
        REQUIRE_THROWS_AS(offset_add(champernowne_stream(4), Rational(1, 3)),
                          std::domain_error);
    }
}

TEST_CASE("real values compare through certified enclosures") {
    RealValue c4{champernowne_stream(4)};
    REQUIRE(compare(c4, RealValue(Rational(1, 2))) == CompareResult::Less);
    REQUIRE(compare(c4, RealValue(Rational(2, 5))) == CompareResult::Greater);
    REQUIRE(compare(RealValue(Rational(1, 3)), RealValue(Rational(1, 3))) ==
            CompareResult::Equal);
    REQUIRE(compare(RealValue(Rational(1, 3)), RealValue(Rational(2, 3))) ==
            CompareResult::Less);
}

TEST_CASE("decimal_string truncates exactly") {
    REQUIRE(decimal_string(RealValue(Rational(1, 3)), 5) == "0.33333");
    REQUIRE(decimal_string(RealValue(Rational(1, 4)), 4) == "0.2500");
    RealValue c4{champernowne_stream(4)};
    REQUIRE(decimal_string(c4, 10) == "0.4261111111");
}

TEST_CASE("mobius and affine images act as expected on rationals") {
    RealValue half(Rational(1, 2));
    RealValue two = half.mobius_image(Rational(2), Rational(1), Rational(0), Rational(1));
    REQUIRE(two.is_rational());
    REQUIRE(two.as_rational() == Rational(2));

    RealValue img = RealValue(Rational(1, 3)).affine_image(Rational(1, 2), Rational(1, 4));
    REQUIRE(img.as_rational() == Rational(5, 12));

    SECTION("stream mobius images refine to correct comparisons") {
        RealValue c4{champernowne_stream(4)};
        // (1 - 3 c/.. ) style image used by the parameter maps: d = (1-3x)/(3x)
        RealValue d = c4.mobius_image(Rational(-3), Rational(1), Rational(3), Rational(0));
        // c is about 0.42611, so d is about -0.2177
        REQUIRE(compare(d, RealValue(Rational(0))) == CompareResult::Less);
        REQUIRE(compare(d, RealValue(Rational(-1, 4))) == CompareResult::Greater);
    }
}
