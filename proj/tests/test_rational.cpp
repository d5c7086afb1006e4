#include "fm/enclosure.hpp"
#include "fm/errors.hpp"
#include "fm/rational.hpp"

#include "doctest.h"

using fm::Enclosure;
using fm::Rational;

TEST_CASE("rational construction canonicalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), fm::DomainError);
}

TEST_CASE("rational parse") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("+7/21") == Rational(1, 3));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK_THROWS_AS(Rational::parse(""), fm::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), fm::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), fm::ParseError);
    CHECK_THROWS_AS(Rational::parse("2/"), fm::ParseError);
    CHECK_THROWS_AS(Rational::parse(" 1/2"), fm::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), fm::ParseError);
}

TEST_CASE("rational arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 7) / Rational(2, 7) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), fm::DomainError);
}

TEST_CASE("rational pow") {
    CHECK(Rational::pow(Rational(2), 10) == Rational(1024));
    CHECK(Rational::pow(Rational(2), -3) == Rational(1, 8));
    CHECK(Rational::pow(Rational(-2, 3), 2) == Rational(4, 9));
    CHECK(Rational::pow(Rational(0), 0) == Rational(1));
    CHECK(Rational::pow(Rational(5), 0) == Rational(1));
    CHECK_THROWS_AS(Rational::pow(Rational(0), -1), fm::DomainError);
}

TEST_CASE("rational floor and ceil") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(5).floor() == 5);
    CHECK(Rational(5).ceil() == 5);
}

TEST_CASE("rational formatting") {
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(-5).str() == "-5");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(1, 3).decimal(5) == "0.33333");
    CHECK(Rational(-1, 3).decimal(3) == "-0.333");
    CHECK(Rational(5, 4).decimal(2) == "1.25");
    CHECK(Rational(2).decimal(0) == "2");
    CHECK(Rational(1, 8).decimal() == "0.125000000000");
}

TEST_CASE("rational helpers") {
    CHECK(abs(Rational(-3, 2)) == Rational(3, 2));
    CHECK(min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
    CHECK(max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
    CHECK(Rational(0).is_zero());
    CHECK(Rational(-1, 2).sign() == -1);
    CHECK(Rational(4, 2).is_integer());
    CHECK_FALSE(Rational(1, 2).is_integer());
}

TEST_CASE("enclosure invariants") {
    const Enclosure e(Rational(1, 4), Rational(1, 2));
    CHECK(e.width() == Rational(1, 4));
    CHECK(e.midpoint() == Rational(3, 8));
    CHECK(e.contains(Rational(1, 3)));
    CHECK_FALSE(e.exact());
    CHECK(Enclosure(Rational(2)).exact());
    CHECK_THROWS_AS(Enclosure(Rational(1), Rational(0)), fm::DomainError);
}

TEST_CASE("enclosure arithmetic directions") {
    const Enclosure a(Rational(1), Rational(2));
    const Enclosure b(Rational(3), Rational(5));
    CHECK((a + b).lo == Rational(4));
    CHECK((a + b).hi == Rational(7));
    CHECK((b - a).lo == Rational(1));
    CHECK((b - a).hi == Rational(4));
    CHECK((Rational(-2) * a).lo == Rational(-4));
    CHECK((Rational(-2) * a).hi == Rational(-2));
    CHECK((a * b).lo == Rational(3));
    CHECK((a * b).hi == Rational(10));
    CHECK((b / Rational(2)).lo == Rational(3, 2));
    CHECK_THROWS_AS(b / Rational(0), fm::DomainError);
}

TEST_CASE("enclosure order predicates") {
    const Enclosure low(Rational(0), Rational(1, 4));
    const Enclosure high(Rational(1, 2), Rational(3, 4));
    CHECK(high.certainly_ge(low));
    CHECK(high.certainly_gt(low));
    CHECK_FALSE(low.certainly_ge(high));
    CHECK(high.certainly_ge(Rational(1, 2)));
    CHECK(low.certainly_le(Rational(1, 4)));
    CHECK(intersects(low, Enclosure(Rational(1, 4), Rational(1))));
    CHECK_FALSE(intersects(low, high));
    CHECK(hull(low, high).lo == Rational(0));
    CHECK(hull(low, high).hi == Rational(3, 4));
    CHECK(meet(high, Enclosure(Rational(0), Rational(5, 8))).hi == Rational(5, 8));
    CHECK_THROWS_AS(meet(low, high), fm::DomainError);
}
