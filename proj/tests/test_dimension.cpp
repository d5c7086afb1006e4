#include "fm/dimension.hpp"
#include "fm/errors.hpp"

#include "doctest.h"

using fm::Dimension;
using fm::Enclosure;
using fm::Rational;

TEST_CASE("nth root brackets") {
    const Enclosure s = fm::nth_root_bracket(Rational(2), 2);
    CHECK(s.lo * s.lo <= Rational(2));
    CHECK(s.hi * s.hi >= Rational(2));
    CHECK(s.width() <= Rational::pow(Rational(2), -40));

    const Enclosure c = fm::nth_root_bracket(Rational(27), 3);
    CHECK(c.contains(Rational(3)));

    CHECK(fm::nth_root_bracket(Rational(0), 5).contains(Rational(0)));
}

TEST_CASE("rational pow brackets") {
    const Enclosure e = fm::rational_pow_bracket(Rational(4), Rational(3, 2));
    CHECK(e.contains(Rational(8)));
    const Enclosure inv = fm::rational_pow_bracket(Rational(9), Rational(-1, 2));
    CHECK(inv.contains(Rational(1, 3)));
}

TEST_CASE("cantor dimension is irrational and well ordered") {
    const Dimension d(Rational(1, 3), Rational(1, 2)); // log 2 / log 3
    CHECK_FALSE(d.exact_value().has_value());
    CHECK(d.compare(Rational(3, 5)) > 0);   // d > 0.6
    CHECK(d.compare(Rational(19, 30)) < 0); // d < 0.6333...
    CHECK(d.compare(Rational(12, 19)) < 0); // tighter: d < 0.63157...
    CHECK(d.compare(Rational(0)) > 0);

    const Enclosure br = d.bracket();
    CHECK(br.lo < br.hi);
    CHECK(br.lo > Rational(3, 5));
    CHECK(br.hi < Rational(2, 3));
}

TEST_CASE("quarter dimension is exactly one half") {
    const Dimension d(Rational(1, 4), Rational(1, 2));
    REQUIRE(d.exact_value().has_value());
    CHECK(*d.exact_value() == Rational(1, 2));
    CHECK(d.compare(Rational(1, 2)) == 0);
    CHECK(d.bracket().exact());
    CHECK(d.bracket().lo == Rational(1, 2));
}

TEST_CASE("dimension powers") {
    const Dimension half(Rational(1, 4), Rational(1, 2));
    CHECK(half.pow(Rational(9)).contains(Rational(3)));
    CHECK(half.pow_reciprocal(Rational(4)).contains(Rational(1, 2)));
    CHECK(half.pow(Rational(1, 4)).contains(Rational(1, 2)));

    const Dimension d(Rational(1, 3), Rational(1, 2));
    // rho^d = p holds by definition.
    CHECK(d.pow(Rational(1, 3)).contains(Rational(1, 2)));
    CHECK(d.pow_reciprocal(Rational(1, 3)).contains(Rational(2)));
    const Enclosure twelve = d.pow_reciprocal(Rational(12));
    CHECK(twelve.lo > Rational(1, 5));
    CHECK(twelve.hi < Rational(1, 4));
}

TEST_CASE("dimension comparison") {
    const Dimension cantor(Rational(1, 3), Rational(1, 2));
    const Dimension quarter(Rational(1, 4), Rational(1, 2));
    CHECK(cantor.compare(quarter) > 0);
    CHECK(quarter.compare(cantor) < 0);
    CHECK(cantor.compare(cantor) == 0);

    // Same dimension through multiplicatively dependent data: (1/9)^d = 1/4.
    const Dimension squared(Rational(1, 9), Rational(1, 4));
    CHECK(cantor.same_as(squared));

    const Dimension third(Rational(1, 8), Rational(1, 2));
    CHECK(third.compare(Rational(1, 3)) == 0);
    CHECK(quarter.compare(third) > 0);
}

TEST_CASE("dimension rejects degenerate data") {
    CHECK_THROWS_AS(Dimension(Rational(1, 2), Rational(1, 2)), fm::DomainError);
    CHECK_THROWS_AS(Dimension(Rational(0), Rational(1, 2)), fm::DomainError);
    CHECK_THROWS_AS(Dimension(Rational(2, 3), Rational(1, 3)), fm::DomainError);
}
