#include "fm/cantor.hpp"

#include "fm/errors.hpp"

#include "doctest.h"

#include <vector>

using fm::OpenInterval;
using fm::Rational;
using fm::TernaryPoint;

namespace {

Rational q(const std::string& text) { return Rational::parse(text); }

} // namespace

TEST_CASE("ternary points and their staircase values") {
    const TernaryPoint p{{1, 0, 1}, 0};
    CHECK(p.value() == q("20/27"));
    CHECK(fm::cantor_value(p) == q("5/8"));

    const TernaryPoint with_tail{{1, 0, 1}, 1};
    CHECK(with_tail.value() == q("7/9"));
    CHECK(fm::cantor_value(with_tail) == q("3/4"));

    const TernaryPoint origin{{}, 0};
    CHECK(origin.value() == q("0"));
    CHECK(fm::cantor_value(origin) == q("0"));
    const TernaryPoint one{{}, 1};
    CHECK(one.value() == q("1"));
    CHECK(fm::cantor_value(one) == q("1"));

    CHECK_THROWS_AS(TernaryPoint({{2}, 0}).value(), fm::DomainError);
    CHECK_THROWS_AS(fm::cantor_value(TernaryPoint{{0, 1}, 3}), fm::DomainError);
}

TEST_CASE("toy gap at the first level") {
    const fm::ToyGap gap = fm::toy_gap_construct({}, 1);
    CHECK(gap.x.value() == q("2/3"));
    CHECK(gap.l.value() == q("1/3"));
    CHECK(gap.r.value() == q("1"));
    CHECK(gap.image_gap == OpenInterval(q("1/2"), q("5/8")));
    CHECK(gap.average == q("5/8"));
}

TEST_CASE("toy gap below a prefix") {
    const fm::ToyGap gap = fm::toy_gap_construct({0}, 2);
    CHECK(gap.x.value() == q("2/9"));
    CHECK(gap.l.value() == q("1/9"));
    CHECK(gap.r.value() == q("1/3"));
    CHECK(gap.x.value() - gap.l.value() == q("1/9"));
    CHECK(gap.r.value() - gap.x.value() == q("1/9"));
    CHECK(gap.image_gap == OpenInterval(q("1/4"), q("5/16")));
    CHECK(gap.average == gap.image_gap.b);

    CHECK_THROWS_AS(fm::toy_gap_construct({}, 2), fm::DomainError);
    CHECK_THROWS_AS(fm::toy_gap_construct({1}, 1), fm::DomainError);
    CHECK_THROWS_AS(fm::toy_gap_construct({2}, 2), fm::DomainError);
}

TEST_CASE("pattern scan") {
    const fm::PatternScan scan = fm::pattern_scan(q("9/16"), 8);
    CHECK(scan.digits == std::vector<int>{1, 0, 0, 1, 0, 0, 0, 0});
    CHECK(scan.positions == std::vector<std::size_t>{1, 4});
    CHECK(scan.dyadic);

    const fm::PatternScan third = fm::pattern_scan(q("1/3"), 24);
    CHECK(third.positions.empty());
    CHECK_FALSE(third.dyadic);

    const fm::PatternScan half = fm::pattern_scan(q("1/2"), 3);
    CHECK(half.digits == std::vector<int>{1, 0, 0});
    CHECK(half.positions == std::vector<std::size_t>{1});

    const fm::PatternScan custom =
        fm::pattern_scan(q("1/3"), 6, fm::BinaryPattern{{0, 1}});
    CHECK(custom.positions == std::vector<std::size_t>{1, 3, 5});

    CHECK_THROWS_AS(fm::pattern_scan(q("1/2"), 2), fm::DomainError);
    CHECK_THROWS_AS(fm::pattern_scan(q("3/2"), 8), fm::DomainError);
    CHECK_THROWS_AS(fm::pattern_scan(q("-1/10"), 8), fm::DomainError);
    CHECK_THROWS_AS(fm::pattern_scan(q("1/2"), 8, fm::BinaryPattern{{}}), fm::DomainError);
    CHECK_THROWS_AS(fm::pattern_scan(q("1/2"), 8, fm::BinaryPattern{{1, 2}}), fm::DomainError);
}

TEST_CASE("excluded interval cover grows by blocks of three") {
    const fm::ExcludedCover one = fm::excluded_interval_cover(1);
    REQUIRE(one.items.size() == 1);
    CHECK(one.items[0].start == 1);
    CHECK(one.items[0].prefix.empty());
    CHECK(one.items[0].image == OpenInterval(q("1/2"), q("5/8")));
    CHECK(one.covered == q("1/8"));
    CHECK(one.residual == q("7/8"));

    const fm::ExcludedCover four = fm::excluded_interval_cover(4);
    REQUIRE(four.items.size() == 8);
    CHECK(four.items[1].start == 4);
    CHECK(four.items[1].prefix == std::vector<int>{0, 0, 0});
    CHECK(four.items[1].image == OpenInterval(q("1/16"), q("5/64")));
    CHECK(four.covered == q("15/64"));
    CHECK(four.residual == q("49/64"));

    // k_max values inside a block round down to the last started block.
    const fm::ExcludedCover five = fm::excluded_interval_cover(5);
    CHECK(five.items.size() == four.items.size());
    CHECK(five.residual == four.residual);

    CHECK_THROWS_AS(fm::excluded_interval_cover(0), fm::DomainError);
}

TEST_CASE("excluded interval cover at depth twelve") {
    const fm::ExcludedCover cover = fm::excluded_interval_cover(12);
    CHECK(cover.items.size() == 400);
    CHECK(cover.residual == q("2401/4096"));
    CHECK(cover.covered + cover.residual == q("1"));

    std::vector<OpenInterval> images;
    images.reserve(cover.items.size());
    for (const auto& item : cover.items) images.push_back(item.image);
    CHECK(fm::overlap_multiplicity(images) <= 1);

    const fm::ExcludedCover next = fm::excluded_interval_cover(13);
    CHECK(next.items.size() == 2801);
    CHECK(next.residual == q("16807/32768"));
}
