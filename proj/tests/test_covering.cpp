#include "fm/covering.hpp"
#include "fm/errors.hpp"

#include "doctest.h"

#include <vector>

using fm::Gap;
using fm::OpenInterval;
using fm::Rational;
using fm::SelectionResult;
using fm::WeightedBall;

namespace {

Rational q(const std::string& text) { return Rational::parse(text); }

WeightedBall ball(const std::string& center, const std::string& radius) {
    return WeightedBall{q(center), q(radius)};
}

} // namespace

TEST_CASE("gap enumeration on the unit interval") {
    const fm::IFSMeasure mu = fm::cantor_measure();
    const OpenInterval unit(q("0"), q("1"));

    const auto g1 = fm::gap_enumerate(mu, unit, 1);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].a == q("1/3"));
    CHECK(g1[0].b == q("2/3"));
    CHECK(g1[0].generation == 1);
    CHECK(g1[0].index == 0);
    CHECK(g1[0].radius() == q("1/6"));
    CHECK(g1[0].length() == q("1/3"));

    const auto g3 = fm::gap_enumerate(mu, unit, 3);
    REQUIRE(g3.size() == 7);
    const int gens[] = {3, 2, 3, 1, 3, 2, 3};
    const char* lefts[] = {"1/27", "1/9", "7/27", "1/3", "19/27", "7/9", "25/27"};
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(g3[i].index == i);
        CHECK(g3[i].generation == gens[i]);
        CHECK(g3[i].a == q(lefts[i]));
        if (i > 0) CHECK(g3[i - 1].b <= g3[i].a);
    }
}

TEST_CASE("gap enumeration respects the window") {
    const fm::IFSMeasure mu = fm::cantor_measure();
    const auto gaps = fm::gap_enumerate(mu, OpenInterval(q("1/3"), q("1")), 3);
    REQUIRE(gaps.size() == 4);
    CHECK(gaps[0].a == q("1/3"));
    CHECK(gaps[1].a == q("19/27"));
    CHECK(gaps[2].a == q("7/9"));
    CHECK(gaps[3].a == q("25/27"));

    // A window inside a gap contains no gaps of the support.
    CHECK(fm::gap_enumerate(mu, OpenInterval(q("2/5"), q("3/5")), 6).empty());
    CHECK_THROWS_AS(fm::gap_enumerate(mu, OpenInterval(q("0"), q("1")), 0), fm::DomainError);
}

TEST_CASE("truncated radii") {
    const fm::IFSMeasure mu = fm::cantor_measure();
    const OpenInterval unit(q("0"), q("1"));
    const auto gaps = fm::gap_enumerate(mu, unit, 2);
    const auto rt = fm::truncated_radii(gaps, unit);
    REQUIRE(rt.size() == gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) CHECK(rt[i] == gaps[i].radius());

    // Truncation active when the window ends right after a gap.
    const OpenInterval tight(q("0"), q("17/24"));
    const auto tg = fm::gap_enumerate(mu, tight, 1);
    REQUIRE(tg.size() == 1);
    const auto trt = fm::truncated_radii(tg, tight);
    CHECK(trt[0] == q("1/24"));
}

TEST_CASE("besicovitch selection keeps the union with multiplicity two") {
    const std::vector<WeightedBall> chain = {ball("1", "1"), ball("2", "1"), ball("3", "1")};
    const SelectionResult sel = fm::besicovitch_select(chain);
    CHECK(sel.selected == std::vector<std::size_t>{0, 1, 2});

    std::vector<OpenInterval> chosen;
    for (std::size_t k : sel.selected) chosen.push_back(chain[k].interval());
    CHECK(fm::overlap_multiplicity(chosen) == 2);

    // A nested ball is dropped.
    const std::vector<WeightedBall> nested = {ball("1", "1"), ball("1", "1/2")};
    CHECK(fm::besicovitch_select(nested).selected == std::vector<std::size_t>{0});

    // Touching balls form distinct components; both survive.
    const std::vector<WeightedBall> touching = {ball("1/2", "1/2"), ball("3/2", "1/2")};
    const SelectionResult both = fm::besicovitch_select(touching);
    CHECK(both.selected == std::vector<std::size_t>{0, 1});

    // Zero-radius balls are ignored.
    const std::vector<WeightedBall> with_point = {ball("1/2", "0"), ball("2", "1")};
    CHECK(fm::besicovitch_select(with_point).selected == std::vector<std::size_t>{1});
}

TEST_CASE("besicovitch union equality on a crowded family") {
    const std::vector<WeightedBall> family = {
        ball("0", "1/4"),   ball("1/8", "1/2"), ball("1/4", "1/8"), ball("5/8", "1/4"),
        ball("9/8", "1/4"), ball("5/4", "1/2"), ball("2", "1/16"),
    };
    const SelectionResult sel = fm::besicovitch_select(family);
    std::vector<OpenInterval> all;
    std::vector<OpenInterval> chosen;
    for (const auto& b : family) all.push_back(b.interval());
    for (std::size_t k : sel.selected) chosen.push_back(family[k].interval());
    CHECK(fm::merge_components(all) == fm::merge_components(chosen));
    CHECK(fm::overlap_multiplicity(chosen) <= 2);
}

TEST_CASE("vitali selection is disjoint and dilation-covering") {
    const std::vector<WeightedBall> family = {ball("1", "1"), ball("2", "1/2"), ball("7/2", "1/2")};
    const SelectionResult sel = fm::vitali_select(family);
    CHECK(sel.selected == std::vector<std::size_t>{0, 2});

    // Every dropped ball sits inside the 3-dilation of a kept one.
    const OpenInterval dil(q("1") - 3 * q("1"), q("1") + 3 * q("1"));
    CHECK(dil.contains(family[1].interval()));

    // Ties resolve toward the smaller center.
    const std::vector<WeightedBall> tie = {ball("5/4", "1/2"), ball("1", "1/2")};
    CHECK(fm::vitali_select(tie).selected == std::vector<std::size_t>{1});

    // Touching open balls are disjoint, so both stay.
    const std::vector<WeightedBall> touching = {ball("1/2", "1/2"), ball("3/2", "1/2")};
    CHECK(fm::vitali_select(touching).selected == std::vector<std::size_t>{0, 1});
}

TEST_CASE("density bound L1 on the unit interval is exact at low generation") {
    const fm::IFSMeasure mu = fm::cantor_measure();
    const fm::DensityReport rep = fm::density_check_L1(mu, OpenInterval(q("0"), q("1")), 2);
    CHECK(rep.family_size == 3);
    CHECK(rep.lhs.exact());
    CHECK(rep.lhs.lo == q("1/2"));
    CHECK(rep.rhs.hi < rep.lhs.lo);
    CHECK(rep.holds);
}

TEST_CASE("density bound L2 on the unit interval is exact at low generation") {
    const fm::IFSMeasure mu = fm::cantor_measure();
    const fm::DensityReport rep = fm::density_check_L2(mu, OpenInterval(q("0"), q("1")), 2);
    CHECK(rep.family_size == 3);
    CHECK(rep.selected_size == 3);
    CHECK(rep.lhs.exact());
    CHECK(rep.lhs.lo == q("1/2"));
    CHECK(rep.holds);
}

TEST_CASE("density bounds hold on cylinder windows for both measures") {
    struct Case {
        fm::IFSMeasure mu;
        OpenInterval window;
        int generation;
    };
    const Case cases[] = {
        {fm::cantor_measure(), OpenInterval(q("0"), q("1/3")), 5},
        {fm::cantor_measure(), OpenInterval(q("2/9"), q("1/3")), 6},
        {fm::quarter_cantor_measure(), OpenInterval(q("0"), q("1")), 4},
        {fm::quarter_cantor_measure(), OpenInterval(q("3/4"), q("1")), 5},
    };
    for (const auto& c : cases) {
        CHECK(fm::density_check_L1(c.mu, c.window, c.generation).holds);
        CHECK(fm::density_check_L2(c.mu, c.window, c.generation).holds);
    }
}

TEST_CASE("interval component utilities") {
    std::vector<OpenInterval> items = {
        OpenInterval(q("0"), q("1")),
        OpenInterval(q("1"), q("2")),
        OpenInterval(q("1/2"), q("3/2")),
        OpenInterval(q("3"), q("4")),
    };
    const auto merged = fm::merge_components(items);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == OpenInterval(q("0"), q("2")));
    CHECK(merged[1] == OpenInterval(q("3"), q("4")));

    // Touching intervals stay separate.
    const auto kept = fm::merge_components(
        {OpenInterval(q("0"), q("1")), OpenInterval(q("1"), q("2"))});
    REQUIRE(kept.size() == 2);

    CHECK(fm::overlap_multiplicity(items) == 2);
    CHECK(fm::overlap_multiplicity({}) == 0);
}
