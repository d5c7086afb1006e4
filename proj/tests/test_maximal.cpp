#include "fm/errors.hpp"
#include "fm/maximal.hpp"

#include "doctest.h"

using fm::Enclosure;
using fm::MaximalResult;
using fm::MeasureSum;
using fm::Rational;

namespace {

Rational q(const std::string& text) { return Rational::parse(text); }

const MeasureSum& cantor() {
    static const MeasureSum f{MeasureSum(fm::cantor_measure())};
    return f;
}

} // namespace

TEST_CASE("interval averages are exact on structured windows") {
    // (1/3, 2/3): the central gap, constant 1/2.
    const Enclosure a1 = fm::interval_average(cantor(), q("1/2"), q("1/6"), 8);
    CHECK(a1.exact());
    CHECK(a1.lo == q("1/2"));

    // (2/3, 1): one full cylinder.
    const Enclosure a2 = fm::interval_average(cantor(), q("5/6"), q("1/6"), 8);
    CHECK(a2.exact());
    CHECK(a2.lo == q("3/4"));

    // (1/3, 1): gap plus cylinder.
    const Enclosure a3 = fm::interval_average(cantor(), q("2/3"), q("1/3"), 8);
    CHECK(a3.exact());
    CHECK(a3.lo == q("5/8"));

    CHECK_THROWS_AS(fm::interval_average(cantor(), q("1/2"), q("0"), 8), fm::DomainError);
}

TEST_CASE("maximal function at a gap endpoint is detached") {
    const MaximalResult m = fm::maximal_local(cantor(), q("2/3"), q("1"), q("1/10000"), 20);
    CHECK(m.value.lo >= q("5/8"));
    CHECK(m.value.lo <= m.value.hi);
    CHECK(m.witnessed_lo <= m.value.lo);
    CHECK(m.witness_radius > q("0"));
    CHECK(m.witness_radius <= q("1"));
    REQUIRE(m.radius_bound.has_value());
    CHECK(*m.radius_bound == q("1"));
    CHECK(m.to_tolerance);
    CHECK(m.value.width() <= q("1/10000"));

    // The supremum exceeds 5/8: the window (1/6, 7/6) alone averages 23/36.
    const Enclosure wide = fm::interval_average(cantor(), q("2/3"), q("1/2"), 8);
    CHECK(wide.exact());
    CHECK(wide.lo == q("23/36"));
    CHECK(m.value.hi >= q("23/36"));

    const fm::ContactVerdict v = fm::contact_classify(cantor(), q("2/3"), q("1"), q("1/10000"), 20);
    CHECK(v.detached);
    CHECK(v.margin >= q("1/8"));
}

TEST_CASE("maximal function at the gap midpoint stays at the cdf value") {
    const MaximalResult m = fm::maximal_local(cantor(), q("1/2"), q("1"), q("1/1000"), 20);
    CHECK(m.value.contains(q("1/2")));
    CHECK(m.value.lo == q("1/2"));
    CHECK(m.value.hi <= q("1/2") + q("1/1000"));
    CHECK(m.to_tolerance);

    const fm::ContactVerdict v = fm::contact_classify(cantor(), q("1/2"), q("1"), q("1/1000"), 20);
    CHECK_FALSE(v.detached);
}

TEST_CASE("maximal function with radii confined to a gap is exact") {
    const MaximalResult m =
        fm::maximal_restricted(cantor(), q("1/2"), q("5/12"), q("7/12"), q("1/1000"), 8);
    CHECK(m.value.exact());
    CHECK(m.value.lo == q("1/2"));
    REQUIRE(m.radius_bound.has_value());
    CHECK(*m.radius_bound == q("1/12"));
    CHECK(m.to_tolerance);
}

TEST_CASE("unrestricted maximal function accounts for the large-radius tail") {
    const MaximalResult m =
        fm::maximal_restricted(cantor(), q("2/3"), std::nullopt, std::nullopt, q("1/100"), 16);
    CHECK_FALSE(m.radius_bound.has_value());
    CHECK(m.value.lo >= q("5/8"));
    // Averages tend to 1/2 as r grows, so the global supremum is finite and
    // the enclosure must stay below the trivial bound f(infty) = 1.
    CHECK(m.value.hi < q("1"));
}

TEST_CASE("one sided restriction uses the nearer endpoint") {
    const MaximalResult m =
        fm::maximal_restricted(cantor(), q("1/2"), q("1/4"), std::nullopt, q("1/100"), 12);
    REQUIRE(m.radius_bound.has_value());
    CHECK(*m.radius_bound == q("1/4"));
    CHECK_THROWS_AS(
        fm::maximal_restricted(cantor(), q("1/2"), q("3/4"), std::nullopt, q("1/100"), 12),
        fm::DomainError);
}

TEST_CASE("maximal rejects degenerate arguments") {
    CHECK_THROWS_AS(fm::maximal_local(cantor(), q("1/2"), q("0"), q("1/100"), 8),
                    fm::DomainError);
    CHECK_THROWS_AS(fm::maximal_local(cantor(), q("1/2"), q("1"), q("0"), 8), fm::DomainError);
}

TEST_CASE("maximal dominates the cdf value from below") {
    // M f(x) >= f(x) holds by construction of the lower bound.
    for (const char* xs : {"1/3", "2/3", "1/9", "8/9", "1/2"}) {
        const Rational x = q(xs);
        const MaximalResult m = fm::maximal_local(cantor(), x, q("1/2"), q("1/100"), 14);
        const Enclosure fx = fm::cdf_eval(cantor(), x, 14);
        CHECK(m.value.lo >= fx.lo);
    }
}
