#pragma once

#include "fm/rational.hpp"

#include <vector>

namespace fm {

// Open interval (a, b) with rational endpoints, a <= b; empty when a == b.
// All measures here are atomless, so open/closed distinctions never affect a
// mass, but the distinction matters for disjointness of unions.
struct OpenInterval {
    Rational a;
    Rational b;

    OpenInterval() = default;
    OpenInterval(const Rational& l, const Rational& r);

    Rational length() const { return b - a; }
    bool empty() const { return !(a < b); }
    bool contains(const Rational& x) const { return a < x && x < b; }
    bool contains(const OpenInterval& o) const { return a <= o.a && o.b <= b; }
    bool overlaps(const OpenInterval& o) const {
        return max(a, o.a) < min(b, o.b);
    }
    OpenInterval clipped_to(const OpenInterval& o) const;

    friend bool operator==(const OpenInterval& x, const OpenInterval& y) {
        return x.a == y.a && x.b == y.b;
    }
};

// Union of open intervals as a sorted list of maximal components.  Touching
// intervals are kept separate: (0,1) and (1,2) do not merge, their union
// genuinely misses the point 1.
std::vector<OpenInterval> merge_components(std::vector<OpenInterval> items);

// Maximum overlap multiplicity of a family of open intervals (exact sweep).
std::size_t overlap_multiplicity(const std::vector<OpenInterval>& items);

} // namespace fm
