#pragma once

#include "fm/interval.hpp"
#include "fm/rational.hpp"

#include <cstddef>
#include <vector>

namespace fm {

// Point of the ternary Cantor set with eventually constant digits:
// x = sum 2 a_k 3^-k over k = 1..n, plus a constant tail digit from n+1 on.
// The Cantor function h maps it to sum a_k 2^-k (+ tail weight).
struct TernaryPoint {
    std::vector<int> digits; // a_1..a_n, each 0 or 1
    int tail = 0;            // 0 or 1, repeated forever after position n

    Rational value() const;
};

// h(x), exactly.
Rational cantor_value(const TernaryPoint& p);

struct BinaryPattern {
    std::vector<int> bits;
};

// The toy-model gap: for x with digits (a_1..a_{K-1}, 1, 0, 0, ...), the
// neighbors l = (a_1..a_{K-1}, 0, 1, 1, ...) and r = (a_1..a_{K-1}, 1, 1,
// 1, ...) satisfy x - l = r - x = 3^-K, and the centered average of h over
// (l, r) equals h(x) + 2^-(K+2) exactly, so M h(x) clears h(x) by that
// margin and the image interval (h(x), h(x) + 2^-(K+2)) misses h(C_h).
struct ToyGap {
    TernaryPoint x;
    TernaryPoint l;
    TernaryPoint r;
    OpenInterval image_gap;  // (h(x), h(x) + 2^-(K+2))
    Rational average;        // exact average of h over (l, r), the gap's top
};

ToyGap toy_gap_construct(const std::vector<int>& prefix, int K);

struct PatternScan {
    std::vector<int> digits;             // binary digits b_1..b_window of y
    std::vector<std::size_t> positions;  // 1-based starts of the pattern
    bool dyadic = false;                 // y in D = {i 2^-j}
};

// Exact binary expansion of y in [0, 1] up to `window` digits (terminating
// convention at dyadic rationals, which are flagged) and all occurrences of
// the pattern, (1,0,0) by default.
PatternScan pattern_scan(const Rational& y, int window,
                         const BinaryPattern& pattern = BinaryPattern{{1, 0, 0}});

// Block-aligned cover of the forbidden-pattern set: gaps for every prefix
// whose aligned 3-blocks avoid (1,0,0), at block starts K = 1, 4, 7, ...
// <= k_max.  The emitted image gaps are exactly the dyadic intervals of the
// binary prefixes (a_1, ..., a_{K-1}, 1, 0, 0); they are pairwise disjoint,
// and the uncovered remainder halves by 7/8 per block.
struct ExcludedCover {
    struct Item {
        std::vector<int> prefix;
        int start; // block start K
        OpenInterval image;
    };
    std::vector<Item> items;
    Rational covered;
    Rational residual; // 1 - covered = (7/8)^blocks
};

ExcludedCover excluded_interval_cover(int k_max);

} // namespace fm
