#pragma once

#include "fm/measure.hpp"

#include <cstddef>
#include <vector>

namespace fm {

// Complementary interval (gap) of the support: a connected component (a, b)
// of [0,1] minus the attractor.  Following the convention of the covering
// arguments, the associated ball is centered at the midpoint with radius
// half the gap length, so that b is the right endpoint, the ball is
// (a, b) itself, and [b - 2r, b] is the closed gap.
struct Gap {
    std::size_t index = 0; // position in the left-to-right listing
    Rational a;
    Rational b;
    int generation = 0;

    Rational length() const { return b - a; }
    Rational radius() const { return (b - a) / 2; }
    OpenInterval interval() const { return OpenInterval(a, b); }
};

// All gaps of generation <= max_generation whose closure-free interval (a, b)
// is contained in the open interval J, listed left to right.  A gap has
// generation g when it separates two depth-g cylinders.
std::vector<Gap> gap_enumerate(const IFSMeasure& mu, const OpenInterval& J, int max_generation);

// Open ball (center - radius, center + radius) tagged with its radius, the
// unit the selection rules compare.
struct WeightedBall {
    Rational center;
    Rational radius;

    OpenInterval interval() const { return OpenInterval(center - radius, center + radius); }
};

struct SelectionResult {
    std::vector<std::size_t> selected; // indices into the input family
};

// Besicovitch-type selection: a subfamily whose union equals the union of the
// whole family (as open sets) with overlap multiplicity at most 2.
// Implemented as the furthest-reaching chain greedy; consecutive chain
// members overlap, members two apart never do.
SelectionResult besicovitch_select(const std::vector<WeightedBall>& balls);

// Vitali-type selection: a pairwise disjoint subfamily such that every family
// ball is contained in the union of 3-fold dilations of selected balls.
// Greedy by decreasing radius (ties: smaller center first, then input order).
SelectionResult vitali_select(const std::vector<WeightedBall>& balls);

struct DensityReport {
    Enclosure lhs;          // certified mass of the covered part
    Enclosure rhs;          // certified value of the claimed lower bound
    bool holds = false;     // lhs.lo >= rhs.hi (sound direction)
    std::size_t family_size = 0;
    std::size_t selected_size = 0;
};

// First covering bound: mu(union of collars (b_i, b_i + r_i) intersected
// with J, over all gaps of J) >= (1/2) C^-2 4^-d mu(J).
DensityReport density_check_L1(const IFSMeasure& mu, const OpenInterval& J, int depth);

// Disjoint covering bound: with truncated radii rt_i = min(r_i, beta - b_i)
// and a Vitali-selected disjoint subfamily,
// mu(union of (b_i - rt_i, b_i + rt_i)) >= (1/2) C^-4 12^-d mu(J).
DensityReport density_check_L2(const IFSMeasure& mu, const OpenInterval& J, int depth);

// Truncated radii rt_i = min(r_i, beta - b_i) of a gap family relative to J.
std::vector<Rational> truncated_radii(const std::vector<Gap>& gaps, const OpenInterval& J);

} // namespace fm
