#pragma once

#include "fm/covering.hpp"
#include "fm/maximal.hpp"
#include "fm/measure.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fm {

// Certified interval in the image of g missing from g(C_{g,delta}):
// (lo, lo + length) with lo = g(b) for a gap right endpoint b.  The
// certificate is the detachment chain
//   M_delta g(b) >= avg over [b-2r, b+2r]
//               >= g(b-2r)/2 + g(b)/4 + g(b+r)/4
//               >= g(b) + (1/8) mu([b, b+r]),
// valid when 2r <= delta and mu([b, b+r]) >= 4 eta([b-2r, b]).
struct GapImageInterval {
    std::size_t gap_index = 0;
    Enclosure lo;              // g(b)
    Enclosure length;          // (1/8) mu([b, b+r_eff])
    bool certified = false;

    bool hypothesis_holds = false; // mu([b, b+r]) >= 4 eta([b-2r, b]) certified
    bool radius_admissible = false; // 2r <= delta
    Enclosure hypothesis_lhs;  // mu([b, b+r])
    Enclosure hypothesis_rhs;  // 4 eta([b-2r, b])
    Enclosure darboux_lower;   // g(b-2r)/2 + g(b)/4 + g(b+r)/4, certified <= M_delta g(b)
    Enclosure threshold;       // g(b) + length
    Rational margin;           // darboux_lower.lo - threshold.hi when certified

    OpenInterval image() const { return OpenInterval(lo.lo, lo.lo + length.lo); }
};

// Verifies the detachment certificate for one gap of the smallest-dimension
// component of g.  The image-interval length is computed at the effective
// radius (the truncated radius in family use); the hypothesis and the
// Darboux averages always use the full gap radius, as in the lemma.
GapImageInterval detachment_check(const MeasureSum& g, const Gap& gap, const Rational& delta,
                                  int depth);
GapImageInterval detachment_check(const MeasureSum& g, const Gap& gap, const Rational& delta,
                                  int depth, const Rational& effective_radius);

// Vitali-selected family of certified image intervals for the gaps of the
// smallest-dimension component inside J: runs vitali_select on the balls
// (b_i - rt_i, b_i + rt_i), certifies each selected gap at effective radius
// rt_i, then checks pairwise disjointness of the certified intervals and
// containment in g(J) exactly.  Throws DomainError if a certified family
// violates either check at this depth.
std::vector<GapImageInterval> gap_image_family(const MeasureSum& g, const OpenInterval& J,
                                               const Rational& delta, int depth);

// One level of the measure-shrinking recursion.
struct RecursionLevel {
    std::vector<OpenInterval> survivors;        // I_{n_1,...,n_k}, mu-positive only
    std::vector<OpenInterval> removed_preimages;
    std::vector<OpenInterval> removed_images;   // pairwise disjoint
    Enclosure removed_image_mass;               // certified mass taken out this level
    Enclosure surviving_mass;                   // sum of mu over survivors
    Enclosure bound_value;                      // brackets of (1-K)^k mu(I)
};

struct RecursionReport {
    Enclosure K;            // brackets of (1/32) C^-4 12^-d
    Enclosure initial_mass; // mu(I)
    std::vector<RecursionLevel> levels;

    std::string to_json() const;
};

// Executes the recursion for a single measure: at each level, every surviving
// interval contributes its certified gap-image family; the conservative
// preimages (b_i, x_i) with f(x_i) <= f(b_i) + length (located by monotone
// bisection) are removed, certified mu-null remainders are dropped, and the
// rest survive to the next level.  Reports the a-priori bound (1-K)^L mu(I)
// alongside the certified removed mass.
RecursionReport image_measure_bound(const MeasureSum& f, const OpenInterval& I,
                                    const Rational& delta, int levels, int depth);

// Scale below which the smallest-dimension component dominates the rest:
// for x in its support and r <= delta0,
//   mu([x-r, x+r]) >= 4 eta([x-2r, x+2r]).
// Found via the sufficient Ahlfors-constant inequality
//   C^-1 r^d >= 4 sum_i C_i (4r)^{d_i}
// on the geometric grid r = 2^-k (the right-hand side dominates
// eta([x-2r, x+2r]) because a support point of a component within distance
// 2r puts [x-2r, x+2r] inside a 4r-ball around it), then spot-checked on
// actual interval masses at cylinder endpoints.
struct Delta0Certificate {
    Rational delta0;
    std::vector<Rational> grid;    // radii examined, decreasing
    Rational margin;               // certified slack of the inequality at delta0
    std::size_t spot_checks = 0;   // measure-inequality verifications performed
};

Delta0Certificate delta0_estimate(const MeasureSum& f, int depth);

// Claim 1 of the inductive step: disjoint open pieces J_1, ..., J_N of J
// carrying all of mu(J) with eta(J_1 + ... + J_N) certified <= eps.  Splits
// J into L equal pieces, doubling L until the eta bound certifies; pieces
// with certified mu-mass zero are dropped, so mu-preservation is exact.
std::vector<OpenInterval> inductive_claim1(const MeasureSum& f, const OpenInterval& J,
                                           const Rational& eps, int depth);

// Claim 2 of the inductive step.
struct Claim2Report {
    std::vector<OpenInterval> intervals; // J^1, ..., J^N, pairwise disjoint subsets of J
    Enclosure mass;                      // sum of mu(J^i)
    Enclosure K;                         // brackets of (1/64) C^-4 12^-d
    Enclosure total;                     // mu(J)
    bool holds = false;                  // mass >= K mu(J), certified
    std::vector<GapImageInterval> family;
};

// Builds the J^i = (b_i, b_i + r') with (mu+eta)((b_i, b_i + r')) just below
// (1/8) mu((b_i, b_i + rt_i)) by monotone bisection, then certifies the
// per-gap bound mu(J^i) >= (1/16) mu((b_i, b_i + rt_i)) and the total
// mass >= K mu(J).
Claim2Report inductive_claim2(const MeasureSum& f, const OpenInterval& J, const Rational& delta,
                              int depth);

} // namespace fm
