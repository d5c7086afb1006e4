#pragma once

#include "fm/measure.hpp"

#include <optional>

namespace fm {

// Average of the CDF of f over [x-r, x+r], i.e. (1/2r) * integral.
Enclosure interval_average(const MeasureSum& f, const Rational& x, const Rational& r,
                           int depth);

struct MaximalResult {
    Enclosure value;                     // encloses the supremum of averages
    Rational witness_radius;             // smallest evaluated radius attaining witnessed_lo
    Rational witnessed_lo;               // best certified average found by evaluation
    std::optional<Rational> radius_bound; // sup of admissible radii; empty = unbounded
    bool to_tolerance = false;           // width <= tol achieved
};

// Centered Hardy-Littlewood maximal function restricted to radii r in
// (0, delta]:  M_delta f(x) = sup_{0 < r <= delta} average(x, r).
// Branch-and-bound on the radius axis; value.lo also dominates f(x).lo since
// averages tend to f(x) as r -> 0.  Stops when the enclosure width reaches
// tol, the refinement floor tol/(4n) is hit, or the node budget runs out;
// to_tolerance reports which.
MaximalResult maximal_local(const MeasureSum& f, const Rational& x, const Rational& delta,
                            const Rational& tol, int depth);

// Maximal function restricted to intervals contained in (alpha, beta):
// radii range over (0, min(x - alpha, beta - x)], with an empty bound
// meaning the endpoint is infinite.  For two-sided infinite input this is the
// global centered maximal function; the tail r >= 1 + |x| is resolved in
// closed form because averages there are monotone in r.
MaximalResult maximal_restricted(const MeasureSum& f, const Rational& x,
                                 const std::optional<Rational>& alpha,
                                 const std::optional<Rational>& beta, const Rational& tol,
                                 int depth);

struct ContactVerdict {
    bool detached = false;
    Rational margin; // certified lower bound on M_delta f(x) - f(x) when detached
};

// Certifies strict detachment M_delta f(x) > f(x) when the computed
// enclosures separate; otherwise reports undetermined (touching is never
// certified, only failure to separate).
ContactVerdict contact_classify(const MeasureSum& f, const Rational& x, const Rational& delta,
                                const Rational& tol, int depth);

} // namespace fm
