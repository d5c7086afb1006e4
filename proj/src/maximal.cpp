#include "fm/maximal.hpp"

#include "fm/errors.hpp"

#include <algorithm>
#include <queue>
#include <vector>

namespace fm {

Enclosure interval_average(const MeasureSum& f, const Rational& x, const Rational& r,
                           int depth) {
    if (r.sign() <= 0) throw DomainError("interval_average requires r > 0");
    return cdf_integral(f, x - r, x + r, depth) / (Rational(2) * r);
}

namespace {

struct Cell {
    Rational r1;
    Rational r2;
    Rational ub;
};

struct CellOrder {
    // Max-heap on ub; ties broken toward smaller r1 for determinism.
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.ub != b.ub) return a.ub < b.ub;
        return a.r1 > b.r1;
    }
};

class Search {
public:
    Search(const MeasureSum& f, const Rational& x, const Rational& tol, int depth)
        : f_(f), x_(x), tol_(tol), depth_(depth) {}

    void consider(const Rational& r) {
        Enclosure avg = interval_average(f_, x_, r, depth_);
        if (avg.lo > witnessed_lo_ || (avg.lo == witnessed_lo_ && r < witness_)) {
            witnessed_lo_ = avg.lo;
            witness_ = r;
        }
    }

    // Upper bound for averages over radii in [r1, r2].  With
    //   I(r) <= I(r1).hi + (r - r1) * G,   G = f(x+r2).hi + f(x-r1).hi,
    // the quotient (I(r1).hi + (r-r1)G) / (2r) is monotone in r, so its
    // maximum over the cell sits at an endpoint.
    Rational cell_bound(const Rational& r1, const Rational& r2) {
        Enclosure i1 = cdf_integral(f_, x_ - r1, x_ + r1, depth_);
        Rational g = cdf_eval(f_, x_ + r2, depth_).hi + cdf_eval(f_, x_ - r1, depth_).hi;
        Rational at_r1 = i1.hi / (Rational(2) * r1);
        Rational at_r2 = (i1.hi + (r2 - r1) * g) / (Rational(2) * r2);
        return max(at_r1, at_r2);
    }

    // Runs branch-and-bound over [r_floor, r_top]; small_region_hi is an upper
    // bound for averages at radii below r_floor (already accounted for).
    MaximalResult run(const Rational& r_floor, const Rational& r_top,
                      const Rational& small_region_hi, const Rational& seed_lo) {
        witnessed_lo_ = Rational(-1);
        witness_ = r_top;
        consider(r_floor);
        consider(r_top);
        consider((r_floor + r_top) / 2);

        std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
        heap.push({r_floor, r_top, cell_bound(r_floor, r_top)});

        unsigned long nodes = 0;
        bool to_tol = false;
        Rational hi = max(small_region_hi, heap.top().ub);
        while (true) {
            Rational lo = max(seed_lo, witnessed_lo_);
            hi = max(small_region_hi, heap.empty() ? lo : heap.top().ub);
            if (hi < lo) hi = lo; // enclosure sanity under conservative bounds
            if (hi - lo <= tol_) {
                to_tol = true;
                break;
            }
            if (heap.empty() || heap.top().ub <= small_region_hi) break;
            if (++nodes > node_budget()) break;

            Cell top = heap.top();
            heap.pop();
            Rational mid = (top.r1 + top.r2) / 2;
            consider(mid);
            heap.push({top.r1, mid, min(top.ub, cell_bound(top.r1, mid))});
            heap.push({mid, top.r2, min(top.ub, cell_bound(mid, top.r2))});
        }

        MaximalResult out;
        Rational lo = max(seed_lo, witnessed_lo_);
        if (hi < lo) hi = lo;
        out.value = Enclosure(lo, hi);
        out.witness_radius = witness_;
        out.witnessed_lo = witnessed_lo_;
        out.to_tolerance = to_tol;
        return out;
    }

private:
    const MeasureSum& f_;
    Rational x_;
    Rational tol_;
    int depth_;
    Rational witnessed_lo_;
    Rational witness_;
};

} // namespace

MaximalResult maximal_local(const MeasureSum& f, const Rational& x, const Rational& delta,
                            const Rational& tol, int depth) {
    if (delta.sign() <= 0) throw DomainError("maximal_local requires delta > 0");
    if (tol.sign() <= 0) throw DomainError("maximal_local requires tol > 0");

    Rational n = f.total_mass();
    Rational r_floor = min(tol / (Rational(4) * n), delta / 2);

    // For r <= r_floor the CDF is monotone, so
    //   average(x, r) <= (f(x) + f(x + r_floor)) / 2.
    Enclosure fx = cdf_eval(f, x, depth);
    Rational small_hi = (fx.hi + cdf_eval(f, x + r_floor, depth).hi) / 2;

    Search search(f, x, tol, depth);
    MaximalResult out = search.run(r_floor, delta, small_hi, fx.lo);
    out.radius_bound = delta;
    return out;
}

MaximalResult maximal_restricted(const MeasureSum& f, const Rational& x,
                                 const std::optional<Rational>& alpha,
                                 const std::optional<Rational>& beta, const Rational& tol,
                                 int depth) {
    if (tol.sign() <= 0) throw DomainError("maximal_restricted requires tol > 0");
    if (alpha && !(x > *alpha)) throw DomainError("maximal_restricted requires x > alpha");
    if (beta && !(x < *beta)) throw DomainError("maximal_restricted requires x < beta");

    std::optional<Rational> bound;
    if (alpha && beta) {
        bound = min(x - *alpha, *beta - x);
    } else if (alpha) {
        bound = x - *alpha;
    } else if (beta) {
        bound = *beta - x;
    }
    if (bound) {
        MaximalResult out = maximal_local(f, x, *bound, tol, depth);
        out.radius_bound = bound;
        return out;
    }

    // Unbounded radii.  For r >= r0 = 1 + max(|x|, |x-1|) the window covers
    // [0, 1], so the average is (A + n(x + r - 1)) / (2r) with A the total
    // CDF integral over [0, 1]; its derivative has one sign, so the tail
    // supremum is max(average(r0), n/2) exactly.
    Rational n = f.total_mass();
    Rational r0 = Rational(1) + max(abs(x), abs(x - Rational(1)));
    Rational a_total(0);
    for (const auto& c : f.components()) a_total += c.unit_cdf_integral();
    Rational avg_r0 = (a_total + n * (x + r0 - Rational(1))) / (Rational(2) * r0);
    Rational tail_sup = max(avg_r0, n / 2);

    MaximalResult out = maximal_local(f, x, r0, tol, depth);
    out.radius_bound = std::nullopt;
    Rational lo = max(out.value.lo, tail_sup);
    Rational hi = max(out.value.hi, tail_sup);
    if (tail_sup > out.witnessed_lo && tail_sup == avg_r0) {
        out.witness_radius = r0;
        out.witnessed_lo = tail_sup;
    }
    out.value = Enclosure(lo, hi);
    out.to_tolerance = out.to_tolerance && (hi - lo <= tol);
    return out;
}

ContactVerdict contact_classify(const MeasureSum& f, const Rational& x, const Rational& delta,
                                const Rational& tol, int depth) {
    MaximalResult m = maximal_local(f, x, delta, tol, depth);
    Enclosure fx = cdf_eval(f, x, depth);
    ContactVerdict v;
    if (m.value.lo > fx.hi) {
        v.detached = true;
        v.margin = m.value.lo - fx.hi;
    }
    return v;
}

} // namespace fm
