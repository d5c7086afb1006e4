#pragma once

#include "fm/errors.hpp"
#include "fm/rational.hpp"

namespace fm {

// Certified enclosure of a real quantity: the true value is guaranteed to lie
// in [lo, hi].  Arithmetic is exact on the rational endpoints, so enclosures
// never silently widen; width is an honest measure of what the computation
// resolved.
struct Enclosure {
    Rational lo;
    Rational hi;

    Enclosure() = default; // [0, 0]
    explicit Enclosure(const Rational& exact_value) : lo(exact_value), hi(exact_value) {}
    Enclosure(const Rational& l, const Rational& h) : lo(l), hi(h) {
        if (hi < lo) throw DomainError("enclosure with hi < lo");
    }

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }

    // Order predicates that are certain regardless of where the true values
    // sit inside their enclosures.
    bool certainly_ge(const Rational& v) const { return lo >= v; }
    bool certainly_le(const Rational& v) const { return hi <= v; }
    bool certainly_ge(const Enclosure& o) const { return lo >= o.hi; }
    bool certainly_gt(const Enclosure& o) const { return lo > o.hi; }

    Enclosure operator-() const { return Enclosure(-hi, -lo); }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo + b.lo, a.hi + b.hi);
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo - b.hi, a.hi - b.lo);
    }
    Enclosure& operator+=(const Enclosure& o) { lo += o.lo; hi += o.hi; return *this; }

    // Scaling by an exact rational.
    friend Enclosure operator*(const Rational& c, const Enclosure& e) {
        if (c.sign() >= 0) return Enclosure(c * e.lo, c * e.hi);
        return Enclosure(c * e.hi, c * e.lo);
    }

    // Product of enclosures, both assumed nonnegative (all quantities in this
    // library are masses, lengths, or powers of positive numbers).
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        if (a.lo.sign() < 0 || b.lo.sign() < 0)
            throw DomainError("enclosure product requires nonnegative operands");
        return Enclosure(a.lo * b.lo, a.hi * b.hi);
    }

    // Division by an exact positive rational.
    friend Enclosure operator/(const Enclosure& e, const Rational& c) {
        if (c.sign() <= 0) throw DomainError("enclosure division by nonpositive rational");
        return Enclosure(e.lo / c, e.hi / c);
    }
};

// Smallest enclosure containing both.
inline Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return Enclosure(min(a.lo, b.lo), max(a.hi, b.hi));
}

// Intersection; throws DomainError when disjoint (two certified enclosures of
// the same quantity always intersect).
inline Enclosure meet(const Enclosure& a, const Enclosure& b) {
    Rational l = max(a.lo, b.lo);
    Rational h = min(a.hi, b.hi);
    if (h < l) throw DomainError("meet of disjoint enclosures");
    return Enclosure(l, h);
}

inline bool intersects(const Enclosure& a, const Enclosure& b) {
    return max(a.lo, b.lo) <= min(a.hi, b.hi);
}

} // namespace fm
