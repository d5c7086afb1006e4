#include "fm/dimension.hpp"

#include "fm/errors.hpp"

#include <cmath>

namespace fm {

Enclosure nth_root_bracket(const Rational& x, unsigned long q, unsigned prec_bits) {
    if (x.sign() < 0) throw DomainError("nth_root_bracket of negative value");
    if (q == 0) throw DomainError("nth_root_bracket with q = 0");
    if (x.is_zero()) return Enclosure(Rational(0));
    if (q == 1) return Enclosure(x);

    // Let S = 2^prec and T = floor(x * S^q).  With n = floor(T^(1/q)):
    //   n^q <= T <= x*S^q            => n/S <= x^(1/q)
    //   (n+1)^q >= T+1 > x*S^q       => (n+1)/S > x^(1/q)
    mpz_class S;
    mpz_ui_pow_ui(S.get_mpz_t(), 2, prec_bits);
    mpz_class Sq;
    mpz_pow_ui(Sq.get_mpz_t(), S.get_mpz_t(), q);
    mpz_class T = x.numerator() * Sq / x.denominator();
    mpz_class n;
    mpz_root(n.get_mpz_t(), T.get_mpz_t(), q);
    Rational lo(mpq_class(n, S));
    Rational hi(mpq_class(n + 1, S));
    return Enclosure(lo, hi);
}

static unsigned long checked_ulong(const mpz_class& z, const char* what) {
    if (!z.fits_ulong_p() || z > 1000000)
        throw DomainError(std::string("exponent too large in ") + what);
    return z.get_ui();
}

Enclosure rational_pow_bracket(const Rational& base, const Rational& e, unsigned prec_bits) {
    if (base.sign() <= 0) throw DomainError("rational_pow_bracket requires base > 0");
    if (e.is_zero()) return Enclosure(Rational(1));
    Rational b = base;
    Rational expo = e;
    if (expo.sign() < 0) {
        b = Rational(1) / b;
        expo = -expo;
    }
    unsigned long a = checked_ulong(expo.numerator(), "rational_pow_bracket");
    unsigned long q = checked_ulong(expo.denominator(), "rational_pow_bracket");
    Rational ba = Rational::pow(b, static_cast<long>(a));
    return nth_root_bracket(ba, q, prec_bits);
}

Dimension::Dimension(const Rational& rho, const Rational& p) : rho_(rho), p_(p) {
    if (!(Rational(0) < rho && rho < p && p < Rational(1)))
        throw DomainError("dimension requires 0 < rho < p < 1");
    // Bounded search for an exact rational value d = a/b, b <= 64.  The first
    // hit in (b asc, a asc) order is automatically in lowest terms.
    for (long b = 1; b <= 64 && !exact_; ++b) {
        Rational pb = Rational::pow(p_, b);
        for (long a = 1; a < b; ++a) {
            if (pb == Rational::pow(rho_, a)) {
                exact_ = Rational(a, b);
                break;
            }
        }
    }
}

int Dimension::compare(const Rational& q) const {
    if (q.sign() <= 0) return 1;
    if (q >= Rational(1)) return -1;
    if (exact_) {
        if (*exact_ < q) return -1;
        if (q < *exact_) return 1;
        return 0;
    }
    long a = static_cast<long>(checked_ulong(q.numerator(), "dimension comparison"));
    long b = static_cast<long>(checked_ulong(q.denominator(), "dimension comparison"));
    Rational lhs = Rational::pow(rho_, a);
    Rational rhs = Rational::pow(p_, b);
    if (lhs > rhs) return 1;  // d > a/b
    if (lhs < rhs) return -1;
    return 0;
}

Enclosure Dimension::bracket(unsigned long den) const {
    if (den == 0) throw DomainError("dimension bracket with zero denominator");
    if (exact_) return Enclosure(*exact_);
    // Largest a with d >= a/den; binary search over a in [0, den].
    unsigned long lo = 0, hi = den;
    while (lo < hi) {
        unsigned long mid = (lo + hi + 1) / 2;
        if (compare(Rational(static_cast<long>(mid), static_cast<long>(den))) >= 0)
            lo = mid;
        else
            hi = mid - 1;
    }
    return Enclosure(Rational(static_cast<long>(lo), static_cast<long>(den)),
                     Rational(static_cast<long>(lo + 1), static_cast<long>(den)));
}

Enclosure Dimension::pow(const Rational& base, unsigned prec_bits) const {
    if (base.sign() <= 0) throw DomainError("dimension pow requires base > 0");
    if (base == Rational(1)) return Enclosure(Rational(1));
    if (exact_) return rational_pow_bracket(base, *exact_, prec_bits);
    Enclosure br = bracket(64);
    Enclosure at_lo = rational_pow_bracket(base, br.lo, prec_bits);
    Enclosure at_hi = rational_pow_bracket(base, br.hi, prec_bits);
    // base^d is monotone in d; direction depends on base vs 1.
    if (base > Rational(1)) return Enclosure(at_lo.lo, at_hi.hi);
    return Enclosure(at_hi.lo, at_lo.hi);
}

Enclosure Dimension::pow_reciprocal(const Rational& base, unsigned prec_bits) const {
    return pow(Rational(1) / base, prec_bits);
}

int Dimension::compare(const Dimension& other) const {
    if (exact_ && other.exact_) {
        if (*exact_ < *other.exact_) return -1;
        if (*other.exact_ < *exact_) return 1;
        return 0;
    }
    if (exact_) return -other.compare(*exact_);
    if (other.exact_) return compare(*other.exact_);

    // Both irrational.  Multiplicative dependence with bounded exponents
    // certifies equality: rho2^t = rho1^s and p2^t = p1^s forces d2 = d1.
    for (long s = 1; s <= 16; ++s) {
        for (long t = 1; t <= 16; ++t) {
            if (Rational::pow(other.rho_, t) == Rational::pow(rho_, s) &&
                Rational::pow(other.p_, t) == Rational::pow(p_, s))
                return 0;
        }
    }
    // Otherwise try to separate brackets at increasing resolution.
    for (unsigned long den : {64UL, 256UL, 1024UL, 4096UL}) {
        Enclosure b1 = bracket(den);
        Enclosure b2 = other.bracket(den);
        if (b1.hi < b2.lo) return -1;
        if (b2.hi < b1.lo) return 1;
    }
    throw DomainError("cannot certify dimension comparison");
}

double Dimension::to_double() const {
    return std::log(p_.to_double()) / std::log(rho_.to_double());
}

} // namespace fm
