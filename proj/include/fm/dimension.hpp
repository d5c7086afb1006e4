#pragma once

#include "fm/enclosure.hpp"
#include "fm/rational.hpp"

#include <optional>

namespace fm {

// Certified enclosure of x^(1/q) for rational x >= 0, integer q >= 1.
// Width is 2^-prec_bits.
Enclosure nth_root_bracket(const Rational& x, unsigned long q, unsigned prec_bits = 48);

// Certified enclosure of base^e for rational base > 0 and rational e.
Enclosure rational_pow_bracket(const Rational& base, const Rational& e, unsigned prec_bits = 48);

// The similarity dimension d solving rho^d = p, carried exactly as the pair
// (rho, p) with 0 < rho < p < 1, so d in (0, 1).  d is typically irrational;
// it is never materialized as a number.  Order against rationals is decided
// by integer cross-exponentiation: for 0 < a/b < 1,
//   d >= a/b  <=>  log(1/p)*b >= log(1/rho)*a  <=>  rho^a >= p^b,
// which is an exact comparison of rationals.
class Dimension {
public:
    Dimension(const Rational& rho, const Rational& p);

    const Rational& rho() const { return rho_; }
    const Rational& p() const { return p_; }

    // Sign of d - q, exact.
    int compare(const Rational& q) const;

    // Rational value of d when d = a/b with b <= 64 (found by bounded
    // search at construction); empty otherwise.
    const std::optional<Rational>& exact_value() const { return exact_; }

    // Rational bracket containing d with denominator `den`.  Exact point
    // enclosure when d is known rational with compatible denominator.
    Enclosure bracket(unsigned long den = 64) const;

    // Certified enclosure of base^d (base > 0) resp. base^-d.
    Enclosure pow(const Rational& base, unsigned prec_bits = 48) const;
    Enclosure pow_reciprocal(const Rational& base, unsigned prec_bits = 48) const;

    // Three-way comparison with another dimension.  Decides via exact values,
    // a bounded multiplicative-dependence test, or bracket separation; throws
    // DomainError when the comparison cannot be certified.
    int compare(const Dimension& other) const;
    bool same_as(const Dimension& other) const { return compare(other) == 0; }

    double to_double() const;

private:
    Rational rho_;
    Rational p_;
    std::optional<Rational> exact_;
};

} // namespace fm
