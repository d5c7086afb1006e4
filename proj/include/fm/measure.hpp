#pragma once

#include "fm/dimension.hpp"
#include "fm/enclosure.hpp"
#include "fm/interval.hpp"
#include "fm/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fm {

// Orientation-preserving affine contraction x -> rho*x + t with 0 < rho < 1.
struct AffineMap {
    Rational rho;
    Rational t;

    Rational apply(const Rational& x) const { return rho * x + t; }
    Rational left() const { return t; }              // image of 0
    Rational right() const { return t + rho; }       // image of 1
};

// Self-similar probability measure on [0, 1] attached to an iterated function
// system S_1, ..., S_m with strongly separated images spanning [0, 1]
// (S_1(0) = 0, S_m(1) = 1, S_j(1) < S_{j+1}(0)) and weights p_j = rho_j^d for
// a common d in (0, 1).  The measure is d-Ahlfors regular; an admissible
// regularity constant is estimated at construction and cached.
class IFSMeasure {
public:
    static IFSMeasure create(std::vector<AffineMap> maps, std::vector<Rational> weights);
    // JSON spec: {"maps": [{"rho": "1/3", "t": "0"}, ...], "weights": ["1/2", ...]}
    static IFSMeasure parse(const std::string& json_text);

    const std::vector<AffineMap>& maps() const { return maps_; }
    const std::vector<Rational>& weights() const { return weights_; }
    std::size_t branch_count() const { return maps_.size(); }
    const Dimension& dimension() const { return dim_[0]; }

    // P_j = p_1 + ... + p_j, with P_0 = 0 and P_m = 1.
    const Rational& prefix_weight(std::size_t j) const { return prefix_[j]; }

    // Exact value of the integral of the CDF over [0, 1].
    const Rational& unit_cdf_integral() const { return unit_integral_; }

    // Admissible Ahlfors regularity constant C > 1 (grid estimate, inflated).
    const Rational& regularity_constant() const { return c_; }
    IFSMeasure with_regularity_constant(const Rational& c) const;

    Rational min_contraction() const;
    Rational max_weight() const;

    // Descent depth sufficient to resolve masses at scale r, plus headroom.
    int depth_for_radius(const Rational& r, int extra = 8) const;

private:
    IFSMeasure() = default;
    std::vector<AffineMap> maps_;
    std::vector<Rational> weights_;
    std::vector<Rational> prefix_;
    std::vector<Dimension> dim_; // singleton; vector to allow default ctor
    Rational unit_integral_;
    Rational c_;
};

// CDF f(x) = mu([0, x]).  Exact whenever the cylinder descent terminates (x
// in a gap, outside [0, 1], or at a cylinder endpoint); otherwise the
// enclosure width is the mass of the surviving depth-`depth` cylinder.
Enclosure cdf_eval(const IFSMeasure& mu, const Rational& x, int depth);

// mu([a, b]) for a <= b, as f(b) - f(a) with sound interval subtraction.
Enclosure measure_of_interval(const IFSMeasure& mu, const Rational& a, const Rational& b,
                              int depth);

// Integral of the CDF over [a, b] via self-similar decomposition: gap pieces
// and full cylinders contribute exactly, partial cylinders recurse, and at
// depth 0 a partial piece contributes its trivial bounds.
Enclosure cdf_integral(const IFSMeasure& mu, const Rational& a, const Rational& b, int depth);

struct CylinderInterval {
    std::vector<std::size_t> word;
    Rational left;
    Rational right;
    Rational mass;
};

// All depth-`depth` cylinders in word-lexicographic (= left-to-right) order.
std::vector<CylinderInterval> cylinder_enumerate(const IFSMeasure& mu, int depth);

// Grid estimate of the Ahlfors constant: sup and inf of mu([x-r, x+r]) / r^d
// over depth-`depth` cylinder endpoints x and a logarithmic radius grid, then
// inflated by 2 for admissibility.
Rational ahlfors_constant_estimate(const IFSMeasure& mu, int depth);

// Finite sum f = f_1 + ... + f_n of IFS measures with pairwise comparable
// dimensions, kept sorted by strictly decreasing dimension class.  The last
// class has the smallest dimension; its component is the "active" measure in
// the detachment arguments.
class MeasureSum {
public:
    explicit MeasureSum(IFSMeasure single);
    static MeasureSum of(std::vector<IFSMeasure> components);

    const std::vector<IFSMeasure>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    Rational total_mass() const { return Rational(static_cast<long>(components_.size())); }

    // Dimension class of component i: 0 = largest dimension.
    std::size_t class_of(std::size_t i) const { return class_of_[i]; }
    std::size_t class_count() const { return class_count_; }

    // Index of the unique smallest-dimension component; throws DomainError
    // when the smallest class contains more than one component.
    std::size_t smallest_dimension_component() const;
    const IFSMeasure& smallest() const { return components_[smallest_dimension_component()]; }

    // Sum over all components except the smallest-dimension one ("eta").
    std::vector<std::size_t> complement_of_smallest() const;

private:
    MeasureSum() = default;
    std::vector<IFSMeasure> components_;
    std::vector<std::size_t> class_of_;
    std::size_t class_count_ = 0;
};

Enclosure cdf_eval(const MeasureSum& f, const Rational& x, int depth);
Enclosure measure_of_interval(const MeasureSum& f, const Rational& a, const Rational& b,
                              int depth);
Enclosure cdf_integral(const MeasureSum& f, const Rational& a, const Rational& b, int depth);

// Partial sums over an index subset (for the mu / eta split).
Enclosure measure_of_interval(const MeasureSum& f, const std::vector<std::size_t>& idx,
                              const Rational& a, const Rational& b, int depth);

// Standard examples.
IFSMeasure cantor_measure();
IFSMeasure quarter_cantor_measure();

} // namespace fm
