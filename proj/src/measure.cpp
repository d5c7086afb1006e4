#include "fm/measure.hpp"

#include "fm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>

namespace fm {

// --- open intervals -------------------------------------------------------

OpenInterval::OpenInterval(const Rational& l, const Rational& r) : a(l), b(r) {
    if (r < l) throw DomainError("open interval with b < a");
}

OpenInterval OpenInterval::clipped_to(const OpenInterval& o) const {
    Rational l = max(a, o.a);
    Rational r = min(b, o.b);
    if (r < l) return OpenInterval(l, l);
    return OpenInterval(l, r);
}

std::vector<OpenInterval> merge_components(std::vector<OpenInterval> items) {
    std::erase_if(items, [](const OpenInterval& i) { return i.empty(); });
    std::sort(items.begin(), items.end(), [](const OpenInterval& x, const OpenInterval& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    std::vector<OpenInterval> out;
    for (const auto& it : items) {
        if (!out.empty() && it.a < out.back().b) {
            out.back().b = max(out.back().b, it.b);
        } else {
            out.push_back(it);
        }
    }
    return out;
}

std::size_t overlap_multiplicity(const std::vector<OpenInterval>& items) {
    // Sweep over endpoint events; at equal coordinates closings precede
    // openings, so touching open intervals never count as overlapping.
    std::vector<std::pair<Rational, int>> events;
    events.reserve(items.size() * 2);
    for (const auto& it : items) {
        if (it.empty()) continue;
        events.emplace_back(it.a, +1);
        events.emplace_back(it.b, -1);
    }
    std::sort(events.begin(), events.end(),
              [](const std::pair<Rational, int>& x, const std::pair<Rational, int>& y) {
                  if (x.first != y.first) return x.first < y.first;
                  return x.second < y.second;
              });
    std::size_t depth = 0, best = 0;
    long running = 0;
    for (const auto& [pos, delta] : events) {
        (void)pos;
        running += delta;
        depth = static_cast<std::size_t>(running < 0 ? 0 : running);
        best = std::max(best, depth);
    }
    return best;
}

// --- construction and validation -------------------------------------------

IFSMeasure IFSMeasure::create(std::vector<AffineMap> maps, std::vector<Rational> weights) {
    if (maps.size() < 2)
        throw DomainError("measure needs at least two maps");
    if (weights.size() != maps.size())
        throw DomainError("weights and maps must have equal length");
    for (const auto& m : maps)
        if (!(Rational(0) < m.rho && m.rho < Rational(1)))
            throw DomainError("contraction ratio must lie in (0, 1)");
    Rational wsum(0);
    for (const auto& w : weights) {
        if (w.sign() <= 0) throw DomainError("weights must be positive");
        wsum += w;
    }
    if (wsum != Rational(1))
        throw DomainError("weights must sum to 1");
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        if (!(maps[i].right() < maps[i + 1].left()))
            throw DomainError("map images must be strongly separated and ordered left to right");
    if (maps.front().left() != Rational(0) || maps.back().right() != Rational(1))
        throw DomainError("attractor hull must be [0, 1]");

    IFSMeasure mu;
    mu.maps_ = std::move(maps);
    mu.weights_ = std::move(weights);

    mu.prefix_.assign(mu.maps_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < mu.weights_.size(); ++i)
        mu.prefix_[i + 1] = mu.prefix_[i] + mu.weights_[i];

    for (std::size_t i = 0; i < mu.maps_.size(); ++i) {
        if (!(mu.maps_[i].rho < mu.weights_[i]))
            throw DomainError("weight p_j must exceed rho_j (dimension must be below 1)");
        Dimension d(mu.maps_[i].rho, mu.weights_[i]);
        if (mu.dim_.empty()) {
            mu.dim_.push_back(d);
        } else if (mu.dim_[0].compare(d) != 0) {
            throw DomainError("maps disagree on similarity dimension");
        }
    }

    // Exact unit integral A of the CDF: summing the self-similar pieces gives
    //   A (1 - sum_j rho_j p_j) = sum_j rho_j P_{j-1} + sum_gaps len * P_j.
    Rational shrink(0), rhs(0);
    for (std::size_t i = 0; i < mu.maps_.size(); ++i) {
        shrink += mu.maps_[i].rho * mu.weights_[i];
        rhs += mu.maps_[i].rho * mu.prefix_[i];
        if (i + 1 < mu.maps_.size())
            rhs += (mu.maps_[i + 1].left() - mu.maps_[i].right()) * mu.prefix_[i + 1];
    }
    mu.unit_integral_ = rhs / (Rational(1) - shrink);

    mu.c_ = ahlfors_constant_estimate(mu, 5);
    return mu;
}

IFSMeasure IFSMeasure::with_regularity_constant(const Rational& c) const {
    if (!(c > Rational(1)))
        throw DomainError("regularity constant must exceed 1");
    IFSMeasure copy = *this;
    copy.c_ = c;
    return copy;
}

Rational IFSMeasure::min_contraction() const {
    Rational r = maps_[0].rho;
    for (const auto& m : maps_) r = min(r, m.rho);
    return r;
}

Rational IFSMeasure::max_weight() const {
    Rational w = weights_[0];
    for (const auto& v : weights_) w = max(w, v);
    return w;
}

int IFSMeasure::depth_for_radius(const Rational& r, int extra) const {
    if (r.sign() <= 0) throw DomainError("depth_for_radius requires r > 0");
    Rational rho_max = maps_[0].rho;
    for (const auto& m : maps_) rho_max = max(rho_max, m.rho);
    int k = 0;
    Rational len(1);
    while (len > r && k < 100000) {
        len *= rho_max;
        ++k;
    }
    return k + extra;
}

static Rational json_rational(const nlohmann::json& v, const char* what) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError(std::string(what) + " must be a rational string or integer");
}

IFSMeasure IFSMeasure::parse(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in measure spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("maps") || !doc.contains("weights"))
        throw ParseError("measure spec must be an object with 'maps' and 'weights'");
    if (!doc["maps"].is_array() || !doc["weights"].is_array())
        throw ParseError("'maps' and 'weights' must be arrays");

    std::vector<AffineMap> maps;
    for (const auto& m : doc["maps"]) {
        if (!m.is_object() || !m.contains("rho") || !m.contains("t"))
            throw ParseError("each map needs 'rho' and 't'");
        maps.push_back({json_rational(m["rho"], "rho"), json_rational(m["t"], "t")});
    }
    std::vector<Rational> weights;
    for (const auto& w : doc["weights"])
        weights.push_back(json_rational(w, "weight"));

    try {
        return create(std::move(maps), std::move(weights));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

// --- CDF evaluation ---------------------------------------------------------

Enclosure cdf_eval(const IFSMeasure& mu, const Rational& x, int depth) {
    if (depth < 0) throw DomainError("cdf_eval requires depth >= 0");
    if (x.sign() <= 0) return Enclosure(Rational(0));
    if (x >= Rational(1)) return Enclosure(Rational(1));

    Rational base(0), scale(1), y = x;
    const auto& maps = mu.maps();
    for (int k = 0; k < depth; ++k) {
        bool descended = false;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (y <= maps[i].left())
                return Enclosure(base + scale * mu.prefix_weight(i));
            if (y < maps[i].right()) {
                y = (y - maps[i].t) / maps[i].rho;
                base += scale * mu.prefix_weight(i);
                scale *= mu.weights()[i];
                descended = true;
                break;
            }
            if (y == maps[i].right())
                return Enclosure(base + scale * mu.prefix_weight(i + 1));
        }
        assert(descended && "descent invariant: y strictly inside the hull");
        if (!descended) break;
    }
    return Enclosure(base, base + scale);
}

Enclosure measure_of_interval(const IFSMeasure& mu, const Rational& a, const Rational& b,
                              int depth) {
    if (b < a) throw DomainError("measure_of_interval requires a <= b");
    Enclosure fa = cdf_eval(mu, a, depth);
    Enclosure fb = cdf_eval(mu, b, depth);
    Rational lo = fb.lo - fa.hi;
    if (lo.sign() < 0) lo = Rational(0);
    return Enclosure(lo, fb.hi - fa.lo);
}

// --- CDF integral -----------------------------------------------------------

namespace {

// Integral of the CDF over [x1, x2] inside the cylinder [o, o+s] carrying
// mass M and CDF base value F0.  Requires o <= x1 <= x2 <= o+s.
Enclosure integral_rec(const IFSMeasure& mu, const Rational& o, const Rational& s,
                       const Rational& M, const Rational& F0, int k, const Rational& x1,
                       const Rational& x2, unsigned long& nodes) {
    if (x1 == x2) return Enclosure(Rational(0));
    charge_nodes(nodes, 1, "cdf_integral");
    if (x1 == o && x2 == o + s)
        return Enclosure(s * F0 + s * M * mu.unit_cdf_integral());
    if (k == 0) {
        Rational len = x2 - x1;
        return Enclosure(len * F0, len * (F0 + M));
    }
    Enclosure total(Rational(0));
    const auto& maps = mu.maps();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        Rational u = o + s * maps[i].t;
        Rational v = u + s * maps[i].rho;
        Rational c1 = max(x1, u), c2 = min(x2, v);
        if (c1 < c2)
            total += integral_rec(mu, u, s * maps[i].rho, M * mu.weights()[i],
                                  F0 + M * mu.prefix_weight(i), k - 1, c1, c2, nodes);
        if (i + 1 < maps.size()) {
            Rational g2 = o + s * maps[i + 1].t;
            Rational d1 = max(x1, v), d2 = min(x2, g2);
            if (d1 < d2)
                total += Enclosure((d2 - d1) * (F0 + M * mu.prefix_weight(i + 1)));
        }
    }
    return total;
}

} // namespace

Enclosure cdf_integral(const IFSMeasure& mu, const Rational& a, const Rational& b, int depth) {
    if (b < a) throw DomainError("cdf_integral requires a <= b");
    if (depth < 0) throw DomainError("cdf_integral requires depth >= 0");
    Enclosure total(Rational(0));
    if (b > Rational(1))
        total += Enclosure(b - max(a, Rational(1)));
    Rational lo = max(a, Rational(0)), hi = min(b, Rational(1));
    if (lo < hi) {
        unsigned long nodes = 0;
        total += integral_rec(mu, Rational(0), Rational(1), Rational(1), Rational(0), depth,
                              lo, hi, nodes);
    }
    return total;
}

// --- cylinders --------------------------------------------------------------

namespace {

void cylinders_rec(const IFSMeasure& mu, int k, std::vector<std::size_t>& word,
                   const Rational& left, const Rational& scale, const Rational& mass,
                   std::vector<CylinderInterval>& out, unsigned long& nodes) {
    charge_nodes(nodes, 1, "cylinder_enumerate");
    if (k == 0) {
        out.push_back({word, left, left + scale, mass});
        return;
    }
    for (std::size_t i = 0; i < mu.maps().size(); ++i) {
        word.push_back(i);
        cylinders_rec(mu, k - 1, word, left + scale * mu.maps()[i].t,
                      scale * mu.maps()[i].rho, mass * mu.weights()[i], out, nodes);
        word.pop_back();
    }
}

} // namespace

std::vector<CylinderInterval> cylinder_enumerate(const IFSMeasure& mu, int depth) {
    if (depth < 0) throw DomainError("cylinder_enumerate requires depth >= 0");
    std::vector<CylinderInterval> out;
    std::vector<std::size_t> word;
    unsigned long nodes = 0;
    cylinders_rec(mu, depth, word, Rational(0), Rational(1), Rational(1), out, nodes);
    return out;
}

// --- Ahlfors constant estimate ----------------------------------------------

Rational ahlfors_constant_estimate(const IFSMeasure& mu, int depth) {
    if (depth < 0) throw DomainError("ahlfors_constant_estimate requires depth >= 0");
    Rational rho_min = mu.min_contraction();

    // 48 radii, logarithmically spaced across one contraction period
    // [rho_min, 1).  lam is a rational slightly below (1/rho_min)^(1/48), so
    // the grid stays inside (0, 1).
    const int radii = 48;
    Rational lam = nth_root_bracket(Rational(1) / rho_min, radii, 16).lo;
    std::vector<std::pair<Rational, Enclosure>> radius_grid;
    Rational r = rho_min;
    for (int i = 0; i < radii && r < Rational(1); ++i) {
        radius_grid.emplace_back(r, mu.dimension().pow(r, 32));
        r *= lam;
    }

    auto cylinders = cylinder_enumerate(mu, depth);
    int eval_depth = mu.depth_for_radius(rho_min, 10);

    Rational best_up(1), best_down(1);
    for (const auto& cyl : cylinders) {
        for (const Rational& x : {cyl.left, cyl.right}) {
            for (const auto& [rad, rd] : radius_grid) {
                Enclosure mass = measure_of_interval(mu, x - rad, x + rad, eval_depth);
                if (mass.lo.sign() <= 0)
                    throw DomainError("ahlfors estimate: unresolved ball mass");
                best_up = max(best_up, mass.hi / rd.lo);
                best_down = max(best_down, rd.hi / mass.lo);
            }
        }
    }

    // Inflate by 2 and round up to granularity 1/1024 for a compact constant.
    Rational c = Rational(2) * max(best_up, best_down);
    mpz_class ticks = (c * Rational(1024)).ceil();
    return Rational(mpq_class(ticks, 1024));
}

// --- sums -------------------------------------------------------------------

MeasureSum::MeasureSum(IFSMeasure single) {
    components_.push_back(std::move(single));
    class_of_ = {0};
    class_count_ = 1;
}

MeasureSum MeasureSum::of(std::vector<IFSMeasure> components) {
    if (components.empty())
        throw DomainError("measure sum needs at least one component");
    std::vector<std::size_t> order(components.size());
    std::iota(order.begin(), order.end(), 0);
    // Sort by strictly decreasing dimension; Dimension::compare throws when a
    // pair cannot be certified, which rejects the sum as a whole.
    std::vector<std::vector<int>> cmp(components.size(), std::vector<int>(components.size(), 0));
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            cmp[i][j] = components[i].dimension().compare(components[j].dimension());
            cmp[j][i] = -cmp[i][j];
        }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return cmp[i][j] > 0; });

    MeasureSum sum;
    for (std::size_t k = 0; k < order.size(); ++k) {
        sum.components_.push_back(std::move(components[order[k]]));
        if (k == 0) {
            sum.class_of_.push_back(0);
        } else {
            bool same = cmp[order[k - 1]][order[k]] == 0;
            sum.class_of_.push_back(same ? sum.class_of_.back() : sum.class_of_.back() + 1);
        }
    }
    sum.class_count_ = sum.class_of_.back() + 1;
    return sum;
}

std::size_t MeasureSum::smallest_dimension_component() const {
    std::size_t cls = class_count_ - 1;
    std::size_t found = components_.size();
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (class_of_[i] == cls) {
            if (found != components_.size())
                throw DomainError("smallest dimension class is not a single component");
            found = i;
        }
    }
    return found;
}

std::vector<std::size_t> MeasureSum::complement_of_smallest() const {
    std::size_t s = smallest_dimension_component();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (i != s) idx.push_back(i);
    return idx;
}

Enclosure cdf_eval(const MeasureSum& f, const Rational& x, int depth) {
    Enclosure total(Rational(0));
    for (const auto& c : f.components()) total += cdf_eval(c, x, depth);
    return total;
}

Enclosure measure_of_interval(const MeasureSum& f, const Rational& a, const Rational& b,
                              int depth) {
    Enclosure total(Rational(0));
    for (const auto& c : f.components()) total += measure_of_interval(c, a, b, depth);
    return total;
}

Enclosure cdf_integral(const MeasureSum& f, const Rational& a, const Rational& b, int depth) {
    Enclosure total(Rational(0));
    for (const auto& c : f.components()) total += cdf_integral(c, a, b, depth);
    return total;
}

Enclosure measure_of_interval(const MeasureSum& f, const std::vector<std::size_t>& idx,
                              const Rational& a, const Rational& b, int depth) {
    Enclosure total(Rational(0));
    for (std::size_t i : idx) total += measure_of_interval(f.components().at(i), a, b, depth);
    return total;
}

IFSMeasure cantor_measure() {
    return IFSMeasure::create({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}},
                              {Rational(1, 2), Rational(1, 2)});
}

IFSMeasure quarter_cantor_measure() {
    return IFSMeasure::create({{Rational(1, 4), Rational(0)}, {Rational(1, 4), Rational(3, 4)}},
                              {Rational(1, 2), Rational(1, 2)});
}

} // namespace fm
