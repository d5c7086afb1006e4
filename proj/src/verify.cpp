#include "fm/verify.hpp"

#include "fm/cantor.hpp"
#include "fm/covering.hpp"
#include "fm/errors.hpp"
#include "fm/maximal.hpp"
#include "fm/recursion.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>

namespace fm {

namespace {

// splitmix64: fixed output stream for a fixed seed on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform rational on the 2^-16 grid of [a, b].
    Rational in(const Rational& a, const Rational& b) {
        constexpr std::uint64_t grain = 1 << 16;
        return a + (b - a) * Rational(static_cast<long>(below(grain + 1)), grain);
    }

private:
    std::uint64_t state_;
};

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result_.checks;
        if (!ok) {
            ++result_.failures;
            result_.notes.push_back("FAIL " + what);
        }
    }

    void note(const std::string& line) { result_.notes.push_back(line); }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

Rational pow2(int e) { return Rational::pow(Rational(2), e); }

} // namespace

SuiteResult verify_measures(const MeasureSum& f, std::uint64_t seed, int depth) {
    Suite s("measures");
    Sampler rng(seed);

    for (std::size_t ci = 0; ci < f.size(); ++ci) {
        const IFSMeasure& mu = f.components()[ci];
        const std::string tag = "component " + std::to_string(ci) + ": ";

        s.check(cdf_eval(mu, Rational(0), depth).exact() &&
                    cdf_eval(mu, Rational(0), depth).lo == 0,
                tag + "cdf(0) = 0 exactly");
        s.check(cdf_eval(mu, Rational(1), depth).exact() &&
                    cdf_eval(mu, Rational(1), depth).lo == 1,
                tag + "cdf(1) = 1 exactly");

        const Enclosure unit = cdf_integral(mu, Rational(0), Rational(1), depth);
        s.check(unit.contains(mu.unit_cdf_integral()),
                tag + "unit integral encloses the exact value");

        for (int t = 0; t < 100; ++t) {
            Rational x1 = rng.in(Rational(-1, 4), Rational(5, 4));
            Rational x2 = rng.in(Rational(-1, 4), Rational(5, 4));
            if (x2 < x1) std::swap(x1, x2);
            const Enclosure f1 = cdf_eval(mu, x1, depth);
            const Enclosure f2 = cdf_eval(mu, x2, depth);
            s.check(f1.lo <= f2.hi, tag + "cdf monotone at sampled pair");
            const Rational mid = (x1 + x2) / 2;
            const Enclosure whole = measure_of_interval(mu, x1, x2, depth);
            const Enclosure split = measure_of_interval(mu, x1, mid, depth) +
                                    measure_of_interval(mu, mid, x2, depth);
            s.check(intersects(whole, split), tag + "mass additive under splitting");
        }

        // Ahlfors regularity window at support points across scales.
        const Rational c = mu.regularity_constant();
        const auto cylinders = cylinder_enumerate(mu, std::min(depth, 5));
        for (int t = 0; t < 200; ++t) {
            const auto& cyl = cylinders[rng.below(cylinders.size())];
            const Rational x = (rng.next() & 1) ? cyl.left : cyl.right;
            const int j = 1 + static_cast<int>(rng.below(20));
            const Rational r = pow2(-j);
            const int eval = mu.depth_for_radius(r);
            const Enclosure mass = measure_of_interval(mu, x - r, x + r, eval);
            const Enclosure up = c * mu.dimension().pow(r);
            const Enclosure down = (Rational(1) / c) * mu.dimension().pow(r);
            s.check(!(mass.lo > up.hi), tag + "Ahlfors upper bound not violated");
            s.check(!(mass.hi < down.lo), tag + "Ahlfors lower bound not violated");
        }

        const Enclosure rho_pow = mu.dimension().pow(mu.maps()[0].rho);
        s.check(rho_pow.contains(mu.weights()[0]), tag + "rho^d encloses the weight");

        Rational total(0);
        for (const auto& cyl : cylinder_enumerate(mu, 4)) total += cyl.mass;
        s.check(total == 1, tag + "depth-4 cylinder masses sum to 1");
    }
    return s.take();
}

SuiteResult verify_covering(const MeasureSum& f, std::uint64_t seed, int depth) {
    Suite s("covering");
    Sampler rng(seed);
    const IFSMeasure& mu = f.smallest();

    // Selection rules on random families, exact invariants.
    for (int fam = 0; fam < 200; ++fam) {
        const std::size_t n = 2 + rng.below(12);
        std::vector<WeightedBall> balls;
        std::vector<OpenInterval> all;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational center = rng.in(Rational(0), Rational(1));
            const Rational radius = rng.in(Rational(1, 64), Rational(1, 4));
            balls.push_back(WeightedBall{center, radius});
            all.push_back(balls.back().interval());
        }

        const SelectionResult bes = besicovitch_select(balls);
        std::vector<OpenInterval> chosen;
        for (std::size_t k : bes.selected) chosen.push_back(balls[k].interval());
        s.check(merge_components(all) == merge_components(chosen),
                "besicovitch preserves the union");
        s.check(overlap_multiplicity(chosen) <= 2, "besicovitch multiplicity at most 2");

        const SelectionResult vit = vitali_select(balls);
        std::vector<OpenInterval> kept;
        for (std::size_t k : vit.selected) kept.push_back(balls[k].interval());
        s.check(overlap_multiplicity(kept) <= 1, "vitali selection disjoint");
        bool covered = true;
        for (const auto& b : balls) {
            bool inside = false;
            for (std::size_t k : vit.selected) {
                const WeightedBall& w = balls[k];
                const OpenInterval dil(w.center - 3 * w.radius, w.center + 3 * w.radius);
                if (dil.contains(b.interval())) {
                    inside = true;
                    break;
                }
            }
            if (!inside) covered = false;
        }
        s.check(covered, "every ball inside a 3-dilation of a vitali ball");
    }

    // Gap structure: complement identity at a fixed generation.
    const int gen = std::min(depth, 6);
    const std::vector<Gap> gaps = gap_enumerate(mu, OpenInterval(Rational(0), Rational(1)), gen);
    Rational gap_total(0);
    bool ordered = true;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        gap_total += gaps[i].length();
        if (i > 0 && !(gaps[i - 1].b <= gaps[i].a)) ordered = false;
    }
    Rational cyl_total(0);
    for (const auto& cyl : cylinder_enumerate(mu, gen)) cyl_total += cyl.right - cyl.left;
    s.check(ordered, "gaps listed disjoint left to right");
    s.check(gap_total + cyl_total == 1, "gaps and cylinders tile the unit interval");

    // Density lemmas on the full interval and random cylinder-aligned windows.
    const OpenInterval unit(Rational(0), Rational(1));
    s.check(density_check_L1(mu, unit, gen).holds, "L1 on (0,1)");
    s.check(density_check_L2(mu, unit, gen).holds, "L2 on (0,1)");
    const auto cylinders = cylinder_enumerate(mu, 3);
    for (int t = 0; t < 5; ++t) {
        const auto& cyl = cylinders[rng.below(cylinders.size())];
        const OpenInterval J(cyl.left, cyl.right);
        const int g = mu.depth_for_radius(J.length(), 0) + gen;
        s.check(density_check_L1(mu, J, g).holds, "L1 on cylinder window");
        s.check(density_check_L2(mu, J, g).holds, "L2 on cylinder window");
    }
    return s.take();
}

SuiteResult verify_detachment(const MeasureSum& f, std::uint64_t seed, int depth) {
    Suite s("detachment");
    Sampler rng(seed);
    const IFSMeasure& mu = f.smallest();
    const OpenInterval unit(Rational(0), Rational(1));
    const bool single = f.size() == 1;

    const std::vector<Gap> gaps = gap_enumerate(mu, unit, std::min(depth, 5));
    for (const auto& g : gaps) {
        const GapImageInterval cert = detachment_check(f, g, Rational(1), depth);
        if (single)
            s.check(cert.certified, "gap " + g.a.str() + ".." + g.b.str() + " certified");
        if (cert.certified) {
            s.check(cert.margin >= 0, "certified margin nonnegative");
            s.check(cert.length.lo > 0, "certified image interval nondegenerate");
        }
    }

    const auto family = gap_image_family(f, unit, Rational(1), std::min(depth, 6));
    std::size_t certified = 0;
    for (const auto& m : family)
        if (m.certified) ++certified;
    s.check(!family.empty(), "gap image family nonempty on (0,1)");
    if (single) s.check(certified == family.size(), "all selected gaps certified");
    s.note("family size " + std::to_string(family.size()) + ", certified " +
           std::to_string(certified));

    if (single) {
        const RecursionReport rep =
            image_measure_bound(f, unit, Rational(1), 2, std::min(depth, 4));
        for (std::size_t lv = 0; lv < rep.levels.size(); ++lv) {
            const auto& level = rep.levels[lv];
            s.check(level.surviving_mass.hi <= level.bound_value.hi,
                    "surviving mass within the level bound");
            s.check(overlap_multiplicity(level.removed_images) <= 1,
                    "removed image intervals disjoint");
            bool inside = true;
            for (const auto& p : level.survivors)
                if (!unit.contains(p)) inside = false;
            s.check(inside, "survivors inside the starting interval");
        }

        for (int t = 0; t < 3; ++t) {
            const auto& g = gaps[rng.below(gaps.size())];
            const ContactVerdict v =
                contact_classify(f, g.b, Rational(1), Rational(1, 1000), depth);
            s.check(v.detached, "gap right endpoint detached");
        }
    }
    return s.take();
}

SuiteResult verify_cantor(std::uint64_t seed, int depth) {
    Suite s("cantor");
    Sampler rng(seed);
    const IFSMeasure mu = cantor_measure();

    for (int t = 0; t < 500; ++t) {
        TernaryPoint p;
        const std::size_t len = rng.below(10);
        for (std::size_t i = 0; i < len; ++i) p.digits.push_back(rng.next() & 1);
        p.tail = rng.next() & 1;
        const Enclosure h = cdf_eval(mu, p.value(), depth + 20);
        s.check(h.exact() && h.lo == cantor_value(p), "cantor_value matches cdf_eval exactly");
    }

    for (int K = 1; K <= 6; ++K) {
        std::vector<int> prefix;
        for (int i = 0; i + 1 < K; ++i) prefix.push_back(rng.next() & 1);
        const ToyGap gap = toy_gap_construct(prefix, K);
        s.check(gap.image_gap.length() == pow2(-(K + 2)), "image gap length 2^-(K+2)");
        s.check(gap.average == gap.image_gap.b, "average identity at the gap top");
        s.check(gap.x.value() - gap.l.value() == Rational::pow(Rational(3), -K) &&
                    gap.r.value() - gap.x.value() == Rational::pow(Rational(3), -K),
                "l, r at ternary distance 3^-K");
    }

    const PatternScan nine16 = pattern_scan(Rational(9, 16), 8);
    s.check(nine16.positions.size() >= 1 && nine16.positions[0] == 1,
            "9/16 has the pattern at position 1");
    s.check(pattern_scan(Rational(1, 2), 8).dyadic, "1/2 flagged dyadic");
    const PatternScan third = pattern_scan(Rational(1, 3), 24);
    s.check(third.positions.empty() && !third.dyadic, "1/3 has no occurrence");

    const ExcludedCover one = excluded_interval_cover(1);
    s.check(one.items.size() == 1 && one.items[0].image == OpenInterval(Rational(1, 2),
                                                                        Rational(5, 8)),
            "k_max = 1 emits (1/2, 5/8)");

    const ExcludedCover cover = excluded_interval_cover(12);
    s.check(cover.items.size() == 400, "k_max = 12 emits 400 gaps");
    std::vector<OpenInterval> images;
    for (const auto& item : cover.items) images.push_back(item.image);
    s.check(overlap_multiplicity(images) <= 1, "emitted gaps pairwise disjoint");
    s.check(cover.residual == Rational(2401, 4096), "residual (7/8)^4 exactly");

    for (int t = 0; t < 20; ++t) {
        const auto& item = cover.items[rng.below(cover.items.size())];
        const Rational y = (item.image.a + item.image.b) / 2;
        const int window = item.start + 2;
        const PatternScan scan = pattern_scan(y, std::max(window, 3));
        bool prefix_ok = scan.digits.size() >= static_cast<std::size_t>(window);
        for (std::size_t i = 0; prefix_ok && i < item.prefix.size(); ++i)
            if (scan.digits[i] != item.prefix[i]) prefix_ok = false;
        if (prefix_ok && window >= 3) {
            prefix_ok = scan.digits[item.start - 1] == 1 && scan.digits[item.start] == 0 &&
                        scan.digits[item.start + 1] == 0;
        }
        s.check(prefix_ok, "midpoint carries the announced binary prefix");
    }

    Rational prev(1);
    for (int k : {1, 4, 7, 10}) {
        const Rational res = excluded_interval_cover(k).residual;
        s.check(res < prev, "residual strictly shrinking in k_max");
        prev = res;
    }
    return s.take();
}

SuiteResult verify_induction(const MeasureSum& f, std::uint64_t seed, int depth) {
    Suite s("induction");
    Sampler rng(seed);
    const std::size_t sm = f.smallest_dimension_component();
    const std::vector<std::size_t> eta_idx = f.complement_of_smallest();

    const Delta0Certificate cert = delta0_estimate(f, std::min(depth, 6));
    s.check(cert.delta0 > 0, "delta0 positive");
    s.check(cert.margin >= 0, "delta0 margin nonnegative");
    s.note("delta0 = " + cert.delta0.str());

    if (f.size() > 1) {
        // Re-verify the domination inequality at random support points and
        // random radii below delta0.
        const IFSMeasure& mu = f.components()[sm];
        const auto cylinders = cylinder_enumerate(mu, 6);
        for (int t = 0; t < 100; ++t) {
            const auto& cyl = cylinders[rng.below(cylinders.size())];
            const Rational x = (rng.next() & 1) ? cyl.left : cyl.right;
            const Rational r =
                cert.delta0 * Rational(1 + static_cast<long>(rng.below(1024)), 1024);
            const int e2 = std::max(depth, mu.depth_for_radius(r));
            const Enclosure lhs = measure_of_interval(f, {sm}, x - r, x + r, e2);
            const Enclosure rhs =
                Rational(4) * measure_of_interval(f, eta_idx, x - 2 * r, x + 2 * r, e2);
            s.check(lhs.certainly_ge(rhs), "remark-(d) inequality at sampled point");
        }
    }

    const OpenInterval unit(Rational(0), Rational(1));
    const Rational eps(1, 4);
    const auto pieces = inductive_claim1(f, unit, eps, depth);
    s.check(!pieces.empty(), "claim 1 returns pieces");
    bool disjoint = true;
    Enclosure kept_mu(Rational(0), Rational(0));
    Rational eta_hi(0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i > 0 && !(pieces[i - 1].b <= pieces[i].a)) disjoint = false;
        const int eval = std::max(depth, 10);
        kept_mu += measure_of_interval(f, {sm}, pieces[i].a, pieces[i].b, eval);
        if (!eta_idx.empty())
            eta_hi += measure_of_interval(f, eta_idx, pieces[i].a, pieces[i].b, eval).hi;
    }
    s.check(disjoint, "claim 1 pieces disjoint");
    s.check(eta_hi <= eps, "claim 1 eta bound re-verified");
    const Enclosure total_mu = measure_of_interval(f, {sm}, unit.a, unit.b, depth);
    s.check(intersects(kept_mu, total_mu), "claim 1 preserves the mu mass");

    // Claim 2 on a window small enough for the delta0 regime.
    OpenInterval J = unit;
    Rational delta(1);
    if (f.size() > 1) {
        // Leftmost cylinder of the smallest-dimension support, deep enough
        // to fit under delta0.
        const Rational rho0 = f.components()[sm].maps()[0].rho;
        Rational len(1);
        int guard = 0;
        while (len > cert.delta0 && guard++ < 4096) len = len * rho0;
        J = OpenInterval(Rational(0), len);
        delta = cert.delta0;
    }
    const Claim2Report rep = inductive_claim2(f, J, delta, std::min(depth, 6));
    s.check(rep.holds, "claim 2 holds on " + J.a.str() + ".." + J.b.str());
    bool inside = true;
    for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
        if (!(J.a <= rep.intervals[i].a && rep.intervals[i].b <= J.b)) inside = false;
        if (i > 0 && !(rep.intervals[i - 1].b <= rep.intervals[i].a)) inside = false;
    }
    s.check(inside, "claim 2 intervals disjoint inside J");
    return s.take();
}

std::vector<SuiteResult> verify_all(const MeasureSum& f, std::uint64_t seed, int depth) {
    std::vector<SuiteResult> out;
    out.push_back(verify_measures(f, seed, depth));
    out.push_back(verify_covering(f, seed, depth));
    out.push_back(verify_detachment(f, seed, depth));
    out.push_back(verify_cantor(seed, depth));
    out.push_back(verify_induction(f, seed, depth));
    return out;
}

std::string report_json(const std::vector<SuiteResult>& results, std::uint64_t seed, int depth) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["depth"] = depth;
    bool all = true;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json one;
        one["name"] = r.name;
        one["checks"] = r.checks;
        one["failures"] = r.failures;
        one["notes"] = r.notes;
        all = all && r.passed();
        j["suites"].push_back(std::move(one));
    }
    j["passed"] = all;
    return j.dump(2);
}

} // namespace fm
