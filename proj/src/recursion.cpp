#include "fm/recursion.hpp"

#include "fm/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <utility>

namespace fm {

namespace {

int sum_eval_depth(const MeasureSum& f, const Rational& scale) {
    int d = 0;
    for (const auto& c : f.components()) d = std::max(d, c.depth_for_radius(scale));
    return d;
}

struct FamilyEntry {
    Gap gap;
    Rational rt;
    GapImageInterval cert;
};

// Gaps of the smallest-dimension component inside J, Vitali-selected on the
// truncated balls and certified at the truncated radius.
std::vector<FamilyEntry> build_family(const MeasureSum& g, const OpenInterval& J,
                                      const Rational& delta, int max_generation, int depth) {
    const IFSMeasure& mu = g.smallest();
    const std::vector<Gap> gaps = gap_enumerate(mu, J, max_generation);
    const std::vector<Rational> rt = truncated_radii(gaps, J);

    std::vector<WeightedBall> balls;
    std::vector<std::size_t> ball_gap;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (rt[i] > 0) {
            balls.push_back(WeightedBall{gaps[i].b, rt[i]});
            ball_gap.push_back(i);
        }
    }
    const SelectionResult sel = vitali_select(balls);

    std::vector<FamilyEntry> out;
    out.reserve(sel.selected.size());
    for (std::size_t k : sel.selected) {
        const std::size_t i = ball_gap[k];
        FamilyEntry e{gaps[i], rt[i], detachment_check(g, gaps[i], delta, depth, rt[i])};
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(),
              [](const FamilyEntry& x, const FamilyEntry& y) { return x.gap.b < y.gap.b; });
    return out;
}

// Smallest generation at which J contains a gap, plus `extra` refinement
// levels; 0 when none exists within the cap.
int family_generation(const IFSMeasure& mu, const OpenInterval& J, int extra) {
    constexpr int kGenerationCap = 256;
    for (int g = 1; g <= kGenerationCap; ++g) {
        if (!gap_enumerate(mu, J, g).empty()) return std::min(g + extra, kGenerationCap);
    }
    return 0;
}

} // namespace

GapImageInterval detachment_check(const MeasureSum& g, const Gap& gap, const Rational& delta,
                                  int depth) {
    return detachment_check(g, gap, delta, depth, gap.radius());
}

GapImageInterval detachment_check(const MeasureSum& g, const Gap& gap, const Rational& delta,
                                  int depth, const Rational& effective_radius) {
    const Rational r = gap.radius();
    if (r <= 0) throw DomainError("detachment_check: degenerate gap");
    if (effective_radius <= 0 || effective_radius > r)
        throw DomainError("detachment_check: effective radius outside (0, r]");
    const Rational b = gap.b;
    const int eval = std::max(depth, sum_eval_depth(g, min(effective_radius, r)));

    const std::size_t s = g.smallest_dimension_component();
    const std::vector<std::size_t> mu_idx{s};
    const std::vector<std::size_t> eta_idx = g.complement_of_smallest();

    GapImageInterval out;
    out.gap_index = gap.index;
    out.hypothesis_lhs = measure_of_interval(g, mu_idx, b, b + r, eval);
    out.hypothesis_rhs = eta_idx.empty()
                             ? Enclosure(Rational(0), Rational(0))
                             : Rational(4) * measure_of_interval(g, eta_idx, b - 2 * r, b, eval);
    out.hypothesis_holds = out.hypothesis_lhs.certainly_ge(out.hypothesis_rhs);
    out.radius_admissible = 2 * r <= delta;

    const Enclosure g_left = cdf_eval(g, b - 2 * r, eval);
    const Enclosure g_b = cdf_eval(g, b, eval);
    const Enclosure g_right = cdf_eval(g, b + r, eval);
    out.darboux_lower =
        Rational(1, 2) * g_left + Rational(1, 4) * g_b + Rational(1, 4) * g_right;

    out.lo = g_b;
    out.length = Rational(1, 8) * measure_of_interval(g, mu_idx, b, b + effective_radius, eval);
    out.threshold = g_b + out.length;

    out.certified = out.hypothesis_holds && out.radius_admissible &&
                    out.darboux_lower.certainly_ge(out.threshold);
    out.margin = out.darboux_lower.lo - out.threshold.hi;
    return out;
}

std::vector<GapImageInterval> gap_image_family(const MeasureSum& g, const OpenInterval& J,
                                               const Rational& delta, int depth) {
    if (J.empty()) throw DomainError("gap_image_family: empty interval");
    std::vector<FamilyEntry> entries = build_family(g, J, delta, depth, depth);
    std::vector<GapImageInterval> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(std::move(e.cert));

    const int eval = sum_eval_depth(g, J.length());
    const Enclosure g_alpha = cdf_eval(g, J.a, eval);
    const Enclosure g_beta = cdf_eval(g, J.b, eval);
    const GapImageInterval* prev = nullptr;
    for (const auto& m : out) {
        if (!m.certified) continue;
        const Enclosure top = m.lo + m.length;
        if (!(m.lo.lo >= g_alpha.hi) || !(top.hi <= g_beta.lo))
            throw DomainError("gap_image_family: containment in g(J) not certified");
        if (prev != nullptr) {
            const Enclosure prev_top = prev->lo + prev->length;
            if (!(prev_top.hi <= m.lo.lo))
                throw DomainError("gap_image_family: disjointness not certified");
        }
        prev = &m;
    }
    return out;
}

namespace {

// Largest x in (b, b + rt] with f(x) certified below `top_lo`, by bisection;
// returns b itself when no progress certifies.
Rational conservative_preimage(const MeasureSum& f, const Rational& b, const Rational& rt,
                               const Rational& top_lo, const Rational& mass_tol,
                               unsigned long& nodes) {
    Rational lo = b;
    Rational hi = b + rt;
    for (int it = 0; it < 64; ++it) {
        charge_nodes(nodes, 1, "preimage bisection");
        const int eval = sum_eval_depth(f, hi - lo);
        if (measure_of_interval(f, lo, hi, eval).hi <= mass_tol) break;
        const Rational mid = (lo + hi) / 2;
        if (cdf_eval(f, mid, eval).hi <= top_lo)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rational power(const Rational& base, int e) {
    Rational acc(1);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

} // namespace

RecursionReport image_measure_bound(const MeasureSum& f, const OpenInterval& I,
                                    const Rational& delta, int levels, int depth) {
    if (f.size() != 1) throw DomainError("image_measure_bound: single-component input required");
    if (levels < 0) throw DomainError("image_measure_bound: negative level count");
    if (I.length() > delta) throw DomainError("image_measure_bound: m(I) exceeds delta");
    const IFSMeasure& mu = f.components()[0];

    RecursionReport rep;
    const Rational c = mu.regularity_constant();
    const Rational c2 = c * c;
    rep.K = (Rational(1) / (32 * c2 * c2)) * mu.dimension().pow_reciprocal(Rational(12));
    rep.initial_mass = measure_of_interval(f, I.a, I.b, sum_eval_depth(f, I.length()));

    unsigned long nodes = 0;
    std::vector<OpenInterval> survivors;
    if (rep.initial_mass.hi > 0) survivors.push_back(I);

    for (int level = 1; level <= levels; ++level) {
        RecursionLevel lv;
        lv.removed_image_mass = Enclosure(Rational(0), Rational(0));
        lv.surviving_mass = Enclosure(Rational(0), Rational(0));

        for (const OpenInterval& J : survivors) {
            charge_nodes(nodes, 1, "image_measure_bound");
            const int gen = family_generation(mu, J, depth);
            std::vector<FamilyEntry> family;
            if (gen > 0) family = build_family(f, J, delta, gen, depth);

            Rational cursor = J.a;
            std::vector<OpenInterval> pieces;
            for (const auto& e : family) {
                if (!e.cert.certified) continue;
                const Rational top_lo = e.cert.lo.lo + e.cert.length.lo;
                if (e.cert.length.lo <= 0) continue;
                const Rational x = conservative_preimage(f, e.gap.b, e.rt, top_lo,
                                                         e.cert.length.lo / 32, nodes);
                if (!(x > e.gap.b)) continue;
                pieces.push_back(OpenInterval(cursor, e.gap.b));
                lv.removed_preimages.push_back(OpenInterval(e.gap.b, x));
                lv.removed_images.push_back(
                    OpenInterval(e.cert.lo.lo, e.cert.lo.lo + e.cert.length.lo));
                lv.removed_image_mass +=
                    measure_of_interval(f, e.gap.b, x, sum_eval_depth(f, x - e.gap.b));
                cursor = x;
            }
            pieces.push_back(OpenInterval(cursor, J.b));

            for (const auto& p : pieces) {
                if (p.empty()) continue;
                const Enclosure mass = measure_of_interval(f, p.a, p.b,
                                                           sum_eval_depth(f, p.length()));
                if (mass.hi == 0) continue;
                lv.survivors.push_back(p);
                lv.surviving_mass += mass;
            }
        }

        const Rational up = power(1 - rep.K.lo, level) * rep.initial_mass.hi;
        Rational down = power(1 - rep.K.hi, level) * rep.initial_mass.lo;
        if (down < 0) down = Rational(0);
        lv.bound_value = Enclosure(down, up);

        survivors = lv.survivors;
        rep.levels.push_back(std::move(lv));
    }
    return rep;
}

std::string RecursionReport::to_json() const {
    nlohmann::ordered_json j;
    auto enc = [](const Enclosure& e) {
        return nlohmann::ordered_json::array({e.lo.str(), e.hi.str()});
    };
    auto ivals = [](const std::vector<OpenInterval>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& i : v) arr.push_back({i.a.str(), i.b.str()});
        return arr;
    };
    j["K"] = enc(K);
    j["initial_mass"] = enc(initial_mass);
    j["levels"] = nlohmann::ordered_json::array();
    for (const auto& lv : levels) {
        nlohmann::ordered_json l;
        l["bound_value"] = enc(lv.bound_value);
        l["removed_image_mass"] = enc(lv.removed_image_mass);
        l["surviving_mass"] = enc(lv.surviving_mass);
        l["survivor_count"] = lv.survivors.size();
        l["survivors"] = ivals(lv.survivors);
        l["removed_preimages"] = ivals(lv.removed_preimages);
        l["removed_images"] = ivals(lv.removed_images);
        j["levels"].push_back(std::move(l));
    }
    return j.dump(2);
}

Delta0Certificate delta0_estimate(const MeasureSum& f, int depth) {
    Delta0Certificate cert;
    if (f.size() == 1) {
        cert.delta0 = Rational(1);
        cert.margin = Rational(0);
        return cert;
    }
    const std::size_t s = f.smallest_dimension_component();
    const std::vector<std::size_t> eta_idx = f.complement_of_smallest();
    const IFSMeasure& mu = f.components()[s];
    const Rational cs_inv = Rational(1) / mu.regularity_constant();

    unsigned long nodes = 0;
    Rational delta0;
    Rational margin;
    bool found = false;
    Rational r(1, 2);
    for (int k = 2; k <= 4096; ++k) {
        charge_nodes(nodes, 16, "delta0 grid");
        r = r / 2;
        cert.grid.push_back(r);
        const Enclosure lhs = cs_inv * mu.dimension().pow(r);
        Enclosure rhs(Rational(0), Rational(0));
        for (std::size_t i : eta_idx) {
            const IFSMeasure& c = f.components()[i];
            rhs += c.regularity_constant() * c.dimension().pow(4 * r);
        }
        rhs = Rational(4) * rhs;
        if (lhs.lo >= rhs.hi) {
            delta0 = r;
            margin = lhs.lo - rhs.hi;
            found = true;
            break;
        }
    }
    if (!found)
        throw DomainError("delta0_estimate: no admissible scale above the resolution floor");

    // Spot-check the measure inequality itself at support points of mu.
    const int cyl_depth = std::min(depth, 8);
    for (const auto& cyl : cylinder_enumerate(mu, cyl_depth)) {
        for (const Rational& x : {cyl.left, cyl.right}) {
            Rational rr = delta0;
            for (int half = 0; half < 2; ++half) {
                charge_nodes(nodes, 4, "delta0 spot check");
                const int eval = sum_eval_depth(f, rr);
                const Enclosure lhs = measure_of_interval(f, {s}, x - rr, x + rr, eval);
                const Enclosure rhs =
                    Rational(4) * measure_of_interval(f, eta_idx, x - 2 * rr, x + 2 * rr, eval);
                if (!lhs.certainly_ge(rhs))
                    throw DomainError("delta0_estimate: spot verification failed");
                ++cert.spot_checks;
                rr = rr / 2;
            }
        }
    }
    cert.delta0 = delta0;
    cert.margin = margin;
    return cert;
}

std::vector<OpenInterval> inductive_claim1(const MeasureSum& f, const OpenInterval& J,
                                           const Rational& eps, int depth) {
    if (eps <= 0) throw DomainError("inductive_claim1: eps must be positive");
    if (J.empty()) throw DomainError("inductive_claim1: empty interval");
    const std::size_t s = f.smallest_dimension_component();
    const std::vector<std::size_t> eta_idx = f.complement_of_smallest();

    unsigned long nodes = 0;
    for (long pieces = 2; pieces <= (1L << 22); pieces *= 2) {
        const Rational step = J.length() / Rational(pieces);
        const int eval = std::max(depth, sum_eval_depth(f, step));

        // One CDF pass per component over the shared grid.
        std::vector<std::vector<Enclosure>> grid(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            grid[i].reserve(static_cast<std::size_t>(pieces) + 1);
            for (long jj = 0; jj <= pieces; ++jj) {
                charge_nodes(nodes, 1, "inductive_claim1");
                grid[i].push_back(cdf_eval(f.components()[i], J.a + Rational(jj) * step, eval));
            }
        }

        std::vector<OpenInterval> kept;
        Rational eta_hi(0);
        bool over = false;
        for (long jj = 0; jj < pieces && !over; ++jj) {
            const Enclosure mu_mass = grid[s][jj + 1] - grid[s][jj];
            if (mu_mass.hi == 0) continue;
            kept.push_back(OpenInterval(J.a + Rational(jj) * step, J.a + Rational(jj + 1) * step));
            for (std::size_t i : eta_idx) {
                eta_hi += (grid[i][jj + 1] - grid[i][jj]).hi;
                if (eta_hi > eps) over = true;
            }
        }
        if (!over && eta_hi <= eps) return kept;
    }
    throw BudgetError("inductive_claim1: no certified split within the piece budget");
}

Claim2Report inductive_claim2(const MeasureSum& f, const OpenInterval& J, const Rational& delta,
                              int depth) {
    if (J.empty()) throw DomainError("inductive_claim2: empty interval");
    if (J.length() > delta) throw DomainError("inductive_claim2: m(J) exceeds delta");
    const std::size_t s = f.smallest_dimension_component();
    const IFSMeasure& mu = f.components()[s];

    Claim2Report rep;
    const Rational c = mu.regularity_constant();
    const Rational c2 = c * c;
    rep.K = (Rational(1) / (64 * c2 * c2)) * mu.dimension().pow_reciprocal(Rational(12));
    rep.total = measure_of_interval(f, {s}, J.a, J.b, sum_eval_depth(f, J.length()));
    rep.mass = Enclosure(Rational(0), Rational(0));
    if (rep.total.hi == 0) {
        rep.holds = true;
        return rep;
    }

    unsigned long nodes = 0;
    const int gen = family_generation(mu, J, depth);
    std::vector<FamilyEntry> family;
    if (gen > 0) family = build_family(f, J, delta, gen, depth);

    for (auto& e : family) {
        charge_nodes(nodes, 1, "inductive_claim2");
        rep.family.push_back(e.cert);
        if (!e.cert.certified || e.cert.length.lo <= 0) continue;
        const Rational top_lo = e.cert.lo.lo + e.cert.length.lo;
        const Rational x = conservative_preimage(f, e.gap.b, e.rt, top_lo,
                                                 e.cert.length.lo / 16, nodes);
        if (!(x > e.gap.b)) continue;
        const int eval = sum_eval_depth(f, x - e.gap.b);
        const Enclosure piece_mu = measure_of_interval(f, {s}, e.gap.b, x, eval);
        // The delta_0 domination gives mu >= (mu+eta)/2 at these scales, so
        // the piece must carry at least 1/16 of the truncated-gap mass.
        const Enclosure quota =
            Rational(1, 16) * measure_of_interval(f, {s}, e.gap.b, e.gap.b + e.rt, eval);
        if (!piece_mu.certainly_ge(quota)) continue;
        rep.intervals.push_back(OpenInterval(e.gap.b, x));
        rep.mass += piece_mu;
    }

    const Enclosure required = rep.K * rep.total;
    rep.holds = rep.mass.lo >= required.hi;
    return rep;
}

} // namespace fm
