#include "fm/covering.hpp"

#include "fm/errors.hpp"

#include <algorithm>
#include <utility>

namespace fm {

namespace {

void collect_gaps(const IFSMeasure& mu, const OpenInterval& J, int max_generation,
                  const Rational& left, const Rational& right, int depth,
                  std::vector<Gap>& out, unsigned long& nodes) {
    charge_nodes(nodes, 1, "gap_enumerate");
    if (right <= J.a || left >= J.b) return;
    const Rational len = right - left;
    const auto& maps = mu.maps();
    std::vector<Rational> edges;
    edges.reserve(2 * maps.size());
    for (const auto& m : maps) {
        edges.push_back(left + len * m.left());
        edges.push_back(left + len * m.right());
    }
    for (std::size_t j = 0; j + 1 < maps.size(); ++j) {
        const Rational& a = edges[2 * j + 1];
        const Rational& b = edges[2 * j + 2];
        if (J.a <= a && b <= J.b) out.push_back(Gap{0, a, b, depth + 1});
    }
    if (depth + 1 < max_generation) {
        for (std::size_t j = 0; j < maps.size(); ++j)
            collect_gaps(mu, J, max_generation, edges[2 * j], edges[2 * j + 1], depth + 1, out,
                         nodes);
    }
}

Rational ball_left(const WeightedBall& b) { return b.center - b.radius; }
Rational ball_right(const WeightedBall& b) { return b.center + b.radius; }

} // namespace

std::vector<Gap> gap_enumerate(const IFSMeasure& mu, const OpenInterval& J, int max_generation) {
    if (max_generation < 1) throw DomainError("gap_enumerate: max_generation must be positive");
    std::vector<Gap> out;
    unsigned long nodes = 0;
    collect_gaps(mu, J, max_generation, Rational(0), Rational(1), 0, out, nodes);
    std::sort(out.begin(), out.end(), [](const Gap& x, const Gap& y) { return x.a < y.a; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = i;
    return out;
}

SelectionResult besicovitch_select(const std::vector<WeightedBall>& balls) {
    const std::size_t n = balls.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Rational lx = ball_left(balls[x]);
        const Rational ly = ball_left(balls[y]);
        if (lx != ly) return lx < ly;
        if (balls[x].radius != balls[y].radius) return balls[x].radius > balls[y].radius;
        return x < y;
    });

    SelectionResult res;
    unsigned long nodes = 0;
    std::size_t i = 0;
    while (i < n) {
        if (balls[order[i]].radius == 0) {
            ++i;
            continue;
        }
        // Component of the union starting at order[i]; touching balls belong
        // to the next component.
        std::size_t end = i + 1;
        Rational comp_right = ball_right(balls[order[i]]);
        while (end < n && ball_left(balls[order[end]]) < comp_right) {
            comp_right = max(comp_right, ball_right(balls[order[end]]));
            ++end;
        }
        // Furthest-reaching chain inside the component.
        res.selected.push_back(order[i]);
        Rational reach = ball_right(balls[order[i]]);
        while (reach < comp_right) {
            std::size_t best = n;
            for (std::size_t j = i + 1; j < end; ++j) {
                charge_nodes(nodes, 1, "besicovitch_select");
                const std::size_t k = order[j];
                if (!(ball_left(balls[k]) < reach)) continue;
                if (!(ball_right(balls[k]) > reach)) continue;
                if (best == n || ball_right(balls[k]) > ball_right(balls[best])) best = k;
            }
            if (best == n) break;
            res.selected.push_back(best);
            reach = ball_right(balls[best]);
        }
        i = end;
    }
    std::sort(res.selected.begin(), res.selected.end());
    return res;
}

SelectionResult vitali_select(const std::vector<WeightedBall>& balls) {
    const std::size_t n = balls.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (balls[x].radius != balls[y].radius) return balls[x].radius > balls[y].radius;
        if (balls[x].center != balls[y].center) return balls[x].center < balls[y].center;
        return x < y;
    });

    SelectionResult res;
    unsigned long nodes = 0;
    for (std::size_t k : order) {
        if (balls[k].radius == 0) continue;
        bool free = true;
        for (std::size_t kept : res.selected) {
            charge_nodes(nodes, 1, "vitali_select");
            if (balls[k].interval().overlaps(balls[kept].interval())) {
                free = false;
                break;
            }
        }
        if (free) res.selected.push_back(k);
    }
    std::sort(res.selected.begin(), res.selected.end());
    return res;
}

std::vector<Rational> truncated_radii(const std::vector<Gap>& gaps, const OpenInterval& J) {
    std::vector<Rational> out;
    out.reserve(gaps.size());
    for (const auto& g : gaps) out.push_back(min(g.radius(), J.b - g.b));
    return out;
}

namespace {

Enclosure mass_of_components(const IFSMeasure& mu, std::vector<OpenInterval> pieces, int depth) {
    Enclosure total(Rational(0), Rational(0));
    for (const auto& c : merge_components(std::move(pieces)))
        total += measure_of_interval(mu, c.a, c.b, depth);
    return total;
}

int eval_depth_for(const IFSMeasure& mu, const std::vector<Gap>& gaps, const OpenInterval& J) {
    Rational scale = J.length();
    for (const auto& g : gaps) scale = min(scale, g.radius());
    if (scale <= 0) scale = J.length();
    return mu.depth_for_radius(scale);
}

} // namespace

DensityReport density_check_L1(const IFSMeasure& mu, const OpenInterval& J, int depth) {
    if (J.empty()) throw DomainError("density_check_L1: empty interval");
    const std::vector<Gap> gaps = gap_enumerate(mu, J, depth);
    const int eval_depth = eval_depth_for(mu, gaps, J);

    std::vector<OpenInterval> collars;
    collars.reserve(gaps.size());
    for (const auto& g : gaps) {
        OpenInterval collar(g.b, g.b + g.radius());
        collar = collar.clipped_to(J);
        if (!collar.empty()) collars.push_back(collar);
    }

    DensityReport rep;
    rep.family_size = gaps.size();
    rep.selected_size = gaps.size();
    rep.lhs = mass_of_components(mu, std::move(collars), eval_depth);
    const Rational c = mu.regularity_constant();
    const Rational factor = Rational(1) / (2 * c * c);
    rep.rhs = factor * (mu.dimension().pow_reciprocal(Rational(4)) *
                        measure_of_interval(mu, J.a, J.b, eval_depth));
    rep.holds = rep.lhs.certainly_ge(rep.rhs);
    return rep;
}

DensityReport density_check_L2(const IFSMeasure& mu, const OpenInterval& J, int depth) {
    if (J.empty()) throw DomainError("density_check_L2: empty interval");
    const std::vector<Gap> gaps = gap_enumerate(mu, J, depth);
    const std::vector<Rational> rt = truncated_radii(gaps, J);
    const int eval_depth = eval_depth_for(mu, gaps, J);

    std::vector<WeightedBall> balls;
    balls.reserve(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i)
        if (rt[i] > 0) balls.push_back(WeightedBall{gaps[i].b, rt[i]});

    const SelectionResult sel = vitali_select(balls);

    DensityReport rep;
    rep.family_size = balls.size();
    rep.selected_size = sel.selected.size();
    rep.lhs = Enclosure(Rational(0), Rational(0));
    for (std::size_t k : sel.selected) {
        const OpenInterval ball = balls[k].interval();
        rep.lhs += measure_of_interval(mu, ball.a, ball.b, eval_depth);
    }
    const Rational c = mu.regularity_constant();
    const Rational c2 = c * c;
    const Rational factor = Rational(1) / (2 * c2 * c2);
    rep.rhs = factor * (mu.dimension().pow_reciprocal(Rational(12)) *
                        measure_of_interval(mu, J.a, J.b, eval_depth));
    rep.holds = rep.lhs.certainly_ge(rep.rhs);
    return rep;
}

} // namespace fm
