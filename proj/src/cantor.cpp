#include "fm/cantor.hpp"

#include "fm/errors.hpp"
#include "fm/maximal.hpp"
#include "fm/measure.hpp"

#include <utility>

namespace fm {

namespace {

void validate_digits(const std::vector<int>& digits, int tail) {
    for (int a : digits)
        if (a != 0 && a != 1) throw DomainError("ternary point: digits must be 0 or 1");
    if (tail != 0 && tail != 1) throw DomainError("ternary point: tail must be 0 or 1");
}

const MeasureSum& cantor_sum() {
    static const MeasureSum s{MeasureSum(cantor_measure())};
    return s;
}

} // namespace

Rational TernaryPoint::value() const {
    validate_digits(digits, tail);
    Rational x(0);
    Rational scale(1);
    for (int a : digits) {
        scale = scale / 3;
        if (a == 1) x += 2 * scale;
    }
    if (tail == 1) x += scale; // sum of 2/3^k beyond position n is 3^-n
    return x;
}

Rational cantor_value(const TernaryPoint& p) {
    validate_digits(p.digits, p.tail);
    Rational h(0);
    Rational scale(1);
    for (int a : p.digits) {
        scale = scale / 2;
        if (a == 1) h += scale;
    }
    if (p.tail == 1) h += scale;
    return h;
}

ToyGap toy_gap_construct(const std::vector<int>& prefix, int K) {
    if (K < 1 || static_cast<std::size_t>(K) != prefix.size() + 1)
        throw DomainError("toy_gap_construct: K must equal prefix length + 1");
    validate_digits(prefix, 0);

    ToyGap out;
    out.x.digits = prefix;
    out.x.digits.push_back(1);
    out.x.tail = 0;
    out.l.digits = prefix;
    out.l.digits.push_back(0);
    out.l.tail = 1;
    out.r.digits = prefix;
    out.r.digits.push_back(1);
    out.r.tail = 1;

    const Rational hx = cantor_value(out.x);
    const Rational top = hx + Rational::pow(Rational(2), -(K + 2));
    out.image_gap = OpenInterval(hx, top);

    const Rational radius = Rational::pow(Rational(3), -K);
    const Enclosure avg = interval_average(cantor_sum(), out.x.value(), radius, K + 4);
    if (!avg.exact() || avg.lo != top)
        throw DomainError("toy_gap_construct: averaging identity failed");
    out.average = avg.lo;
    return out;
}

PatternScan pattern_scan(const Rational& y, int window, const BinaryPattern& pattern) {
    if (y < 0 || y > 1) throw DomainError("pattern_scan: y outside [0, 1]");
    if (window < 3) throw DomainError("pattern_scan: window must be at least 3");
    if (pattern.bits.empty()) throw DomainError("pattern_scan: empty pattern");
    for (int b : pattern.bits)
        if (b != 0 && b != 1) throw DomainError("pattern_scan: pattern bits must be 0 or 1");

    PatternScan out;
    // A canonical denominator is a power of two iff it has a single set bit.
    out.dyadic = mpz_popcount(y.denominator().get_mpz_t()) == 1;

    out.digits.reserve(static_cast<std::size_t>(window));
    Rational frac = y - Rational(y.floor());
    for (int k = 0; k < window; ++k) {
        frac = 2 * frac;
        const mpz_class d = frac.floor();
        out.digits.push_back(static_cast<int>(d.get_si()));
        frac -= Rational(d);
    }

    const std::size_t plen = pattern.bits.size();
    for (std::size_t k = 0; k + plen <= out.digits.size(); ++k) {
        bool match = true;
        for (std::size_t t = 0; t < plen; ++t)
            if (out.digits[k + t] != pattern.bits[t]) {
                match = false;
                break;
            }
        if (match) out.positions.push_back(k + 1);
    }
    return out;
}

ExcludedCover excluded_interval_cover(int k_max) {
    if (k_max < 1) throw DomainError("excluded_interval_cover: k_max must be at least 1");

    ExcludedCover out;
    out.covered = Rational(0);
    unsigned long nodes = 0;

    std::vector<std::vector<int>> prefixes{{}};
    for (int start = 1; start <= k_max; start += 3) {
        for (const auto& p : prefixes) {
            charge_nodes(nodes, 1, "excluded_interval_cover");
            const ToyGap gap = toy_gap_construct(p, start);
            out.items.push_back(ExcludedCover::Item{p, start, gap.image_gap});
            out.covered += gap.image_gap.length();
        }
        if (start + 3 > k_max) break;
        std::vector<std::vector<int>> next;
        next.reserve(prefixes.size() * 7);
        for (const auto& p : prefixes) {
            for (int b = 0; b < 8; ++b) {
                const int b1 = (b >> 2) & 1;
                const int b2 = (b >> 1) & 1;
                const int b3 = b & 1;
                if (b1 == 1 && b2 == 0 && b3 == 0) continue;
                std::vector<int> q = p;
                q.push_back(b1);
                q.push_back(b2);
                q.push_back(b3);
                next.push_back(std::move(q));
            }
        }
        prefixes = std::move(next);
    }
    out.residual = Rational(1) - out.covered;
    return out;
}

} // namespace fm
