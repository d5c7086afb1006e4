#include "fm/rational.hpp"

#include "fm/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <mutex>
#include <ostream>

namespace fm {

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

static bool valid_rational_text(const std::string& s) {
    // [+-]?digits(/digits)? with nonempty digit runs and no stray characters.
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i == s.size() && i != start;
}

Rational Rational::parse(const std::string& text) {
    if (!valid_rational_text(text))
        throw ParseError("malformed rational: '" + text + "'");
    mpq_class v;
    // mpq set_str rejects an explicit leading '+'.
    if (v.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
        throw ParseError("malformed rational: '" + text + "'");
    if (v.get_den() == 0)
        throw ParseError("zero denominator in rational: '" + text + "'");
    v.canonicalize();
    return Rational(v);
}

Rational Rational::pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base.is_zero()) {
        if (e < 0) throw DomainError("0 raised to a negative power");
        return Rational(0);
    }
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
    mpq_class r;
    if (e > 0) {
        r = mpq_class(num, den);
    } else {
        r = mpq_class(den, num);
    }
    r.canonicalize();
    return Rational(r);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::string Rational::str() const {
    return v_.get_str();
}

std::string Rational::decimal(int digits) const {
    if (digits < 0) digits = 0;
    bool neg = sign() < 0;
    mpz_class num = ::abs(v_.get_num());
    const mpz_class& den = v_.get_den();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class shifted = num * scale / den; // truncates toward zero
    mpz_class ip = shifted / scale;
    mpz_class fp = shifted % scale;
    std::string out = neg && (ip != 0 || fp != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string frac = fp.get_str();
        out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

unsigned long node_budget() {
    static std::once_flag flag;
    static unsigned long budget = 8000000UL;
    std::call_once(flag, [] {
        if (const char* env = std::getenv("FM_NODE_BUDGET")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) budget = v;
        }
    });
    return budget;
}

void charge_nodes(unsigned long& used, unsigned long amount, const char* where) {
    used += amount;
    if (used > node_budget())
        throw BudgetError(std::string("node budget exhausted in ") + where);
}

} // namespace fm
