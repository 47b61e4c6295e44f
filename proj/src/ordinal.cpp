#include "cknorm/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

#include "cknorm/errors.hpp"

namespace cknorm {

ordinal::ordinal() = default;
ordinal::ordinal(const ordinal&) = default;
ordinal::ordinal(ordinal&&) noexcept = default;
ordinal& ordinal::operator=(const ordinal&) = default;
ordinal& ordinal::operator=(ordinal&&) noexcept = default;
ordinal::~ordinal() = default;

ordinal::ordinal(std::uint64_t n) {
    if (n > 0) terms_.push_back(term{ordinal(), nat(n)});
}

ordinal::ordinal(const nat& n) {
    if (n < 0) throw input_error("ordinal: negative natural");
    if (n > 0) terms_.push_back(term{ordinal(), n});
}

ordinal ordinal::omega_power(const ordinal& exp, const nat& coeff) {
    if (coeff < 0) throw input_error("omega_power: negative coefficient");
    ordinal r;
    if (coeff > 0) r.terms_.push_back(term{exp, coeff});
    return r;
}

ordinal ordinal::omega() { return omega_power(ordinal(1)); }

bool ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool ordinal::is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

nat ordinal::as_nat() const {
    if (terms_.empty()) return nat(0);
    if (!is_finite()) throw input_error("as_nat: ordinal " + to_string() + " is infinite");
    return terms_[0].coefficient;
}

const ordinal& ordinal::leading_exponent() const {
    static const ordinal zero_;
    return terms_.empty() ? zero_ : terms_.front().exponent;
}

const nat& ordinal::leading_coefficient() const {
    static const nat zero_(0);
    return terms_.empty() ? zero_ : terms_.front().coefficient;
}

const ordinal& ordinal::rank() const {
    static const ordinal zero_;
    return terms_.empty() ? zero_ : terms_.back().exponent;
}

ordinal ordinal::prefix() const {
    if (terms_.empty()) throw internal_error("prefix of zero ordinal");
    ordinal r;
    r.terms_.assign(terms_.begin(), terms_.end() - 1);
    return r;
}

const ordinal::term& ordinal::last_term() const {
    if (terms_.empty()) throw internal_error("last_term of zero ordinal");
    return terms_.back();
}

ordinal ordinal::successor() const { return *this + ordinal(1); }

ordinal ordinal::predecessor() const {
    if (!is_successor())
        throw input_error("predecessor: " + to_string() + " is not a successor ordinal");
    ordinal r(*this);
    if (r.terms_.back().coefficient == 1)
        r.terms_.pop_back();
    else
        r.terms_.back().coefficient -= 1;
    return r;
}

std::strong_ordering operator<=>(const ordinal& a, const ordinal& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ec = a.terms_[i].exponent <=> b.terms_[i].exponent;
        if (ec != std::strong_ordering::equal) return ec;
        if (a.terms_[i].coefficient != b.terms_[i].coefficient)
            return a.terms_[i].coefficient < b.terms_[i].coefficient
                       ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    }
    // One is an extension of the other; the longer one is larger.
    return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const ordinal& a, const ordinal& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

ordinal operator+(const ordinal& a, const ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const ordinal& lead = b.terms_.front().exponent;
    ordinal r;
    // Keep the terms of a with exponent > lead; a term with exponent == lead
    // merges coefficients, everything smaller is absorbed.
    std::size_t i = 0;
    while (i < a.terms_.size() && a.terms_[i].exponent > lead) {
        r.terms_.push_back(a.terms_[i]);
        ++i;
    }
    r.terms_.push_back(b.terms_.front());
    if (i < a.terms_.size() && a.terms_[i].exponent == lead)
        r.terms_.back().coefficient += a.terms_[i].coefficient;
    r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
    return r;
}

void ordinal::check_invariants() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient < 1)
            throw internal_error("ordinal: coefficient below 1");
        if (i > 0 && !(terms_[i - 1].exponent > terms_[i].exponent))
            throw internal_error("ordinal: exponents not strictly decreasing");
    }
}

ordinal_kind classify(const ordinal& a) {
    if (a.is_zero()) return ordinal_kind::zero;
    return a.is_successor() ? ordinal_kind::successor : ordinal_kind::limit;
}

ordinal left_subtract(const ordinal& a, const ordinal& b) {
    if (a > b) throw input_error("left_subtract: minuend smaller than subtrahend");
    const auto& at = a.terms();
    const auto& bt = b.terms();
    std::size_t i = 0;
    while (i < at.size() && i < bt.size() && at[i].exponent == bt[i].exponent &&
           at[i].coefficient == bt[i].coefficient)
        ++i;
    ordinal d;
    if (i == bt.size()) return d;    // a == b (a cannot extend b when a <= b)
    std::vector<ordinal::term> rest(bt.begin() + i, bt.end());
    if (i < at.size() && at[i].exponent == bt[i].exponent) {
        // Same exponent, coefficient of b strictly larger.
        rest[0].coefficient = bt[i].coefficient - at[i].coefficient;
    }
    // Otherwise b's term at i has the larger exponent and a's tail is absorbed.
    ordinal r;
    for (auto& t : rest) r = r + ordinal::omega_power(t.exponent, t.coefficient);
    return r;
}

omega_divmod_result divmod_omega_power(const ordinal& t, const ordinal& e) {
    omega_divmod_result r;
    for (const auto& tm : t.terms()) {
        if (tm.exponent >= e)
            r.quotient = r.quotient + ordinal::omega_power(left_subtract(e, tm.exponent), tm.coefficient);
        else
            r.remainder = r.remainder + ordinal::omega_power(tm.exponent, tm.coefficient);
    }
    return r;
}

ordinal omega_power_mul(const ordinal& e, const ordinal& q) {
    ordinal r;
    for (const auto& tm : q.terms())
        r = r + ordinal::omega_power(e + tm.exponent, tm.coefficient);
    return r;
}

namespace {

// Number of k >= 1 with w^e * k <= x, as a count or the infinite flag.
multiple_range multiples_le(const ordinal& e, const ordinal& x) {
    multiple_range r;
    r.first = 1;
    if (x.is_zero()) {
        r.last = 0;
        return r;
    }
    const auto cmp = x.leading_exponent() <=> e;
    if (cmp == std::strong_ordering::greater) {
        r.infinite = true;  // w^e * k < w^{lead} <= x for every finite k
        return r;
    }
    if (cmp == std::strong_ordering::less) {
        r.last = 0;
        return r;
    }
    r.last = x.leading_coefficient();
    return r;
}

// Number of k >= 1 with w^e * k < lo.
multiple_range multiples_lt(const ordinal& e, const ordinal& lo) {
    multiple_range r;
    r.first = 1;
    if (lo.is_zero()) {
        r.last = 0;
        return r;
    }
    const auto cmp = lo.leading_exponent() <=> e;
    if (cmp == std::strong_ordering::greater) {
        r.infinite = true;
        return r;
    }
    if (cmp == std::strong_ordering::less) {
        r.last = 0;
        return r;
    }
    r.last = lo.leading_coefficient() - 1;
    if (lo.terms().size() > 1) r.last += 1;  // w^e * c itself is below lo
    return r;
}

} // namespace

multiple_range multiples_in(const ordinal& e, const ordinal& lo, const ordinal& hi) {
    if (lo > hi) throw input_error("multiples_in: empty interval (lo > hi)");
    const multiple_range below = multiples_lt(e, lo);
    if (below.infinite) {
        // lo already dominates every finite multiple of w^e.
        multiple_range r;
        r.first = 1;
        r.last = 0;
        return r;
    }
    multiple_range upto = multiples_le(e, hi);
    if (upto.infinite) return upto;
    multiple_range r;
    r.first = below.last + 1;
    r.last = upto.last;
    return r;
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

namespace {

struct parser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("ordinal parse error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    nat parse_nat() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected digit");
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            digits.push_back(s[pos++]);
        return nat(digits);
    }

    // nat | 'w' ('^' exponent)?  -- no '*' or '+' unless parenthesized
    ordinal parse_simple_exponent() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            ordinal r = parse_literal();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 'w') {
            ++pos;
            if (eat('^')) return ordinal::omega_power(parse_simple_exponent());
            return ordinal::omega();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return ordinal(parse_nat());
        fail("expected exponent");
    }

    ordinal parse_term() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return ordinal(parse_nat());
        if (c != 'w') fail("expected term ('w' or digits)");
        ++pos;
        ordinal exp(1);
        if (eat('^')) exp = parse_simple_exponent();
        nat coeff(1);
        if (eat('*')) {
            coeff = parse_nat();
            if (coeff == 0) fail("coefficient must be positive");
        }
        return ordinal::omega_power(exp, coeff);
    }

    ordinal parse_literal() {
        ordinal r = parse_term();
        while (eat('+')) r = r + parse_term();
        return r;
    }
};

bool exponent_prints_simple(const ordinal& e) {
    // Printable after '^' without parentheses: a natural number, or a
    // single coefficient-1 power tower.
    if (e.is_finite()) return true;
    if (e.terms().size() != 1 || e.terms()[0].coefficient != 1) return false;
    return exponent_prints_simple(e.terms()[0].exponent);
}

void print_term(std::ostream& os, const ordinal::term& t) {
    if (t.exponent.is_zero()) {
        os << t.coefficient;
        return;
    }
    if (t.exponent == ordinal(1))
        os << "w";
    else if (exponent_prints_simple(t.exponent))
        os << "w^" << t.exponent;
    else
        os << "w^(" << t.exponent << ")";
    if (t.coefficient != 1) os << "*" << t.coefficient;
}

} // namespace

ordinal parse_ordinal(const std::string& text) {
    parser p{text};
    ordinal r = p.parse_literal();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

std::string ordinal::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ordinal& a) {
    if (a.is_zero()) return os << "0";
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) os << " + ";
        print_term(os, t);
        first = false;
    }
    return os;
}

} // namespace cknorm
