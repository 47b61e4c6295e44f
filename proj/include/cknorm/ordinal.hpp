#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cknorm {

/// Arbitrary-precision natural number used for term coefficients and
/// point counts.
using nat = boost::multiprecision::cpp_int;

/// An ordinal below epsilon_0 in Cantor normal form:
///
///     w^{e_1} * c_1 + ... + w^{e_n} * c_n
///
/// with e_1 > e_2 > ... > e_n (exponents are themselves ordinals) and every
/// c_i >= 1.  The empty term list is 0.  Values are immutable after
/// construction and freely shareable.
class ordinal {
public:
    struct term;

    ordinal();                       // zero
    ordinal(const ordinal&);
    ordinal(ordinal&&) noexcept;
    ordinal& operator=(const ordinal&);
    ordinal& operator=(ordinal&&) noexcept;
    ~ordinal();

    ordinal(std::uint64_t n);        // finite ordinal (implicit on purpose)
    explicit ordinal(const nat& n);

    /// w^exp * coeff, requires coeff >= 1 (coeff = 0 gives zero).
    static ordinal omega_power(const ordinal& exp, const nat& coeff = 1);
    static ordinal omega();

    const std::vector<term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;          // 0 or single term with exponent 0
    bool is_successor() const;       // last exponent is 0
    bool is_limit() const;           // nonzero and last exponent > 0

    /// The finite value; throws input_error unless is_finite().
    nat as_nat() const;

    /// Leading exponent; 0 for the zero ordinal.
    const ordinal& leading_exponent() const;
    const nat& leading_coefficient() const;

    /// Least exponent of the normal form (the omega-valuation), with
    /// rank(0) = 0.  This is the Cantor-Bendixson rank of the point in any
    /// interval space containing it.
    const ordinal& rank() const;

    /// Everything but the last term (the mu in t = mu + w^e * c).
    ordinal prefix() const;

    /// Last term split off: t = prefix + w^e * c.
    const term& last_term() const;   // requires nonzero

    ordinal successor() const;
    /// Predecessor of a successor ordinal; throws input_error otherwise.
    ordinal predecessor() const;

    friend std::strong_ordering operator<=>(const ordinal& a, const ordinal& b);
    friend bool operator==(const ordinal& a, const ordinal& b);

    /// Ordinal addition (left terms below the right's leading exponent are
    /// absorbed).
    friend ordinal operator+(const ordinal& a, const ordinal& b);

    std::string to_string() const;

private:
    std::vector<term> terms_;

    static ordinal from_terms(std::vector<term> terms);
    void check_invariants() const;   // throws internal_error
    friend struct ordinal_builder;
};

struct ordinal::term {
    ordinal exponent;
    nat coefficient;
};

std::ostream& operator<<(std::ostream& os, const ordinal& a);

enum class ordinal_kind { zero, successor, limit };
ordinal_kind classify(const ordinal& a);

/// Unique d with a + d = b; requires a <= b.
ordinal left_subtract(const ordinal& a, const ordinal& b);

/// Splits t = w^e * quotient + remainder with remainder < w^e.  The
/// quotient terms are the CNF terms of t with exponent >= e, shifted down
/// by e; points of rank >= e in an interval are exactly w^e * q for q in
/// the quotient range.
struct omega_divmod_result {
    ordinal quotient;
    ordinal remainder;
};
omega_divmod_result divmod_omega_power(const ordinal& t, const ordinal& e);

/// w^e * q for an arbitrary ordinal q (left multiplication by w^e).
ordinal omega_power_mul(const ordinal& e, const ordinal& q);

/// The set { k >= 1 : w^e * k in [lo, hi] } for finite k, either as the
/// contiguous range [first, last] or flagged infinite (hi dominates every
/// finite multiple).
struct multiple_range {
    bool infinite = false;
    nat first;                        // meaningful when !infinite and !empty()
    nat last;
    bool empty() const { return !infinite && first > last; }
    nat count() const { return infinite || empty() ? nat(0) : nat(last - first + 1); }
};
multiple_range multiples_in(const ordinal& e, const ordinal& lo, const ordinal& hi);

/// Parses the ordinal grammar:
///
///   literal  := term ('+' term)*
///   term     := nat | 'w' ('^' exponent)? ('*' nat)?
///   exponent := '(' literal ')' | nat | 'w' ('^' exponent)?
///
/// Whitespace-insensitive.  Terms are combined with ordinal addition, so
/// non-canonical input like "w + 1 + w" is accepted (value w*2).
/// Throws input_error with the offending position.
ordinal parse_ordinal(const std::string& text);

} // namespace cknorm
