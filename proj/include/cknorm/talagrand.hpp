#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cknorm/admissible.hpp"
#include "cknorm/orlicz.hpp"
#include "cknorm/step_function.hpp"

namespace cknorm {

/// A cutoff triple 0 < xi < eta < zeta of dyadic rationals, stored in the
/// canonical gap encoding
///
///     xi = p / 2^j,  eta = (p + a) / 2^j,  zeta = (p + a + b) / 2^j
///
/// with p, a, b >= 1 and j >= 0 minimal (j = 0 or not all of p, a, b even).
struct dyadic_triple {
    nat p = 1;
    nat a = 1;
    nat b = 1;
    unsigned j = 0;

    static dyadic_triple make(const nat& p, const nat& a, const nat& b, unsigned j);

    double xi() const;
    double eta() const;
    double zeta() const;
    bool operator==(const dyadic_triple&) const = default;
    std::string to_string() const;
};

/// Deterministic enumeration of every dyadic triple with summable positive
/// weights c_n = 1 / ((n+1)(n+2))  (total mass exactly 1).
///
/// Order: ascending joint complexity s = bits(p) + bits(a) + bits(b) + j;
/// within a diagonal, blocks (j, bits(a), bits(b)) lexicographically; within
/// a block, (a, b, p) lexicographically.  The index of a triple is computed
/// in closed form (no enumeration), so weights are available for triples
/// deep in the order, and the order keeps the indices of the cutoffs a
/// window search finds small enough that prefix scans stay cheap.
class triple_enumeration {
public:
    triple_enumeration() = default;

    /// Exact position of the triple in the enumeration.
    nat index_of(const dyadic_triple& t) const;

    /// c_n = 1 / ((n+1)(n+2)); 0.0 once the product overflows double range.
    static double weight_of_index(const nat& n);

    double weight_of(const dyadic_triple& t) const { return weight_of_index(index_of(t)); }

    /// Walks the enumeration in order.
    class cursor {
    public:
        cursor();
        const dyadic_triple& triple() const { return current_; }
        const nat& index() const { return index_; }
        double weight() const { return triple_enumeration::weight_of_index(index_); }
        void advance();

    private:
        void descend_to_first();
        bool next_tuple_in_block();
        bool next_block_in_diagonal();
        dyadic_triple current_;
        nat index_;
        unsigned s_;
        unsigned j_, ba_, bb_;  // current block
        friend class triple_enumeration;
    };
    cursor begin() const { return cursor(); }

    /// The triple with the smallest index whose three members all lie in the
    /// open interval (lo, hi); throws internal_error when the window is too
    /// thin to resolve (narrower than double precision allows).
    struct window_hit {
        dyadic_triple triple;
        nat index;
        double weight = 0.0;
    };
    window_hit smallest_in_window(double lo, double hi) const;

private:
    // Cumulative diagonal sizes: offset(s) = number of triples on diagonals < s.
    const nat& diagonal_offset(unsigned s) const;
    static nat diagonal_size(unsigned s);
    mutable std::vector<nat> offsets_;  // offsets_[s] = offset of diagonal s (index by s)
};

/// Index of one coordinate of the operator: a point, a cutoff triple, and
/// an admissible set.
struct talagrand_index {
    ordinal s;
    dyadic_triple triple;
    admissible_set a;
};

/// The explicit coordinate family
///
///   (Tf)(s, xi, eta, zeta, A) =
///       c(xi,eta,zeta) * B_{xi,eta}(f x chi_{K\V_A}) * Prod_{t in A}
///       phi_{eta,zeta}(f(t)) * chi_A(s)
///
/// where B is the norm-based bump improved to exact plateaus.  Nonzero
/// coordinates force A to be the hull of { |f| >= eta }, which gives the
/// finite-support (c_0) property; a witness coordinate with |f(s)| equal to
/// the sup-norm exists for every f != 0.
class talagrand_operator {
public:
    explicit talagrand_operator(ordinal_space space, orlicz_config cfg = {});

    const ordinal_space& space() const { return space_; }
    const triple_enumeration& triples() const { return enum_; }
    const orlicz_norm& norm() const { return norm_; }

    /// Bump with pinned plateaus: 1 when sup|f| <= xi, 0 when sup|f| >= eta.
    double improved_bump(double xi, double eta, const step_function& f) const;

    double coordinate(const step_function& f, const talagrand_index& idx) const;

    struct support_entry {
        talagrand_index index;
        nat enum_index;
        double weight = 0.0;
        double value = 0.0;
    };
    /// All coordinates with |value| >= eps.  Complete: every index not
    /// listed has |coordinate| < eps.  exclude_top_rank drops admissible
    /// sets meeting the top derived level of the space.
    std::vector<support_entry> support(const step_function& f, double eps,
                                       bool exclude_top_rank = false) const;

    struct witness_result {
        talagrand_index index;
        nat enum_index;
        double value = 0.0;
    };
    /// A coordinate that is nonzero at a point where |f| attains its
    /// sup-norm; throws input_error for f = 0.
    witness_result witness(const step_function& f) const;

    /// f restricted to the union of the neighborhoods named by the entries.
    step_function reconstruct(const step_function& f,
                              const std::vector<support_entry>& entries) const;

    struct reconstruction_report {
        double lambda = 0.0;
        std::optional<dyadic_triple> triple;
        std::vector<support_entry> support;
        double error = 0.0;
    };
    /// Threshold selection and reconstruction: err = sup|f - R_F f| < eps.
    reconstruction_report verify_reconstruction(const step_function& f, double eps) const;

    struct smoothness_report {
        double d1 = 0.0, d2 = 0.0, d3 = 0.0;   // central differences at h, h/2, h/4
        double order = 0.0;                    // Richardson convergence order
        bool degenerate = false;               // differences at machine level
        bool near_plateau_edge = false;        // inputs within 1e-6 of a cutoff edge
    };
    /// Finite-difference probe of one coordinate along a direction in the
    /// piece values of f.
    smoothness_report coordinate_smoothness_probe(const step_function& f,
                                                  const talagrand_index& idx,
                                                  const std::vector<double>& direction,
                                                  double h = 1e-3) const;

private:
    ordinal_space space_;
    orlicz_norm norm_;
    triple_enumeration enum_;
};

} // namespace cknorm
