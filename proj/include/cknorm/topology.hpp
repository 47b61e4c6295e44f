#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cknorm/ordinal.hpp"

namespace cknorm {

/// The compact ordinal interval K = [0, gamma] with the order topology.
/// Scattered; its Cantor-Bendixson height is the leading exponent of gamma.
class ordinal_space {
public:
    explicit ordinal_space(ordinal gamma) : gamma_(std::move(gamma)) {}

    const ordinal& max_point() const { return gamma_; }
    bool contains(const ordinal& t) const { return t <= gamma_; }
    void require_point(const ordinal& t) const;  // throws input_error if t > gamma

    /// Leading exponent of gamma: the largest rank attained by a point.
    const ordinal& cb_height() const { return gamma_.leading_exponent(); }

    /// True when the height is a natural number (gamma < w^w), the regime
    /// in which per-rank constants can be indexed by integers.
    bool finite_height() const { return cb_height().is_finite(); }

private:
    ordinal gamma_;
};

/// The basic clopen set (low_pred, high]; an empty low_pred means the
/// interval starts at 0, i.e. [0, high].
struct clopen_interval {
    std::optional<ordinal> low_pred;
    ordinal high;

    bool contains(const ordinal& t) const {
        if (t > high) return false;
        return !low_pred || t > *low_pred;
    }
    /// Smallest element (0 or successor(low_pred)).
    ordinal first() const { return low_pred ? low_pred->successor() : ordinal(); }

    std::string to_string() const;
};

/// A closed subset of [0, gamma] kept as sorted, disjoint, non-adjacent
/// closed intervals [a_i, b_i] (successor(b_i) < a_{i+1}).  Normal form
/// makes equality structural.
class closed_set {
public:
    using interval = std::pair<ordinal, ordinal>;

    closed_set() = default;
    /// Normalizes: sorts, merges overlapping and adjacent intervals.
    static closed_set from_intervals(std::vector<interval> intervals);
    static closed_set from_points(const std::vector<ordinal>& points);
    static closed_set single(const ordinal& a, const ordinal& b);

    const std::vector<interval>& intervals() const { return intervals_; }
    bool is_empty() const { return intervals_.empty(); }
    bool contains(const ordinal& t) const;
    const ordinal& min_point() const;   // requires nonempty
    const ordinal& max_point() const;   // requires nonempty

    /// This set minus a clopen interval (p, t]; again a valid closed_set.
    closed_set subtract_clopen(const clopen_interval& u) const;

    void check_invariants() const;      // throws internal_error

    std::string to_string() const;
    bool operator==(const closed_set&) const = default;

private:
    std::vector<interval> intervals_;
};

/// Membership in the iterated derived set: t in K^(alpha) iff rank(t) >= alpha.
bool in_derived(const ordinal_space& space, const ordinal& t, const ordinal& alpha);

/// The canonical compact-open neighborhood of t: for t = mu + w^e * c with
/// e = rank(t) this is (mu + w^e * (c-1), t], and {0} for t = 0.  It meets
/// K^(rank t) exactly in {t}.
clopen_interval canonical_vt(const ordinal_space& space, const ordinal& t);

/// V_B = union of V_t over t in B, kept as a list.  Membership means
/// membership in some member interval.
std::vector<clopen_interval> v_of_set(const ordinal_space& space,
                                      const std::vector<ordinal>& points);
bool vt_union_contains(const std::vector<clopen_interval>& vs, const ordinal& t);

/// For alpha = max rank over B, checks V_B meets K^(alpha) exactly in
/// B's top-rank points and misses K^(alpha + 1) entirely.  Expected to
/// hold for every finite nonempty B.
bool check_vb_rank_trace(const ordinal_space& space, const std::vector<ordinal>& points);

/// Exact number of points of rank >= e (or exactly e) in [a, b].
struct point_count {
    bool infinite = false;
    nat count;                      // valid when !infinite
};
point_count count_rank_at_least(const ordinal& a, const ordinal& b, const ordinal& e);
point_count count_rank_exactly(const ordinal& a, const ordinal& b, const ordinal& e);

/// Largest rank attained inside the set; requires nonempty.
ordinal max_rank(const closed_set& h);

/// All points of rank >= e, or nullopt when there are infinitely many.
/// At e = max_rank(h) the result is always finite.
std::optional<std::vector<ordinal>> points_of_rank_at_least(const closed_set& h,
                                                            const ordinal& e);
/// Same for rank exactly e (used to materialize finite rank classes).
std::optional<std::vector<ordinal>> points_of_rank_exactly(const closed_set& h,
                                                           const ordinal& e);

/// First n terms of the canonical increasing sequence converging to the
/// limit point t; every term has rank < rank(t).  Throws input_error when
/// t is 0 or a successor.
std::vector<ordinal> cofinal_sequence(const ordinal& t, std::size_t n);

} // namespace cknorm
