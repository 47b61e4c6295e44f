#include "cknorm/topology.hpp"

#include <algorithm>
#include <sstream>

#include "cknorm/errors.hpp"

namespace cknorm {

void ordinal_space::require_point(const ordinal& t) const {
    if (t > gamma_)
        throw input_error("point " + t.to_string() + " outside the space [0, " +
                          gamma_.to_string() + "]");
}

std::string clopen_interval::to_string() const {
    if (!low_pred) return "[0, " + high.to_string() + "]";
    return "(" + low_pred->to_string() + ", " + high.to_string() + "]";
}

// ---------------------------------------------------------------------------
// closed_set
// ---------------------------------------------------------------------------

closed_set closed_set::from_intervals(std::vector<interval> intervals) {
    for (const auto& [a, b] : intervals)
        if (a > b) throw input_error("closed_set: interval with lower end above upper end");
    std::sort(intervals.begin(), intervals.end());
    closed_set r;
    for (auto& iv : intervals) {
        if (!r.intervals_.empty()) {
            auto& last = r.intervals_.back();
            if (iv.first <= last.second.successor()) {  // overlap or adjacency
                if (iv.second > last.second) last.second = iv.second;
                continue;
            }
        }
        r.intervals_.push_back(std::move(iv));
    }
    r.check_invariants();
    return r;
}

closed_set closed_set::from_points(const std::vector<ordinal>& points) {
    std::vector<interval> iv;
    iv.reserve(points.size());
    for (const auto& p : points) iv.emplace_back(p, p);
    return from_intervals(std::move(iv));
}

closed_set closed_set::single(const ordinal& a, const ordinal& b) {
    return from_intervals({{a, b}});
}

bool closed_set::contains(const ordinal& t) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](const ordinal& v, const interval& iv) { return v < iv.first; });
    if (it == intervals_.begin()) return false;
    --it;
    return t <= it->second;
}

const ordinal& closed_set::min_point() const {
    if (intervals_.empty()) throw input_error("min_point of empty closed set");
    return intervals_.front().first;
}

const ordinal& closed_set::max_point() const {
    if (intervals_.empty()) throw input_error("max_point of empty closed set");
    return intervals_.back().second;
}

closed_set closed_set::subtract_clopen(const clopen_interval& u) const {
    std::vector<interval> out;
    for (const auto& [a, b] : intervals_) {
        if (u.low_pred) {
            const ordinal& p = *u.low_pred;
            if (a <= p) out.emplace_back(a, std::min(b, p));  // part in [0, p]
        }
        const ordinal above = u.high.successor();
        if (b >= above) out.emplace_back(std::max(a, above), b);
    }
    closed_set r;
    r.intervals_ = std::move(out);
    r.check_invariants();
    return r;
}

void closed_set::check_invariants() const {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (intervals_[i].first > intervals_[i].second)
            throw internal_error("closed_set: inverted interval");
        if (i > 0 && !(intervals_[i - 1].second.successor() < intervals_[i].first))
            throw internal_error("closed_set: intervals not sorted/disjoint/non-adjacent");
    }
}

std::string closed_set::to_string() const {
    if (intervals_.empty()) return "{}";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, b] : intervals_) {
        if (!first) os << " u ";
        if (a == b)
            os << "{" << a << "}";
        else
            os << "[" << a << ", " << b << "]";
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Derived sets, canonical neighborhoods
// ---------------------------------------------------------------------------

bool in_derived(const ordinal_space& space, const ordinal& t, const ordinal& alpha) {
    space.require_point(t);
    return t.rank() >= alpha;
}

clopen_interval canonical_vt(const ordinal_space& space, const ordinal& t) {
    space.require_point(t);
    if (t.is_zero()) return clopen_interval{std::nullopt, t};
    const auto& last = t.last_term();
    ordinal pred = t.prefix();
    if (last.coefficient > 1)
        pred = pred + ordinal::omega_power(last.exponent, last.coefficient - 1);
    return clopen_interval{std::move(pred), t};
}

std::vector<clopen_interval> v_of_set(const ordinal_space& space,
                                      const std::vector<ordinal>& points) {
    if (points.empty()) throw input_error("v_of_set: empty point set");
    std::vector<clopen_interval> vs;
    vs.reserve(points.size());
    for (const auto& t : points) vs.push_back(canonical_vt(space, t));
    return vs;
}

bool vt_union_contains(const std::vector<clopen_interval>& vs, const ordinal& t) {
    for (const auto& v : vs)
        if (v.contains(t)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Counting points by rank inside an interval
//
// Points of rank >= e in [a, b] are exactly w^e * q for q in a quotient
// interval [q_lo, q_hi] (q >= 1; q = 0 is the point 0, which has rank 0).
// ---------------------------------------------------------------------------

namespace {

struct quotient_range {
    ordinal lo;       // least q with w^e * q >= a (and q >= 1 unless e == 0 and a == 0)
    ordinal hi;       // greatest q with w^e * q <= b
    bool empty = false;
};

quotient_range rank_quotients(const ordinal& a, const ordinal& b, const ordinal& e) {
    if (a > b) throw input_error("rank_quotients: empty interval");
    quotient_range r;
    const auto da = divmod_omega_power(a, e);
    r.lo = da.remainder.is_zero() ? da.quotient : da.quotient.successor();
    if (!e.is_zero() && r.lo.is_zero()) r.lo = ordinal(1);  // q = 0 is the rank-0 point 0
    const auto db = divmod_omega_power(b, e);
    r.hi = db.quotient;
    if (r.lo > r.hi) r.empty = true;
    return r;
}

// True when x >= 1 and the last CNF exponent of x is 0 (w^e * x then has
// rank exactly e).
bool has_finite_tail(const ordinal& x) { return x.is_successor(); }

} // namespace

point_count count_rank_at_least(const ordinal& a, const ordinal& b, const ordinal& e) {
    point_count pc;
    const auto qr = rank_quotients(a, b, e);
    if (qr.empty) {
        pc.count = 0;
        return pc;
    }
    const ordinal width = left_subtract(qr.lo, qr.hi);
    if (!width.is_finite()) {
        pc.infinite = true;
        return pc;
    }
    pc.count = width.as_nat() + 1;
    return pc;
}

point_count count_rank_exactly(const ordinal& a, const ordinal& b, const ordinal& e) {
    point_count pc;
    pc.count = 0;
    auto qr = rank_quotients(a, b, e);
    // The point 0 (quotient 0) has rank exactly 0.
    if (e.is_zero() && !qr.empty && qr.lo.is_zero()) {
        pc.count += 1;
        qr.lo = ordinal(1);
        if (qr.lo > qr.hi) return pc;
    }
    if (qr.empty) return pc;
    const ordinal width = left_subtract(qr.lo, qr.hi);
    if (!width.is_finite()) {
        // Infinitely many consecutive quotients, so infinitely many with
        // finite tail.
        pc.infinite = true;
        return pc;
    }
    // Quotients are qr.lo, qr.lo + 1, ..., qr.lo + width; all increments
    // have finite tails, qr.lo itself may not.
    pc.count += width.as_nat();
    if (has_finite_tail(qr.lo)) pc.count += 1;
    return pc;
}

namespace {

// Max rank over [a, b]: if [a, b] contains a multiple of w^E for the leading
// exponent E of b, that is the answer (nothing in [0, b] has larger rank).
// Otherwise [a, b] sits strictly inside one block (w^E * c, w^E * c + r] and
// ranks there are the ranks of the offsets, so recurse on the offsets.
ordinal max_rank_interval(ordinal a, ordinal b) {
    for (;;) {
        if (b.is_zero()) return ordinal();
        const ordinal& e = b.leading_exponent();
        const auto pc = count_rank_at_least(a, b, e);
        if (pc.infinite || pc.count > 0) return e;
        const ordinal base = ordinal::omega_power(e, b.leading_coefficient());
        a = left_subtract(base, a);
        b = left_subtract(base, b);
    }
}

} // namespace

ordinal max_rank(const closed_set& h) {
    if (h.is_empty()) throw input_error("max_rank of empty closed set");
    ordinal best;
    for (const auto& [a, b] : h.intervals())
        best = std::max(best, max_rank_interval(a, b));
    return best;
}

std::optional<std::vector<ordinal>> points_of_rank_at_least(const closed_set& h,
                                                            const ordinal& e) {
    std::vector<ordinal> out;
    for (const auto& [a, b] : h.intervals()) {
        const auto qr = rank_quotients(a, b, e);
        if (qr.empty) continue;
        const ordinal width = left_subtract(qr.lo, qr.hi);
        if (!width.is_finite()) return std::nullopt;
        for (nat i = 0; i <= width.as_nat(); ++i)
            out.push_back(omega_power_mul(e, qr.lo + ordinal(nat(i))));
    }
    return out;
}

std::optional<std::vector<ordinal>> points_of_rank_exactly(const closed_set& h,
                                                           const ordinal& e) {
    std::vector<ordinal> out;
    for (const auto& [a, b] : h.intervals()) {
        auto qr = rank_quotients(a, b, e);
        if (e.is_zero() && !qr.empty && qr.lo.is_zero()) {
            out.push_back(ordinal());
            qr.lo = ordinal(1);
            if (qr.lo > qr.hi) continue;
        }
        if (qr.empty) continue;
        const ordinal width = left_subtract(qr.lo, qr.hi);
        if (!width.is_finite()) return std::nullopt;
        for (nat i = 0; i <= width.as_nat(); ++i) {
            const ordinal q = qr.lo + ordinal(nat(i));
            if (has_finite_tail(q)) out.push_back(omega_power_mul(e, q));
        }
    }
    return out;
}

bool check_vb_rank_trace(const ordinal_space& space, const std::vector<ordinal>& points) {
    if (points.empty()) throw input_error("check_vb_rank_trace: empty point set");
    ordinal alpha;
    for (const auto& t : points) {
        space.require_point(t);
        alpha = std::max(alpha, t.rank());
    }
    const ordinal above = alpha.successor();
    for (const auto& t : points) {
        const clopen_interval vt = canonical_vt(space, t);
        const ordinal lo = vt.first();
        // V_t must contain no point of rank > alpha, and meet rank >= alpha
        // exactly in {t} (when rank(t) == alpha) or not at all.
        const auto high_pts = points_of_rank_at_least(closed_set::single(lo, vt.high), above);
        if (!high_pts || !high_pts->empty()) return false;
        const auto top_pts = points_of_rank_at_least(closed_set::single(lo, vt.high), alpha);
        if (!top_pts) return false;
        if (t.rank() == alpha) {
            if (top_pts->size() != 1 || (*top_pts)[0] != t) return false;
        } else {
            if (!top_pts->empty()) return false;
        }
    }
    return true;
}

std::vector<ordinal> cofinal_sequence(const ordinal& t, std::size_t n) {
    if (!t.is_limit())
        throw input_error("cofinal_sequence: " + t.to_string() + " is not a limit ordinal");
    const auto& last = t.last_term();
    ordinal base = t.prefix();
    if (last.coefficient > 1)
        base = base + ordinal::omega_power(last.exponent, last.coefficient - 1);
    const ordinal& e = last.exponent;  // rank of t, >= 1
    std::vector<ordinal> out;
    out.reserve(n);
    if (e.is_successor()) {
        const ordinal f = e.predecessor();
        for (std::size_t i = 1; i <= n; ++i)
            out.push_back(base + ordinal::omega_power(f, nat(i)));
    } else {
        // Limit exponent: approximate w^e through w^(d_i) with d_i rising to e.
        const auto exps = cofinal_sequence(e, n);
        for (const auto& d : exps) out.push_back(base + ordinal::omega_power(d));
    }
    return out;
}

} // namespace cknorm
