#include "cknorm/talagrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "cknorm/errors.hpp"

namespace cknorm {

namespace {

unsigned bits_of(const nat& x) {
    if (x <= 0) throw internal_error("bits_of: nonpositive");
    return static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
}

nat pow2(unsigned e) { return nat(1) << e; }

bool is_even(const nat& x) { return (x & 1) == 0; }

// Exact conversion of a nonnegative integral double.
nat nat_from_integral_double(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw internal_error("nat_from_integral_double");
    nat r;
    double rest = x;
    // Peel 48-bit chunks so each conversion stays exact.
    nat scale = 1;
    while (rest >= 1.0) {
        const double chunk = std::fmod(rest, 281474976710656.0);  // 2^48
        r += scale * nat(static_cast<std::uint64_t>(chunk));
        rest = (rest - chunk) / 281474976710656.0;
        scale *= nat(1) << 48;
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// dyadic_triple
// ---------------------------------------------------------------------------

dyadic_triple dyadic_triple::make(const nat& p, const nat& a, const nat& b, unsigned j) {
    if (p < 1 || a < 1 || b < 1) throw input_error("dyadic_triple: gaps must be positive");
    if (j > 0 && is_even(p) && is_even(a) && is_even(b))
        throw input_error("dyadic_triple: encoding not canonical (all parts even)");
    dyadic_triple t;
    t.p = p;
    t.a = a;
    t.b = b;
    t.j = j;
    return t;
}

double dyadic_triple::xi() const { return std::ldexp(p.convert_to<double>(), -static_cast<int>(j)); }
double dyadic_triple::eta() const {
    return std::ldexp((p + a).convert_to<double>(), -static_cast<int>(j));
}
double dyadic_triple::zeta() const {
    return std::ldexp((p + a + b).convert_to<double>(), -static_cast<int>(j));
}

std::string dyadic_triple::to_string() const {
    std::ostringstream os;
    os << "(" << xi() << ", " << eta() << ", " << zeta() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// triple_enumeration
// ---------------------------------------------------------------------------

namespace {

// Number of canonical tuples in the block (j, ba, bb, bp): value ranges are
// [2^(x-1), 2^x - 1]; for j >= 1 the all-even tuples are excluded (they
// reduce to denominator exponent j - 1).
nat block_size(unsigned j, unsigned bp, unsigned ba, unsigned bb) {
    nat full = pow2(bp + ba + bb - 3);
    if (j == 0) return full;
    if (bp >= 2 && ba >= 2 && bb >= 2) full -= pow2(bp + ba + bb - 6);
    return full;
}

nat evens_in(const nat& lo, const nat& hi) {  // evens in [lo, hi], empty when lo > hi
    if (lo > hi) return 0;
    return hi / 2 - (lo - 1) / 2;
}

} // namespace

nat triple_enumeration::diagonal_size(unsigned s) {
    nat total = 0;
    for (unsigned j = 0; j + 3 <= s; ++j)
        for (unsigned ba = 1; j + ba + 2 <= s; ++ba)
            for (unsigned bb = 1; j + ba + bb + 1 <= s; ++bb)
                total += block_size(j, s - j - ba - bb, ba, bb);
    return total;
}

const nat& triple_enumeration::diagonal_offset(unsigned s) const {
    if (s < 3) throw internal_error("diagonal_offset: s below 3");
    if (offsets_.empty()) offsets_.assign(4, nat(0));  // offsets_[3] = 0
    while (offsets_.size() <= s)
        offsets_.push_back(offsets_.back() + diagonal_size(static_cast<unsigned>(offsets_.size()) - 1));
    return offsets_[s];
}

nat triple_enumeration::index_of(const dyadic_triple& t) const {
    const unsigned bp = bits_of(t.p), ba = bits_of(t.a), bb = bits_of(t.b);
    const unsigned s = bp + ba + bb + t.j;
    nat idx = diagonal_offset(s);
    // Blocks before (j, ba, bb) in lexicographic order.
    for (unsigned j2 = 0; j2 < t.j; ++j2)
        for (unsigned ba2 = 1; j2 + ba2 + 2 <= s; ++ba2)
            for (unsigned bb2 = 1; j2 + ba2 + bb2 + 1 <= s; ++bb2)
                idx += block_size(j2, s - j2 - ba2 - bb2, ba2, bb2);
    for (unsigned ba2 = 1; ba2 < ba; ++ba2)
        for (unsigned bb2 = 1; t.j + ba2 + bb2 + 1 <= s; ++bb2)
            idx += block_size(t.j, s - t.j - ba2 - bb2, ba2, bb2);
    for (unsigned bb2 = 1; bb2 < bb; ++bb2)
        idx += block_size(t.j, s - t.j - ba - bb2, ba, bb2);
    // Position inside the block, (a, b, p) lexicographic, excluding the
    // all-even tuples when j >= 1.
    const bool excl = t.j >= 1;
    const nat amin = pow2(ba - 1), bmin = pow2(bb - 1), pmin = pow2(bp - 1);
    const nat etb = bb >= 2 ? pow2(bb - 2) : nat(0);  // evens in the full b range
    const nat etp = bp >= 2 ? pow2(bp - 2) : nat(0);
    nat pos = (t.a - amin) * pow2(bb - 1) * pow2(bp - 1);
    if (excl) pos -= evens_in(amin, t.a - 1) * etb * etp;
    pos += (t.b - bmin) * pow2(bp - 1);
    if (excl && is_even(t.a)) pos -= evens_in(bmin, t.b - 1) * etp;
    pos += t.p - pmin;
    if (excl && is_even(t.a) && is_even(t.b)) pos -= evens_in(pmin, t.p - 1);
    return idx + pos;
}

double triple_enumeration::weight_of_index(const nat& n) {
    if (bits_of(n + 1) > 510) return 0.0;  // below the double range
    const double d = ((n + 1) * (n + 2)).convert_to<double>();
    return 1.0 / d;
}

// --- cursor ---------------------------------------------------------------

triple_enumeration::cursor::cursor() : index_(0), s_(3), j_(0), ba_(1), bb_(1) {
    current_ = dyadic_triple{};  // (1, 1, 1, 0): the triple (1, 2, 3)
}

bool triple_enumeration::cursor::next_tuple_in_block() {
    const unsigned bp = s_ - j_ - ba_ - bb_;
    const nat pmax = pow2(bp) - 1, bmax = pow2(bb_) - 1, amax = pow2(ba_) - 1;
    for (;;) {
        if (current_.p < pmax) {
            ++current_.p;
        } else if (current_.b < bmax) {
            current_.p = pow2(bp - 1);
            ++current_.b;
        } else if (current_.a < amax) {
            current_.p = pow2(bp - 1);
            current_.b = pow2(bb_ - 1);
            ++current_.a;
        } else {
            return false;
        }
        if (j_ >= 1 && is_even(current_.p) && is_even(current_.a) && is_even(current_.b))
            continue;  // reducible encoding; lives on an earlier diagonal
        return true;
    }
}

bool triple_enumeration::cursor::next_block_in_diagonal() {
    // A block (j, ba, bb) is valid when bp = s - j - ba - bb >= 1.
    if (j_ + ba_ + bb_ + 2 <= s_) {
        ++bb_;
    } else if (j_ + ba_ + 3 <= s_) {
        ++ba_;
        bb_ = 1;
    } else if (j_ + 4 <= s_) {
        ++j_;
        ba_ = 1;
        bb_ = 1;
    } else {
        return false;
    }
    return true;
}

void triple_enumeration::cursor::descend_to_first() {
    // First canonical tuple of the current block; the minimum of each range
    // has at least one odd member unless all three minima are even powers.
    const unsigned bp = s_ - j_ - ba_ - bb_;
    current_.j = j_;
    current_.a = pow2(ba_ - 1);
    current_.b = pow2(bb_ - 1);
    current_.p = pow2(bp - 1);
    if (j_ >= 1 && is_even(current_.p) && is_even(current_.a) && is_even(current_.b)) {
        if (!next_tuple_in_block())
            throw internal_error("triple cursor: empty block");
    }
}

void triple_enumeration::cursor::advance() {
    if (next_tuple_in_block()) {
        ++index_;
        return;
    }
    if (!next_block_in_diagonal()) {
        ++s_;
        if (s_ > 64) throw internal_error("triple cursor: diagonal bound exceeded");
        j_ = 0;
        ba_ = 1;
        bb_ = 1;
    }
    descend_to_first();
    ++index_;
}

// --- window search ----------------------------------------------------------

triple_enumeration::window_hit triple_enumeration::smallest_in_window(double lo, double hi) const {
    if (!(lo >= 0.0) || !(lo < hi)) throw input_error("smallest_in_window: need 0 <= lo < hi");
    for (unsigned s = 3; s <= 360; ++s) {
        for (unsigned j = 0; j + 3 <= s; ++j) {
            // Integer window at denominator 2^j: p > lo 2^j, p+a+b < hi 2^j.
            const double xlo = std::ldexp(lo, static_cast<int>(j));
            const double yhi = std::ldexp(hi, static_cast<int>(j));
            if (!std::isfinite(xlo) || !std::isfinite(yhi)) continue;
            const nat p_min_window = nat_from_integral_double(std::floor(xlo)) + 1;
            nat sum_max = nat_from_integral_double(std::floor(yhi));
            if (yhi == std::floor(yhi)) sum_max -= 1;  // strict upper end
            if (sum_max < p_min_window + 2) continue;  // no room for three points
            for (unsigned ba = 1; j + ba + 2 <= s; ++ba) {
                for (unsigned bb = 1; j + ba + bb + 1 <= s; ++bb) {
                    const unsigned bp = s - j - ba - bb;
                    const nat amin = pow2(ba - 1), amax = pow2(ba) - 1;
                    const nat bmin = pow2(bb - 1), bmax = pow2(bb) - 1;
                    const nat pmin = pow2(bp - 1), pmax = pow2(bp) - 1;
                    // Candidate (a, b, p) tuples in lexicographic order; only
                    // the first few can be lex-minimal after the parity fix.
                    const nat p_lo_base = std::max(pmin, p_min_window);
                    struct cand {
                        nat a, b;
                        bool bump_p;  // take p_lo + 1 instead of p_lo
                    };
                    const cand cands[] = {{amin, bmin, false},
                                          {amin, bmin, true},
                                          {amin, bmin + 1, false},
                                          {amin + 1, bmin, false}};
                    for (const auto& c : cands) {
                        if (c.a > amax || c.b > bmax) continue;
                        if (sum_max < c.a + c.b) continue;
                        const nat p_hi = std::min(pmax, sum_max - c.a - c.b);
                        nat p = p_lo_base;
                        if (c.bump_p) p += 1;
                        if (p > p_hi) continue;
                        if (j >= 1 && is_even(p) && is_even(c.a) && is_even(c.b)) continue;
                        window_hit hit;
                        hit.triple = dyadic_triple::make(p, c.a, c.b, j);
                        hit.index = index_of(hit.triple);
                        hit.weight = weight_of_index(hit.index);
                        return hit;
                    }
                }
            }
        }
    }
    throw internal_error("smallest_in_window: window too thin to resolve");
}

// ---------------------------------------------------------------------------
// talagrand_operator
// ---------------------------------------------------------------------------

talagrand_operator::talagrand_operator(ordinal_space space, orlicz_config cfg)
    : space_(std::move(space)), norm_(cfg) {
    if (!space_.finite_height())
        throw input_error("talagrand_operator: the space height must be below w^w");
}

double talagrand_operator::improved_bump(double xi, double eta, const step_function& f) const {
    if (!(xi > 0.0) || !(xi < eta)) throw input_error("improved_bump: need 0 < xi < eta");
    const smooth_step theta(xi, eta);
    return norm_.bump(f.compose_scalar([&theta](double x) { return theta.eval(x); }));
}

double talagrand_operator::coordinate(const step_function& f, const talagrand_index& idx) const {
    space_.require_point(idx.s);
    const double weight = enum_.weight_of(idx.triple);
    if (weight == 0.0) return 0.0;
    if (!idx.a.contains(idx.s)) return 0.0;
    if (idx.a.empty()) return 0.0;
    const double eta = idx.triple.eta(), zeta = idx.triple.zeta();
    const smooth_step cutoff(eta, zeta);
    double product = 1.0;
    for (const auto& t : idx.a.points()) {
        const double factor = cutoff.eval(f.eval(t));
        if (factor == 0.0) return 0.0;
        product *= factor;
    }
    const auto vs = v_of_set(space_, idx.a.points());
    const step_function outside = f.multiply_indicator(vs, true);
    return weight * improved_bump(idx.triple.xi(), eta, outside) * product;
}

// Per-threshold data shared by every triple whose eta selects the same level
// set: the hull, the part of f outside its neighborhoods, and a prepared
// norm profile for the bump evaluations.
struct talagrand_operator::level_cache {
    struct bucket {
        double threshold = 0.0;            // smallest |value| kept by this bucket
        admissible_set hull_set;
        std::vector<double> hull_values;   // f at the hull points
        bool touches_top_rank = false;
        step_function outside;             // f x chi off the neighborhoods
        double sup_off = 0.0;
        std::vector<double> outside_values;
        orlicz_norm::prepared prepared_outside;
        bucket(step_function o) : outside(std::move(o)) {}
    };
    std::vector<double> thresholds;        // distinct positive |values|, descending
    std::vector<bucket> buckets;           // bucket[i] pairs with thresholds[i]
    std::map<std::tuple<std::size_t, double, double>, double> bump_memo;

    // Number of thresholds >= eta; 0 means the level set is empty.
    std::size_t bucket_of(double eta) const {
        std::size_t n = 0;
        while (n < thresholds.size() && thresholds[n] >= eta) ++n;
        return n;
    }
};

double talagrand_operator::bump_of_cut(const level_cache& lc, double xi, double eta) const {
    // Only called with a valid bucket for eta; the caller passes the bucket
    // index through the memo key.
    throw internal_error("bump_of_cut: unused overload");
}

std::vector<talagrand_operator::support_entry> talagrand_operator::support(
    const step_function& f, double eps, bool exclude_top_rank) const {
    if (!(eps > 0.0)) throw input_error("support: eps must be positive");

    // Build the threshold buckets once.
    level_cache lc;
    {
        std::set<double> vals;
        for (const auto& piece : f.pieces()) {
            const double av = std::fabs(piece.value);
            if (av > 0.0) vals.insert(av);
        }
        lc.thresholds.assign(vals.rbegin(), vals.rend());
        for (const double thr : lc.thresholds) {
            const closed_set h = f.level_set(thr);
            const admissible_set a = hull(space_, h);
            const auto vs = v_of_set(space_, a.points());
            level_cache::bucket b(f.multiply_indicator(vs, true));
            b.threshold = thr;
            b.hull_set = a;
            for (const auto& t : a.points()) {
                b.hull_values.push_back(f.eval(t));
                if (t.rank() == space_.cb_height()) b.touches_top_rank = true;
            }
            b.sup_off = b.outside.sup_norm();
            b.outside_values = b.outside.values();
            b.prepared_outside = norm_.prepare(b.outside);
            lc.buckets.push_back(std::move(b));
        }
    }

    auto bump_factor = [&](std::size_t bucket_idx, double xi, double eta) -> double {
        auto& b = lc.buckets[bucket_idx];
        if (b.sup_off <= xi) return 1.0;   // cutoff of the outside part is identically 0
        if (b.sup_off >= eta) return 0.0;  // outside part reaches the upper plateau
        const auto key = std::make_tuple(bucket_idx, xi, eta);
        if (const auto it = lc.bump_memo.find(key); it != lc.bump_memo.end()) return it->second;
        const smooth_step theta(xi, eta);
        std::vector<double> cut;
        cut.reserve(b.outside_values.size());
        for (const double v : b.outside_values) cut.push_back(theta.eval(v));
        double sup_cut = 0.0;
        for (const double v : cut) sup_cut = std::max(sup_cut, std::fabs(v));
        double result;
        if (sup_cut >= 1.0)
            result = 0.0;
        else if (sup_cut <= 0.5 * norm_.config().a)
            result = 1.0;
        else
            result = 1.0 - sigma(2.0 * norm_.value_prepared(b.prepared_outside, cut) - 1.0);
        lc.bump_memo.emplace(key, result);
        return result;
    };

    std::vector<support_entry> out;
    for (auto cur = enum_.begin(); cur.weight() >= eps; cur.advance()) {
        const dyadic_triple& tri = cur.triple();
        const double weight = cur.weight();
        const double eta = tri.eta();
        const std::size_t bidx = lc.bucket_of(eta);
        if (bidx == 0) continue;  // empty level set: no admissible hull, all factors die
        const auto& bucket = lc.buckets[bidx - 1];
        if (exclude_top_rank && bucket.touches_top_rank) continue;
        const double zeta = tri.zeta();
        const smooth_step cutoff(eta, zeta);
        double product = 1.0;
        for (const double v : bucket.hull_values) {
            product *= cutoff.eval(v);
            if (product == 0.0) break;
        }
        if (product == 0.0 || weight * product < eps) continue;
        const double bump = bump_factor(bidx - 1, tri.xi(), eta);
        const double value = weight * bump * product;
        if (value < eps) continue;
        for (const auto& s : bucket.hull_set.points()) {
            support_entry e;
            e.index = talagrand_index{s, tri, bucket.hull_set};
            e.enum_index = cur.index();
            e.weight = weight;
            e.value = value;
            out.push_back(std::move(e));
        }
    }
    return out;
}

talagrand_operator::witness_result talagrand_operator::witness(const step_function& f) const {
    if (f.is_zero()) throw input_error("witness: no witness for the zero function");
    const closed_set top = f.level_set(0.0, step_function::level_mode::at_max);
    const admissible_set a = hull(space_, top);
    const auto vs = v_of_set(space_, a.points());
    const step_function outside = f.multiply_indicator(vs, true);
    const double m0 = outside.sup_norm();
    const double m = f.sup_norm();
    if (!(m0 < m)) throw internal_error("witness: residual sup did not drop");
    const auto hit = enum_.smallest_in_window(m0, m);
    witness_result w;
    w.index = talagrand_index{a.points().front(), hit.triple, a};
    w.enum_index = hit.index;
    w.value = coordinate(f, w.index);
    return w;
}

step_function talagrand_operator::reconstruct(const step_function& f,
                                              const std::vector<support_entry>& entries) const {
    std::set<ordinal> points;
    for (const auto& e : entries)
        for (const auto& t : e.index.a.points()) points.insert(t);
    std::vector<clopen_interval> vs;
    vs.reserve(points.size());
    for (const auto& t : points) vs.push_back(canonical_vt(space_, t));
    return f.multiply_indicator(vs, false);
}

talagrand_operator::reconstruction_report talagrand_operator::verify_reconstruction(
    const step_function& f, double eps) const {
    if (!(eps > 0.0)) throw input_error("verify_reconstruction: eps must be positive");
    reconstruction_report report;
    const closed_set h = f.level_set(eps);
    if (h.is_empty()) {
        report.error = f.sup_norm();  // everything below eps; nothing to keep
        return report;
    }
    const admissible_set a = hull(space_, h);
    const auto vs = v_of_set(space_, a.points());
    const double m0 = f.multiply_indicator(vs, true).sup_norm();
    if (!(m0 < eps)) throw internal_error("verify_reconstruction: residual above threshold");
    const auto hit = enum_.smallest_in_window(m0, eps);
    report.lambda = hit.weight;
    report.triple = hit.triple;
    report.support = support(f, hit.weight);
    const step_function rebuilt = reconstruct(f, report.support);
    report.error = sup_distance(f, rebuilt);
    if (report.error > m0 + 1e-15)
        throw internal_error("verify_reconstruction: error above the residual bound");
    return report;
}

talagrand_operator::smoothness_report talagrand_operator::coordinate_smoothness_probe(
    const step_function& f, const talagrand_index& idx, const std::vector<double>& direction,
    double h) const {
    const auto part = f.partition();
    const auto vals = f.values();
    if (direction.size() != vals.size())
        throw input_error("coordinate_smoothness_probe: direction length mismatch");
    auto eval = [&](double s) {
        std::vector<double> v = vals;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * direction[i];
        return coordinate(step_function::rebuild(part, v), idx);
    };
    auto central = [&](double step) { return (eval(step) - eval(-step)) / (2.0 * step); };
    smoothness_report rep;
    rep.d1 = central(h);
    rep.d2 = central(0.5 * h);
    rep.d3 = central(0.25 * h);
    const double e1 = std::fabs(rep.d1 - rep.d2);
    const double e2 = std::fabs(rep.d2 - rep.d3);
    if (e1 < 1e-12 && e2 < 1e-12) {
        rep.degenerate = true;
    } else if (e2 < 1e-300) {
        rep.degenerate = true;
    } else {
        rep.order = std::log2(e1 / e2);
    }
    // Flag inputs sitting within 1e-6 of a cutoff edge; the probe's
    // convergence claim excludes那 those.
    const double xi = idx.triple.xi(), eta = idx.triple.eta(), zeta = idx.triple.zeta();
    for (const auto& t : idx.a.points()) {
        const double x = std::fabs(f.eval(t));
        if (std::fabs(x - eta) < 1e-6 || std::fabs(x - zeta) < 1e-6) rep.near_plateau_edge = true;
    }
    const auto vsets = v_of_set(space_, idx.a.points());
    for (const auto& piece : f.multiply_indicator(vsets, true).pieces()) {
        const double x = std::fabs(piece.value);
        if (x > 0.0 && (std::fabs(x - xi) < 1e-6 || std::fabs(x - eta) < 1e-6))
            rep.near_plateau_edge = true;
    }
    return rep;
}

} // namespace cknorm
