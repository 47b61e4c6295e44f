#include "cknorm/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cknorm/errors.hpp"

namespace cknorm {

step_function step_function::constant(const ordinal_space& space, double value) {
    step_function f(space);
    f.pieces_.push_back(piece{ordinal(), space.max_point(), value});
    return f;
}

step_function step_function::from_pieces(const ordinal_space& space, std::vector<piece> pieces) {
    if (pieces.empty()) throw input_error("step function: no pieces");
    if (!pieces.front().lo.is_zero())
        throw input_error("step function: first piece starts at " +
                          pieces.front().lo.to_string() + ", expected 0");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].lo > pieces[i].hi)
            throw input_error("step function: piece " + std::to_string(i) +
                              " has lower bound above upper bound");
        if (i > 0) {
            const ordinal expected = pieces[i - 1].hi.successor();
            if (pieces[i].lo != expected)
                throw input_error("step function: piece " + std::to_string(i) + " starts at " +
                                  pieces[i].lo.to_string() + ", expected successor boundary " +
                                  expected.to_string() +
                                  " (pieces must not begin at limit points)");
        }
    }
    if (pieces.back().hi != space.max_point())
        throw input_error("step function: last piece ends at " + pieces.back().hi.to_string() +
                          ", expected the space maximum " + space.max_point().to_string());
    step_function f(space);
    f.pieces_ = std::move(pieces);
    f.canonicalize();
    return f;
}

step_function step_function::from_bounds(const ordinal_space& space,
                                         const std::vector<ordinal>& upper_bounds,
                                         const std::vector<double>& values) {
    if (upper_bounds.size() != values.size())
        throw input_error("step function: bounds/values length mismatch");
    std::vector<piece> pieces;
    ordinal lo;
    for (std::size_t i = 0; i < upper_bounds.size(); ++i) {
        pieces.push_back(piece{lo, upper_bounds[i], values[i]});
        if (i + 1 < upper_bounds.size()) lo = upper_bounds[i].successor();
    }
    return from_pieces(space, std::move(pieces));
}

void step_function::canonicalize() {
    std::vector<piece> merged;
    for (auto& p : pieces_) {
        if (!merged.empty() && merged.back().value == p.value)
            merged.back().hi = p.hi;
        else
            merged.push_back(std::move(p));
    }
    pieces_ = std::move(merged);
    check_invariants();
}

void step_function::check_invariants() const {
    if (pieces_.empty()) throw internal_error("step function: empty");
    if (!pieces_.front().lo.is_zero()) throw internal_error("step function: does not start at 0");
    if (pieces_.back().hi != space_.max_point())
        throw internal_error("step function: does not end at the space maximum");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].lo > pieces_[i].hi) throw internal_error("step function: inverted piece");
        if (i > 0) {
            if (pieces_[i].lo != pieces_[i - 1].hi.successor())
                throw internal_error("step function: gap or limit-start boundary");
            if (pieces_[i].value == pieces_[i - 1].value)
                throw internal_error("step function: not canonical");
        }
    }
}

double step_function::eval(const ordinal& t) const {
    space_.require_point(t);
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const piece& p, const ordinal& v) { return p.hi < v; });
    if (it == pieces_.end()) throw internal_error("step function: eval fell off the partition");
    return it->value;
}

double step_function::sup_norm() const {
    double m = 0.0;
    for (const auto& p : pieces_) m = std::max(m, std::fabs(p.value));
    return m;
}

bool step_function::is_zero() const {
    return pieces_.size() == 1 && pieces_[0].value == 0.0;
}

namespace {

// Walk two partitions of the same space in lockstep, invoking fn on every
// cell of the common refinement.
template <typename F>
void zip_refinement(const step_function& f, const step_function& g, F&& fn) {
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    std::size_t i = 0, j = 0;
    ordinal lo;
    while (i < fp.size() && j < gp.size()) {
        const ordinal& hi = std::min(fp[i].hi, gp[j].hi);
        fn(lo, hi, fp[i].value, gp[j].value);
        if (fp[i].hi == hi) ++i;
        if (gp[j].hi == hi) ++j;
        lo = hi.successor();
    }
}

} // namespace

step_function step_function::add(const step_function& other) const {
    if (space_.max_point() != other.space_.max_point())
        throw input_error("step function: space mismatch in add");
    std::vector<piece> out;
    zip_refinement(*this, other, [&](const ordinal& lo, const ordinal& hi, double a, double b) {
        out.push_back(piece{lo, hi, a + b});
    });
    return from_pieces(space_, std::move(out));
}

step_function step_function::scale(double c) const {
    std::vector<piece> out = pieces_;
    for (auto& p : out) p.value *= c;
    return from_pieces(space_, std::move(out));
}

closed_set step_function::level_set(double eta, level_mode mode) const {
    double threshold = eta;
    if (mode == level_mode::at_max) {
        if (is_zero()) throw input_error("level_set at max of the zero function");
        threshold = sup_norm();
    } else if (!(eta > 0.0)) {
        throw input_error("level_set: threshold must be positive");
    }
    std::vector<closed_set::interval> kept;
    for (const auto& p : pieces_)
        if (std::fabs(p.value) >= threshold) kept.emplace_back(p.lo, p.hi);
    return closed_set::from_intervals(std::move(kept));
}

step_function step_function::multiply_indicator(const std::vector<clopen_interval>& u,
                                                bool complement) const {
    // Refine at every interval boundary, then zero out the cells on the
    // wrong side.  Boundaries of (p, t] introduce only successor starts.
    std::vector<ordinal> cuts;
    for (const auto& v : u) {
        if (v.low_pred) cuts.push_back(*v.low_pred);
        cuts.push_back(v.high);
    }
    std::vector<piece> out;
    for (const auto& p : pieces_) {
        std::vector<ordinal> local;
        for (const auto& c : cuts)
            if (c >= p.lo && c < p.hi) local.push_back(c);
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        ordinal lo = p.lo;
        for (const auto& c : local) {
            out.push_back(piece{lo, c, p.value});
            lo = c.successor();
        }
        out.push_back(piece{lo, p.hi, p.value});
    }
    for (auto& p : out) {
        const bool inside = vt_union_contains(u, p.lo);
        // Cells of the refinement lie entirely inside or outside the union.
        if (inside == complement) p.value = 0.0;
    }
    return from_pieces(space_, std::move(out));
}

step_function step_function::compose_scalar(const std::function<double(double)>& theta) const {
    std::vector<piece> out = pieces_;
    for (auto& p : out) p.value = theta(p.value);
    return from_pieces(space_, std::move(out));
}

step_partition step_function::partition() const {
    step_partition pt;
    pt.gamma = space_.max_point();
    pt.bounds.reserve(pieces_.size());
    for (const auto& p : pieces_) pt.bounds.emplace_back(p.lo, p.hi);
    return pt;
}

std::vector<double> step_function::values() const {
    std::vector<double> v;
    v.reserve(pieces_.size());
    for (const auto& p : pieces_) v.push_back(p.value);
    return v;
}

step_function step_function::rebuild(const step_partition& partition,
                                     const std::vector<double>& values) {
    if (partition.bounds.size() != values.size())
        throw input_error("rebuild: partition/value length mismatch");
    std::vector<piece> pieces;
    pieces.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        pieces.push_back(piece{partition.bounds[i].first, partition.bounds[i].second, values[i]});
    return from_pieces(ordinal_space(partition.gamma), std::move(pieces));
}

std::string step_function::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& p : pieces_) {
        if (!first) os << ", ";
        os << "[" << p.lo << ", " << p.hi << "] -> " << p.value;
        first = false;
    }
    return os.str();
}

double sup_distance(const step_function& f, const step_function& g) {
    return f.add(g.scale(-1.0)).sup_norm();
}

} // namespace cknorm
