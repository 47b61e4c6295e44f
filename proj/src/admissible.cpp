#include "cknorm/admissible.hpp"

#include <algorithm>
#include <sstream>

#include "cknorm/errors.hpp"

namespace cknorm {

bool is_admissible(const ordinal_space& space, const std::vector<ordinal>& points) {
    for (const auto& t : points) {
        const clopen_interval vt = canonical_vt(space, t);
        for (const auto& s : points)
            if (s != t && vt.contains(s)) return false;
    }
    return true;
}

admissible_set admissible_set::make(const ordinal_space& space, std::vector<ordinal> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!is_admissible(space, points))
        throw input_error("point set is not admissible");
    admissible_set r;
    r.points_ = std::move(points);
    return r;
}

bool admissible_set::contains(const ordinal& t) const {
    return std::binary_search(points_.begin(), points_.end(), t);
}

std::string admissible_set::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& p : points_) {
        if (!first) os << ", ";
        os << p;
        first = false;
    }
    os << "}";
    return os.str();
}

admissible_set hull(const ordinal_space& space, const closed_set& h) {
    if (h.is_empty()) throw input_error("hull of empty closed set");
    std::vector<ordinal> collected;
    closed_set rest = h;
    ordinal previous_rank;
    bool have_previous = false;
    while (!rest.is_empty()) {
        // Stage ranks strictly decrease, which bounds the stage count by the
        // number of distinct ranks present in h.
        const ordinal alpha = max_rank(rest);
        if (have_previous && !(alpha < previous_rank))
            throw internal_error("hull: stage rank did not decrease");
        previous_rank = alpha;
        have_previous = true;
        const auto layer = points_of_rank_at_least(rest, alpha);
        if (!layer)
            throw internal_error("hull: infinitely many top-rank points");
        for (const auto& t : *layer) {
            rest = rest.subtract_clopen(canonical_vt(space, t));
            collected.push_back(t);
        }
    }
    std::sort(collected.begin(), collected.end());
    admissible_set r;
    r.points_ = std::move(collected);
    if (!is_admissible(space, r.points_))
        throw internal_error("hull: result not admissible");
    return r;
}

std::vector<admissible_set> brute_force_hulls(const ordinal_space& space,
                                              const std::vector<ordinal>& h_points) {
    if (h_points.size() > 12)
        throw input_error("brute_force_hulls: point set too large (limit 12)");
    std::vector<ordinal> pts = h_points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<admissible_set> out;
    const std::size_t n = pts.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<ordinal> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) subset.push_back(pts[i]);
        if (subset.empty() && !pts.empty()) continue;
        if (!is_admissible(space, subset)) continue;
        const auto vs = subset.empty() ? std::vector<clopen_interval>{}
                                       : v_of_set(space, subset);
        bool covers = true;
        for (const auto& t : pts)
            if (!vt_union_contains(vs, t)) {
                covers = false;
                break;
            }
        if (!covers) continue;
        admissible_set a;
        a.points_ = std::move(subset);
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace cknorm
