#pragma once

#include <string>
#include <vector>

#include "cknorm/topology.hpp"

namespace cknorm {

/// A finite point set in which no member lies in the canonical neighborhood
/// of another.  Points are kept sorted ascending.
class admissible_set {
public:
    admissible_set() = default;

    /// Validates the pairwise property; throws input_error on violation.
    static admissible_set make(const ordinal_space& space, std::vector<ordinal> points);

    const std::vector<ordinal>& points() const { return points_; }
    bool empty() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }
    bool contains(const ordinal& t) const;

    std::string to_string() const;
    bool operator==(const admissible_set&) const = default;

private:
    std::vector<ordinal> points_;
    friend admissible_set hull(const ordinal_space&, const closed_set&);
    friend std::vector<admissible_set> brute_force_hulls(const ordinal_space&,
                                                         const std::vector<ordinal>&);
};

/// Pairwise check: s not in V_t for all distinct s, t in the set.
bool is_admissible(const ordinal_space& space, const std::vector<ordinal>& points);

/// The unique admissible A with A subset of H subset of V_A, computed by
/// peeling top-rank layers: A_j = top-rank points of H_j, H_{j+1} = H_j
/// minus V_{A_j}.  The stage ranks strictly decrease, so the recursion
/// terminates.  Throws input_error on empty H.
admissible_set hull(const ordinal_space& space, const closed_set& h);

/// Exhaustive oracle for the hull's uniqueness: all subsets A of the finite
/// set H that are admissible and satisfy H subset of V_A.  Limited to
/// |H| <= 12.
std::vector<admissible_set> brute_force_hulls(const ordinal_space& space,
                                              const std::vector<ordinal>& h_points);

} // namespace cknorm
