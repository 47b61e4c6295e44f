#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cknorm/topology.hpp"

namespace cknorm {

/// Interval partition of [0, gamma] shared by a step function and its
/// coordinate view: consecutive closed intervals, each non-initial one
/// starting at the successor of the previous upper end.
struct step_partition {
    ordinal gamma;
    std::vector<std::pair<ordinal, ordinal>> bounds;
};

/// A continuous piecewise-constant real function on [0, gamma].
///
/// Pieces partition the space in order with l_{i+1} = successor(u_i); since
/// successors are never limit ordinals, no piece can begin at a limit point,
/// which for piecewise-constant functions is exactly continuity.  Canonical
/// form: adjacent pieces carry distinct values.
class step_function {
public:
    struct piece {
        ordinal lo;
        ordinal hi;
        double value = 0.0;
    };

    /// Constant function.
    static step_function constant(const ordinal_space& space, double value);

    /// From explicit pieces; validates the partition invariants and merges
    /// equal-valued neighbors.  Throws input_error naming the offending
    /// boundary.
    static step_function from_pieces(const ordinal_space& space, std::vector<piece> pieces);

    /// From upper bounds only (lower bounds are implied), same validation.
    static step_function from_bounds(const ordinal_space& space,
                                     const std::vector<ordinal>& upper_bounds,
                                     const std::vector<double>& values);

    const ordinal_space& space() const { return space_; }
    const std::vector<piece>& pieces() const { return pieces_; }

    double eval(const ordinal& t) const;
    double sup_norm() const;
    bool is_zero() const;

    step_function add(const step_function& other) const;
    step_function scale(double c) const;

    enum class level_mode { at_least, at_max };
    /// { t : |f(t)| >= eta } (mode at_least, eta > 0) or
    /// { t : |f(t)| = sup-norm } (mode at_max, f != 0) as a closed set.
    closed_set level_set(double eta, level_mode mode = level_mode::at_least) const;

    /// Pointwise product with the indicator of a union of clopen intervals
    /// (or of its complement).
    step_function multiply_indicator(const std::vector<clopen_interval>& u,
                                     bool complement) const;

    /// theta composed with this function, re-canonicalized.
    step_function compose_scalar(const std::function<double(double)>& theta) const;

    /// Coordinate view: the fixed canonical partition plus the value vector.
    step_partition partition() const;
    std::vector<double> values() const;
    /// Rebuild from a partition and a value vector of matching length;
    /// always yields a valid (continuous) function.
    static step_function rebuild(const step_partition& partition,
                                 const std::vector<double>& values);

    std::string to_string() const;

private:
    explicit step_function(ordinal_space space) : space_(std::move(space)) {}
    void canonicalize();
    void check_invariants() const;  // throws internal_error

    ordinal_space space_;
    std::vector<piece> pieces_;
};

/// Pointwise |f - g| sup over the common refinement.
double sup_distance(const step_function& f, const step_function& g);

} // namespace cknorm
