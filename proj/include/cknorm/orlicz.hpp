#pragma once

#include <memory>
#include <vector>

#include "cknorm/smooth.hpp"
#include "cknorm/step_function.hpp"

namespace cknorm {

/// Parameters of the renorming on spaces of finite Cantor-Bendixson height.
///
/// The per-rank constants are
///
///     r_k = a^(2^-(k+1)),  alpha_k = a^(1 - 2^-(k+1)),  beta_k = a^(1 - 2^-k)
///
/// so the infinite product of the r_k telescopes to a exactly and
///
///     beta_0 = 1,   alpha_k = beta_k * r_k,   beta_{k+1} = alpha_k.
///
/// The last identity is what keeps the norm constraint active: an interval
/// holding infinitely many rank-k points also holds a rank-(k+1) point whose
/// template jumps above 1 at alpha_k.
struct orlicz_config {
    double a = 0.9;
    double margin = 0.5;
    double root_tol = 1e-10;

    void validate() const;  // throws input_error

    double r_k(int k) const;
    double alpha_k(int k) const;
    double beta_k(int k) const;
};

struct sigma_sum_result {
    bool infinite = false;
    double value = 0.0;
};

/// The generalized Orlicz (Luxemburg-style) norm
///
///     |f| = inf { rho > 0 : Sum_t phi_{rank t}(|f(t)| / rho) <= 1 }
///
/// on step functions over [0, gamma] with gamma < w^w, together with its
/// gradient and the finite-coordinate localization data.
class orlicz_norm {
public:
    explicit orlicz_norm(orlicz_config cfg = {});

    const orlicz_config& config() const { return cfg_; }

    /// Scale at which the rank-k template leaves its zero plateau /
    /// exceeds 1, for the point t (depends on t only through its rank).
    double alpha_of(const ordinal& t) const;
    double beta_of(const ordinal& t) const;

    /// Sum over all points of phi(rank t, |f(t)| / rho): exact per-rank
    /// counts times template values; flagged infinite when an infinite
    /// rank class contributes a positive value.
    sigma_sum_result sigma_sum(const step_function& f, double rho) const;

    /// The norm: 0 for f = 0, otherwise the root of sigma_sum = 1 in
    /// [sup_norm, sup_norm / a], bisected to root_tol and polished.
    double value(const step_function& f) const;

    /// d(norm)/d(piece value), one entry per canonical piece; f != 0.
    std::vector<double> gradient(const step_function& f) const;

    /// Localization of the norm near f: for any h with
    /// sup|f/|f| - h| < delta, only the finitely many points listed can
    /// contribute nonzero template terms to Sum phi(t, |h(t)|).
    struct finiteness_witness {
        double delta = 0.0;
        std::vector<ordinal> points;
    };
    finiteness_witness local_finiteness_witness(const step_function& f) const;

    /// For a limit point t and an increasing sequence below it: the scale
    /// bound beta(t) <= liminf alpha(t_n), decided by the exact rank
    /// comparison on the sequence tail inside the canonical neighborhood.
    bool check_cofinal_scale_bound(const ordinal& t, const std::vector<ordinal>& seq) const;

    /// sup_norm(f) <= value(f) <= sup_norm(f)/a + 10 root_tol.
    bool equivalence_check(const step_function& f) const;

    /// Smooth bump built from the norm: 1 - sigma(2 |f| - 1).  Equals 1 on
    /// |f| <= 1/2 and 0 on |f| >= 1, with exact plateaus.
    double bump(const step_function& f) const;

    /// The per-rank point counts of a partition, reusable across many value
    /// vectors.  Lets callers evaluate the norm repeatedly on the same
    /// partition (finite differences, cutoff compositions) without redoing
    /// the ordinal arithmetic.
    class prepared {
    public:
        std::size_t size() const;

    private:
        friend class orlicz_norm;
        struct impl;
        std::shared_ptr<const impl> impl_;
    };
    prepared prepare(const step_function& f) const;
    /// Norm of the function with the prepared partition and these piece
    /// values (one per original canonical piece).
    double value_prepared(const prepared& p, const std::vector<double>& values) const;

private:
    orlicz_config cfg_;

    struct profile;
    profile build_profile(const step_function& f) const;
    int rank_index(const ordinal& t) const;
    sigma_sum_result sum_at(const profile& p, const std::vector<double>& vals, double rho) const;
    // Value and d/d(rho) of the finite sum; only valid where finite.
    std::pair<double, double> sum_and_slope(const profile& p, const std::vector<double>& vals,
                                            double rho) const;
    double solve(const profile& p, const std::vector<double>& vals) const;
};

} // namespace cknorm
