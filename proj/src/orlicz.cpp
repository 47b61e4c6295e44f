#include "cknorm/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cknorm/errors.hpp"

namespace cknorm {

void orlicz_config::validate() const {
    if (!(a > 0.0) || !(a < 1.0)) throw input_error("orlicz_config: a must lie in (0, 1)");
    if (!(margin > 0.0)) throw input_error("orlicz_config: margin must be positive");
    if (!(root_tol > 0.0)) throw input_error("orlicz_config: root_tol must be positive");
}

double orlicz_config::r_k(int k) const { return std::pow(a, std::exp2(-(k + 1))); }
double orlicz_config::alpha_k(int k) const { return std::pow(a, 1.0 - std::exp2(-(k + 1))); }
double orlicz_config::beta_k(int k) const { return std::pow(a, 1.0 - std::exp2(-k)); }

orlicz_norm::orlicz_norm(orlicz_config cfg) : cfg_(cfg) { cfg_.validate(); }

int orlicz_norm::rank_index(const ordinal& t) const {
    const ordinal& r = t.rank();
    if (!r.is_finite())
        throw input_error("unsupported space: point " + t.to_string() +
                          " has infinite rank (the space height must be below w^w)");
    const nat n = r.as_nat();
    if (n > 64) throw input_error("unsupported space: rank exceeds 64");
    return n.convert_to<int>();
}

double orlicz_norm::alpha_of(const ordinal& t) const { return cfg_.alpha_k(rank_index(t)); }
double orlicz_norm::beta_of(const ordinal& t) const { return cfg_.beta_k(rank_index(t)); }

// ---------------------------------------------------------------------------
// Rank profile: per canonical piece, the exact number of points of each rank.
// Everything the root finder needs, with the ordinal arithmetic done once.
// ---------------------------------------------------------------------------

struct orlicz_norm::profile {
    struct rank_count {
        int rank = 0;
        bool infinite = false;
        double count = 0.0;  // meaningful when finite
    };
    struct cell {
        ordinal lo;
        ordinal hi;
        std::vector<rank_count> ranks;  // only ranks attained in the piece
    };
    std::vector<cell> cells;
    std::vector<double> base_values;    // piece values of the prepared function
    std::vector<orlicz_function> phis;  // indexed by rank
};

orlicz_norm::profile orlicz_norm::build_profile(const step_function& f) const {
    const ordinal_space& space = f.space();
    if (!space.finite_height())
        throw input_error("unsupported space: [0, " + space.max_point().to_string() +
                          "] has infinite Cantor-Bendixson height");
    const nat height_nat = space.cb_height().as_nat();
    if (height_nat > 64) throw input_error("unsupported space: height exceeds 64");
    const int height = height_nat.convert_to<int>();
    profile p;
    for (int k = 0; k <= height; ++k)
        p.phis.emplace_back(cfg_.alpha_k(k), cfg_.beta_k(k), cfg_.margin);
    for (const auto& piece : f.pieces()) {
        profile::cell cell;
        cell.lo = piece.lo;
        cell.hi = piece.hi;
        for (int k = 0; k <= height; ++k) {
            const auto pc =
                count_rank_exactly(piece.lo, piece.hi, ordinal(static_cast<std::uint64_t>(k)));
            if (!pc.infinite && pc.count == 0) continue;
            profile::rank_count rc;
            rc.rank = k;
            rc.infinite = pc.infinite;
            if (!pc.infinite) rc.count = pc.count.convert_to<double>();
            cell.ranks.push_back(rc);
        }
        p.cells.push_back(std::move(cell));
        p.base_values.push_back(piece.value);
    }
    return p;
}

sigma_sum_result orlicz_norm::sum_at(const profile& p, const std::vector<double>& vals,
                                     double rho) const {
    sigma_sum_result r;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const double x = std::fabs(vals[i]) / rho;
        for (const auto& rc : p.cells[i].ranks) {
            const double phi = p.phis[static_cast<std::size_t>(rc.rank)].eval(x);
            if (phi == 0.0) continue;  // plateau: contributes nothing at any multiplicity
            if (rc.infinite) {
                r.infinite = true;
                r.value = std::numeric_limits<double>::infinity();
                return r;
            }
            r.value += rc.count * phi;
        }
    }
    return r;
}

std::pair<double, double> orlicz_norm::sum_and_slope(const profile& p,
                                                     const std::vector<double>& vals,
                                                     double rho) const {
    double sum = 0.0;
    double slope = 0.0;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const double av = std::fabs(vals[i]);
        const double x = av / rho;
        for (const auto& rc : p.cells[i].ranks) {
            const auto& phi = p.phis[static_cast<std::size_t>(rc.rank)];
            const double v = phi.eval(x);
            if (rc.infinite) {
                if (v != 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
                continue;  // plateaued infinite class: value and slope are 0
            }
            if (v == 0.0) continue;
            sum += rc.count * v;
            slope += rc.count * phi.deriv(x) * (-av / (rho * rho));
        }
    }
    return {sum, slope};
}

sigma_sum_result orlicz_norm::sigma_sum(const step_function& f, double rho) const {
    if (!(rho > 0.0)) throw input_error("sigma_sum: rho must be positive");
    const profile p = build_profile(f);
    return sum_at(p, p.base_values, rho);
}

double orlicz_norm::solve(const profile& p, const std::vector<double>& vals) const {
    double sup = 0.0;
    for (double v : vals) sup = std::max(sup, std::fabs(v));
    if (sup == 0.0) return 0.0;
    double lo = sup;              // sum > 1 here (the top piece sits at x = 1 >= beta)
    double hi = sup / cfg_.a;     // sum = 0 here (every x <= a < alpha_k)
    while (hi - lo > cfg_.root_tol) {
        const double mid = 0.5 * (lo + hi);
        const auto s = sum_at(p, vals, mid);
        if (!s.infinite && s.value <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    // Newton polish from the right end of the bracket, where the sum is
    // finite; stays inside [lo, hi].
    double rho = hi;
    for (int iter = 0; iter < 8; ++iter) {
        const auto [s, ds] = sum_and_slope(p, vals, rho);
        if (!std::isfinite(s) || ds >= 0.0) break;
        double next = rho - (s - 1.0) / ds;
        if (!(next >= lo)) next = lo;
        if (!(next <= hi)) next = hi;
        if (std::fabs(next - rho) <= 1e-16 * rho) {
            rho = next;
            break;
        }
        const auto probe = sum_at(p, vals, next);
        if (probe.infinite) break;  // stepped past the activation boundary; keep rho
        rho = next;
    }
    return rho;
}

double orlicz_norm::value(const step_function& f) const {
    if (f.is_zero()) return 0.0;
    const profile p = build_profile(f);
    return solve(p, p.base_values);
}

struct orlicz_norm::prepared::impl {
    profile p;
};

std::size_t orlicz_norm::prepared::size() const { return impl_ ? impl_->p.cells.size() : 0; }

orlicz_norm::prepared orlicz_norm::prepare(const step_function& f) const {
    prepared out;
    auto holder = std::make_shared<prepared::impl>();
    holder->p = build_profile(f);
    out.impl_ = std::move(holder);
    return out;
}

double orlicz_norm::value_prepared(const prepared& p, const std::vector<double>& values) const {
    if (!p.impl_) throw input_error("value_prepared: empty prepared partition");
    if (values.size() != p.impl_->p.cells.size())
        throw input_error("value_prepared: value count does not match the partition");
    return solve(p.impl_->p, values);
}

std::vector<double> orlicz_norm::gradient(const step_function& f) const {
    if (f.is_zero()) throw input_error("gradient of the norm at 0");
    const profile p = build_profile(f);
    const double rho = solve(p, p.base_values);
    std::vector<double> numer;
    numer.reserve(p.cells.size());
    double denom = 0.0;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const double value = p.base_values[i];
        const double av = std::fabs(value);
        const double sign = value > 0.0 ? 1.0 : (value < 0.0 ? -1.0 : 0.0);
        const double x = av / rho;
        double weight = 0.0;  // Sum_k n_k phi_k'(x) over the piece
        for (const auto& rc : p.cells[i].ranks) {
            const double d = p.phis[static_cast<std::size_t>(rc.rank)].deriv(x);
            if (rc.infinite) {
                if (d != 0.0)
                    throw internal_error("gradient: infinite rank class off its plateau");
                continue;
            }
            weight += rc.count * d;
        }
        numer.push_back(sign * weight / rho);
        denom += av * weight;
    }
    denom /= rho * rho;
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw internal_error("gradient: degenerate implicit-function denominator");
    std::vector<double> grad;
    grad.reserve(numer.size());
    for (double n : numer) grad.push_back(n / denom);
    return grad;
}

orlicz_norm::finiteness_witness orlicz_norm::local_finiteness_witness(
    const step_function& f) const {
    if (f.is_zero()) throw input_error("local_finiteness_witness of the zero function");
    const double rho = value(f);
    const step_function g = f.scale(1.0 / rho);
    const profile p = build_profile(g);

    double delta = 0.5;  // any positive value works when no rank class is infinite
    bool bounded = false;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const double av = std::fabs(p.base_values[i]);
        for (const auto& rc : p.cells[i].ranks) {
            if (!rc.infinite) continue;
            const double gap = cfg_.alpha_k(rc.rank) - av;
            if (!bounded || 0.5 * gap < delta) delta = 0.5 * gap;
            bounded = true;
        }
    }
    if (!(delta > 0.0))
        throw internal_error("local_finiteness_witness: nonpositive margin at the norm point");

    finiteness_witness w;
    w.delta = delta;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const double av = std::fabs(p.base_values[i]);
        for (const auto& rc : p.cells[i].ranks) {
            if (rc.infinite) continue;  // infinite classes sit below alpha_k - delta
            if (av > cfg_.alpha_k(rc.rank) - delta) {
                const auto pts =
                    points_of_rank_exactly(closed_set::single(p.cells[i].lo, p.cells[i].hi),
                                           ordinal(static_cast<std::uint64_t>(rc.rank)));
                if (!pts)
                    throw internal_error("local_finiteness_witness: count/enumeration mismatch");
                for (const auto& t : *pts) w.points.push_back(t);
            }
        }
    }
    std::sort(w.points.begin(), w.points.end());
    return w;
}

bool orlicz_norm::check_cofinal_scale_bound(const ordinal& t,
                                            const std::vector<ordinal>& seq) const {
    if (!t.is_limit())
        throw input_error("check_cofinal_scale_bound: " + t.to_string() + " is not a limit point");
    if (seq.empty()) throw input_error("check_cofinal_scale_bound: empty sequence");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!(seq[i] < t))
            throw input_error("check_cofinal_scale_bound: sequence element not below the limit");
        if (i > 0 && !(seq[i - 1] < seq[i]))
            throw input_error("check_cofinal_scale_bound: sequence not strictly increasing");
    }
    const ordinal_space ambient(t);
    const clopen_interval vt = canonical_vt(ambient, t);
    // Elements outside V_t are the finitely-many exceptions a convergent
    // sequence is allowed; inside V_t the rank must drop.  The scale bound
    // beta(t) <= alpha(s) is equivalent to rank(s) < rank(t), so the check
    // is exact integer arithmetic.
    for (const auto& s : seq) {
        if (!vt.contains(s)) continue;
        if (!(s.rank() < t.rank())) return false;
    }
    return true;
}

bool orlicz_norm::equivalence_check(const step_function& f) const {
    const double sup = f.sup_norm();
    const double v = value(f);
    return sup <= v && v <= sup / cfg_.a + 10.0 * cfg_.root_tol;
}

double orlicz_norm::bump(const step_function& f) const {
    const double sup = f.sup_norm();
    if (sup >= 1.0) return 0.0;           // norm >= sup-norm >= 1
    if (sup / cfg_.a <= 0.5) return 1.0;  // norm <= sup/a <= 1/2
    return 1.0 - sigma(2.0 * value(f) - 1.0);
}

} // namespace cknorm
