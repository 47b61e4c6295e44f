#pragma once

#include <functional>

namespace cknorm {

/// The C-infinity transition sigma: 0 for u <= 0, 1 for u >= 1, and
/// e(u) / (e(u) + e(1-u)) with e(u) = exp(-1/u) in between.  Satisfies
/// sigma(u) + sigma(1-u) = 1; plateaus are exact branches, not limits.
double sigma(double u);
/// Exact closed-form derivative of sigma (0 on the plateaus).
double sigma_deriv(double u);

/// Two-sided smooth cutoff in |x|: 0 on |x| <= a, 1 on |x| >= b,
/// sigma((|x| - a) / (b - a)) in between.  Requires 0 <= a < b.
struct smooth_step {
    double a = 0.0;
    double b = 1.0;

    smooth_step(double a_, double b_);
    double eval(double x) const;
    double deriv(double x) const;
};

/// Adaptive Simpson quadrature to an absolute tolerance; throws
/// numeric_error when the tolerance is unreachable.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol);

/// Convex smooth Orlicz template: 0 on [0, alpha], equal to 1 + margin at
/// beta, affine with slope `normalizer` beyond.  Built as
///
///     phi(x) = normalizer * Int_alpha^min(x,beta) sigma((u - alpha)/(beta - alpha)) du
///
/// with normalizer = 2 (1 + margin) / (beta - alpha), which makes
/// phi(beta) = 1 + margin exactly (Int_0^1 sigma = 1/2 by symmetry).
/// The derivative normalizer * sigma(...) is nondecreasing, so phi is convex,
/// and phi'(x) > 0 wherever phi(x) > 0.
class orlicz_function {
public:
    orlicz_function(double alpha, double beta, double margin);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double margin() const { return margin_; }
    double normalizer() const { return normalizer_; }

    /// Requires x >= 0.  Plateau values are exact; interior values are
    /// accurate to 1e-12 absolute.
    double eval(double x) const;
    double deriv(double x) const;

private:
    double alpha_;
    double beta_;
    double margin_;
    double normalizer_;
};

} // namespace cknorm
