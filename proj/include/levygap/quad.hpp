#pragma once

#include <functional>
#include <vector>

namespace levygap::quad {

struct QuadratureConfig {
    double atol = 1e-10;
    double rtol = 1e-8;
    int max_half_periods = 400;  // budget for oscillatory tails
    int accel_depth = 8;         // iterated-averaging depth
};

struct Integral {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

/// Adaptive Gauss-Kronrod on a finite interval (smooth integrands).
Integral integrate_finite(const std::function<double(double)>& g, double a, double b,
                          const QuadratureConfig& cfg = {});

/// tanh-sinh on a finite interval; tolerates integrable endpoint
/// singularities like u^p with p > -1.
Integral integrate_endpoint_singular(const std::function<double(double)>& g, double a,
                                     double b, const QuadratureConfig& cfg = {});

/// Integral over [a, inf), a > 0, of an eventually sign-definite integrand
/// whose magnitude decays. Dyadic block doubling; once the block-magnitude
/// ratio stabilizes below 1 the remainder is completed geometrically (exact
/// for pure power laws). Throws ConvergenceError (with the partial sum) if
/// blocks do not decay.
Integral integrate_tail(const std::function<double(double)>& g, double a,
                        const QuadratureConfig& cfg = {});

enum class Oscillator { Cos, Sin };

/// Integral over [a, inf) of g(s)*cos(w*s) or g(s)*sin(w*s), w > 0, with g
/// smooth, eventually positive and decreasing to 0. Partitions at the zeros
/// of the oscillating factor and accelerates the alternating panel series by
/// iterated averaging of partial sums. Conditionally convergent integrals
/// (g ~ 1/s) are fine. Throws ConvergenceError when the panel budget is
/// exhausted before the tolerance is met.
Integral integrate_oscillatory_tail(const std::function<double(double)>& g, Oscillator osc,
                                    double w, double a, const QuadratureConfig& cfg = {});

/// n geometrically spaced points covering [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int n);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y ~ slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScanExtremum {
    double x = 0.0;
    double value = 0.0;
    bool boundary_lo = false;  // extremum still improving at the lower edge
    bool boundary_hi = false;  // ... at the upper edge
};

/// Maximize (resp. minimize) f over [lo, hi] by an n-point log-spaced scan
/// followed by golden-section refinement in log(x) around the best node.
/// Boundary flags are set when the best node is an endpoint and the profile
/// is still improving toward it, i.e. the true extremum may lie outside.
ScanExtremum maximize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                               int n = 200);
ScanExtremum minimize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                               int n = 200);

}  // namespace levygap::quad
