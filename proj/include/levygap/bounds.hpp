#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levygap/harmonic.hpp"
#include "levygap/quad.hpp"
#include "levygap/speed.hpp"
#include "levygap/symbol.hpp"

namespace levygap::bounds {

/// Result of a sup/inf scan over x > 0.
struct SupResult {
    double value = 0.0;
    double at_x = 0.0;
    bool at_boundary = false;  // extremum sits at the scan edge: the true
                               // extremum may lie outside (sup: possibly infinite)
};

struct GridSpec {
    double lo = 1e-3;
    double hi = 1e3;
    int points = 200;
};

struct CurvePoint {
    double x = 0.0;
    double H = 0.0;
    double mu_tail = 0.0;
    double objective = 0.0;  // H * mu_tail
};

/// The three tail functionals: delta = sup_x H(x)*mu((-x,x)^c) and its
/// one-sided versions delta_plus (right tail) and delta_minus (left tail).
struct DeltaFunctionals {
    SupResult delta, delta_plus, delta_minus;
    std::vector<CurvePoint> curve;  // grid samples of the two-sided objective
};

DeltaFunctionals compute_delta(const harmonic::HarmonicEvaluator& ev,
                               const speed::SpeedFunction& sp, const GridSpec& grid = {});

/// Spectral-gap lower bound 1/(8*delta); requires finite positive delta.
double lambda1_lower(double delta);

/// I = integral of H d-mu; strong-ergodicity rate bound kappa >= 1/(2I) and
/// mean hitting-time bound M0 <= 2I. finite=false means the integral did not
/// settle, i.e. strong ergodicity is not established by this criterion.
struct KappaBound {
    double I = 0.0;
    double I_error = 0.0;
    double kappa_lower = 0.0;
    double M0_upper = 0.0;
    bool finite = false;
    std::string diagnostic;
};

KappaBound compute_I_and_kappa(const harmonic::HarmonicEvaluator& ev,
                               const speed::SpeedFunction& sp);

/// Dirichlet-eigenvalue bracket 1/(8*delta) <= lambda_0 <= 1/delta_plus + 1/delta_minus.
struct Lambda0Bracket {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_valid = false;
    bool upper_valid = false;
};

Lambda0Bracket lambda0_bracket(const DeltaFunctionals& d);

/// Green kernel of the process killed at the origin:
/// G(x,y) = H(x) + H(y) - H(y-x); symmetric, 0 <= G <= 2*min(H(x),H(y)).
double green_origin_kernel(const harmonic::HarmonicEvaluator& ev, double x, double y);

/// Green potential of the time-changed process applied to f:
/// integral over y of G(x,y)*f(y)/a(y), split at the kernel kinks {-|x|, 0, |x|}.
quad::Integral green_origin_apply(const harmonic::HarmonicEvaluator& ev,
                                  const speed::SpeedFunction& sp,
                                  const std::function<double(double)>& f, double x);

/// Certified lower bound for lambda_0: min over the grid of f(x)/(G f)(x),
/// for test functions f with f(0) = 0 and f > 0 off 0. Scale-invariant in f.
double variational_lower_certificate(const harmonic::HarmonicEvaluator& ev,
                                     const speed::SpeedFunction& sp,
                                     const std::function<double(double)>& f,
                                     const std::vector<double>& grid);

/// Rate bounds from the scaling condition WLSC(delta_s, beta), delta_s > 1:
///   lambda_1 >= pi*beta^2*(delta_s-1)/80 * inf_x |x|*psi_star(1/|x|)/mu((-x,x)^c)
///   kappa    >= pi*beta^2*(delta_s-1) / (20 * integral of (|x|*a(x)*psi_star(1/|x|))^{-1})
struct WlscRateBounds {
    symbol::WlscParams params;
    double lambda1_lower = 0.0;
    double kappa_lower = 0.0;
    SupResult inf_scan;           // the inf over x in the lambda_1 bound
    double kappa_integral = 0.0;  // the integral in the kappa bound
    bool valid = false;
    std::string diagnostic;
};

WlscRateBounds wlsc_rate_bounds(const symbol::CharacteristicExponent& psi,
                                const symbol::WlscParams& w, const speed::SpeedFunction& sp,
                                const GridSpec& grid = {});

/// Reparametrized bounds for the pure stable symbol, where H is exactly
/// omega_alpha*|x|^{alpha-1}/2: delta_1 = sup |x|^{alpha-1}*mu-tail gives
/// lambda_1 >= 1/(4*omega_alpha*delta_1), and I_1 = integral of |x|^{alpha-1} d-mu
/// gives kappa >= 1/(omega_alpha*I_1). Numerically identical to the generic
/// bounds, exposed for reporting in the stable parametrization.
struct StableSpecialization {
    double omega_alpha = 0.0;
    double delta1 = 0.0;
    double I1 = 0.0;
    double lambda1_lower = 0.0;
    double kappa_lower = 0.0;
};

/// Bounds through the logarithmic envelope H <= (10/pi)*log(1+|x|) for the
/// Cauchy-plus-Brownian symbol (scaling exponent exactly 1, so the power
/// envelope is unavailable): lambda_1 >= pi/(80*delta_2), kappa >= pi/(20*I_2).
struct LogEnvelopeBounds {
    double delta2 = 0.0;  // sup log(1+|x|)*mu-tail
    double I2 = 0.0;      // integral of log(1+|x|) d-mu
    double lambda1_lower = 0.0;
    double kappa_lower = 0.0;
    SupResult sup_scan;
};

struct AnalyzeOptions {
    GridSpec grid;
    bool fit_scaling = true;      // attempt the WLSC fit and its bounds
    bool use_closed_form = true;  // harmonic fast paths for stable/Brownian
};

/// Everything the analysis pipeline produces.
struct ErgodicityReport {
    symbol::ConditionReport conditions;
    bool mu_finite = false;
    double mu_total = 0.0;
    bool hypotheses_ok = false;  // all conditions hold and mu(R) < inf
    std::string status;          // "ok" | "no-bound" | "hypotheses-fail"

    DeltaFunctionals deltas;
    double lambda1 = 0.0;
    bool lambda1_valid = false;
    KappaBound kappa;
    Lambda0Bracket lambda0;

    std::optional<symbol::WlscParams> wlsc_params;
    std::optional<WlscRateBounds> wlsc;
    std::optional<StableSpecialization> stable_path;
    std::optional<LogEnvelopeBounds> log_envelope_path;
};

ErgodicityReport analyze(const symbol::CharacteristicExponent& psi,
                         const speed::SpeedFunction& sp,
                         const quad::QuadratureConfig& qcfg = {},
                         const AnalyzeOptions& opts = {});

}  // namespace levygap::bounds
