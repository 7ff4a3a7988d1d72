#pragma once

#include <shared_mutex>
#include <unordered_map>

#include "levygap/quad.hpp"
#include "levygap/symbol.hpp"

namespace levygap::harmonic {

struct EvalResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

/// Prefactor of the stable closed form H(x) = omega_alpha*|x|^{alpha-1}/2,
/// omega_alpha = -1/(cos(pi*alpha/2)*Gamma(alpha)); positive for alpha in (1,2).
double stable_omega(double alpha);

/// Evaluator for H(x) = (1/pi) * integral over (0,inf) of (1-cos(xs))/psi(s) ds
/// and its derivative H'(x) = (1/pi) * integral of s*sin(xs)/psi(s) ds.
///
/// Strategy for the quadrature path: split at s0 = 1/|x|; the head [0, s0] is
/// smooth (the integrand behaves like x^2 s^2/(2 psi)); on [s0, inf) the
/// non-oscillatory part integral of 1/psi is taken exactly via the substitution
/// u = 1/s (tanh-sinh absorbs the endpoint power), and the cosine part is an
/// alternating half-period series accelerated by iterated averaging. Stable and
/// Brownian families take their closed forms unless the evaluator is built with
/// use_closed_form = false (useful for validating the quadrature itself).
///
/// Results are memoized per |x| (key rounded to 15 significant digits); the
/// cache is guarded by a shared mutex and recomputation races are benign
/// because every thread computes the identical value.
class HarmonicEvaluator {
public:
    explicit HarmonicEvaluator(symbol::CharacteristicExponent psi,
                               quad::QuadratureConfig qcfg = {}, bool use_closed_form = true);

    EvalResult value(double x) const;       // H(|x|); H(0) = 0 exactly
    EvalResult derivative(double x) const;  // H'(x), odd; rejects x = 0

    const symbol::CharacteristicExponent& psi() const { return psi_; }
    const quad::QuadratureConfig& config() const { return qcfg_; }
    bool uses_closed_form() const { return closed_form_; }

private:
    EvalResult compute_value(double ax) const;
    EvalResult compute_derivative(double ax) const;

    symbol::CharacteristicExponent psi_;
    quad::QuadratureConfig qcfg_;
    bool closed_form_;
    bool has_closed_form_ = false;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<double, EvalResult> value_cache_;
    mutable std::unordered_map<double, EvalResult> deriv_cache_;
};

/// Scaling upper envelope 10/(pi*beta^2*(delta_s - 1)*x*psi_star(1/x)),
/// valid when psi satisfies WLSC(delta_s, beta) with delta_s > 1.
double wlsc_upper_envelope(const symbol::CharacteristicExponent& psi,
                           const symbol::WlscParams& w, double x);

/// Logarithmic envelope (10/pi)*log(1+|x|) for the Cauchy-plus-Brownian
/// symbol, whose scaling exponent is exactly 1 so the power envelope above
/// does not apply.
double cauchy_brownian_log_envelope(double x);

}  // namespace levygap::harmonic
