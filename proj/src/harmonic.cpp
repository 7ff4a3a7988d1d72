#include "levygap/harmonic.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace levygap::harmonic {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// 1 - cos(u), cancellation-free
double one_minus_cos(double u) {
    if (std::abs(u) < 1e-8) return 0.5 * u * u;
    const double s = std::sin(0.5 * u);
    return 2.0 * s * s;
}

// snap to 15 significant digits so cache keys are insensitive to sub-ulp
// differences in how callers produce x
double cache_key(double x) {
    if (x == 0.0) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", x);
    return std::atof(buf);
}

}  // namespace

double stable_omega(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("stable_omega: alpha must lie in (0, 2)");
    return -1.0 / (std::cos(kPi * alpha / 2.0) * std::tgamma(alpha));
}

HarmonicEvaluator::HarmonicEvaluator(symbol::CharacteristicExponent psi,
                                     quad::QuadratureConfig qcfg, bool use_closed_form)
    : psi_(std::move(psi)), qcfg_(qcfg), closed_form_(use_closed_form) {
    has_closed_form_ = psi_.family() == symbol::Family::Stable ||
                       psi_.family() == symbol::Family::Brownian;
}

EvalResult HarmonicEvaluator::value(double x) const {
    const double ax = std::abs(x);
    if (ax == 0.0) return {0.0, 0.0};

    const double key = cache_key(ax);
    {
        std::shared_lock lk(mutex_);
        if (auto it = value_cache_.find(key); it != value_cache_.end()) return it->second;
    }
    const EvalResult r = compute_value(ax);
    {
        std::unique_lock lk(mutex_);
        value_cache_.emplace(key, r);
    }
    return r;
}

EvalResult HarmonicEvaluator::derivative(double x) const {
    if (x == 0.0) throw std::invalid_argument("derivative of H is undefined at 0");
    const double ax = std::abs(x);
    const double key = cache_key(ax);
    EvalResult r;
    bool cached = false;
    {
        std::shared_lock lk(mutex_);
        if (auto it = deriv_cache_.find(key); it != deriv_cache_.end()) {
            r = it->second;
            cached = true;
        }
    }
    if (!cached) {
        r = compute_derivative(ax);
        std::unique_lock lk(mutex_);
        deriv_cache_.emplace(key, r);
    }
    if (x < 0.0) r.value = -r.value;  // H even => H' odd
    return r;
}

EvalResult HarmonicEvaluator::compute_value(double ax) const {
    if (closed_form_ && has_closed_form_) {
        if (psi_.family() == symbol::Family::Stable) {
            const double v = 0.5 * stable_omega(psi_.alpha()) * std::pow(ax, psi_.alpha() - 1.0);
            return {v, 4e-16 * v};
        }
        return {ax / (2.0 * psi_.sigma2()), 0.0};
    }

    const double s0 = 1.0 / ax;

    const auto head = quad::integrate_finite(
        [&](double s) {
            if (s <= 0.0) return 0.0;
            return one_minus_cos(ax * s) / psi_(s);
        },
        0.0, s0, qcfg_);

    // exact non-oscillatory tail: integral over [s0,inf) of 1/psi, u = 1/s.
    // The integrand u^{p-2} (p = tail growth of psi) may blow up at u = 0;
    // tanh-sinh absorbs it. Grouping the denominator as u*(u*psi(1/u)) keeps
    // the arithmetic in range even for extreme u, since u*psi(1/u) = psi(t)/t.
    const auto t1 = quad::integrate_endpoint_singular(
        [&](double u) -> double {
            if (u <= 0.0) return 0.0;
            const double ps = psi_(1.0 / u);
            if (!std::isfinite(ps)) return 0.0;
            return 1.0 / (u * (u * ps));
        },
        0.0, ax, qcfg_);

    // oscillatory remainder: integral over [s0,inf) of cos(ax*s)/psi(s)
    const auto t2 = quad::integrate_oscillatory_tail([&](double s) { return 1.0 / psi_(s); },
                                                     quad::Oscillator::Cos, ax, s0, qcfg_);

    return {(head.value + t1.value - t2.value) / kPi,
            (head.error + t1.error + t2.error) / kPi};
}

EvalResult HarmonicEvaluator::compute_derivative(double ax) const {
    if (closed_form_ && has_closed_form_) {
        if (psi_.family() == symbol::Family::Stable) {
            const double a = psi_.alpha();
            const double v = 0.5 * stable_omega(a) * (a - 1.0) * std::pow(ax, a - 2.0);
            return {v, 4e-16 * std::abs(v)};
        }
        return {1.0 / (2.0 * psi_.sigma2()), 0.0};
    }

    const double s0 = 1.0 / ax;

    const auto head = quad::integrate_finite(
        [&](double t) {
            if (t <= 0.0) return 0.0;
            return t * std::sin(ax * t) / psi_(t);
        },
        0.0, s0, qcfg_);

    const auto tail = quad::integrate_oscillatory_tail([&](double t) { return t / psi_(t); },
                                                       quad::Oscillator::Sin, ax, s0, qcfg_);

    return {(head.value + tail.value) / kPi, (head.error + tail.error) / kPi};
}

double wlsc_upper_envelope(const symbol::CharacteristicExponent& psi,
                           const symbol::WlscParams& w, double x) {
    if (!(w.delta_s > 1.0))
        throw std::domain_error("scaling envelope requires delta_s > 1");
    if (!(x > 0.0)) throw std::domain_error("scaling envelope requires x > 0");
    return 10.0 / (kPi * w.beta * w.beta * (w.delta_s - 1.0) * x * psi.sup_on_interval(1.0 / x));
}

double cauchy_brownian_log_envelope(double x) { return (10.0 / kPi) * std::log1p(std::abs(x)); }

}  // namespace levygap::harmonic
