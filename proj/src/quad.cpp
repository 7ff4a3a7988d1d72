#include "levygap/quad.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "levygap/errors.hpp"

namespace levygap::quad {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

Integral integrate_finite(const std::function<double(double)>& g, double a, double b,
                          const QuadratureConfig& cfg) {
    if (!(b > a)) return {0.0, 0.0};
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, a, b, 15, cfg.rtol, &err);
    return {v, err};
}

Integral integrate_endpoint_singular(const std::function<double(double)>& g, double a,
                                     double b, const QuadratureConfig& cfg) {
    if (!(b > a)) return {0.0, 0.0};
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    const double v = integrator.integrate(g, a, b, cfg.rtol, &err, &l1);
    return {v, err * std::max(l1, std::abs(v))};
}

Integral integrate_tail(const std::function<double(double)>& g, double a,
                        const QuadratureConfig& cfg) {
    if (!(a > 0.0)) throw std::invalid_argument("integrate_tail: lower limit must be > 0");

    double sum = 0.0, errsum = 0.0;
    double lo = a;
    double prev_mag = -1.0, prev_value = 0.0, ratio = -1.0;
    int non_decaying = 0;
    constexpr int kMaxBlocks = 64;

    for (int k = 0; k < kMaxBlocks; ++k) {
        const double hi = lo * 2.0;
        const Integral blk = integrate_finite(g, lo, hi, cfg);
        const double mag = std::abs(blk.value);
        sum += blk.value;
        errsum += blk.error;

        if (prev_mag > 0.0 && mag > 0.0) {
            ratio = mag / prev_mag;
            non_decaying = (ratio >= 0.999) ? non_decaying + 1 : 0;
            if (non_decaying >= 3)
                throw ConvergenceError("integrate_tail: blocks are not decaying", sum);
        }

        if (mag <= std::max(cfg.atol, cfg.rtol * std::abs(sum) * 0.1)) {
            // remainder completed geometrically from the last observed ratio;
            // exact when the integrand is a pure power of x
            if (ratio > 0.0 && ratio < 0.95) {
                const double rem = blk.value * ratio / (1.0 - ratio);
                sum += rem;
                errsum += 0.5 * std::abs(rem);
            }
            return {sum, errsum};
        }
        prev_mag = mag;
        prev_value = blk.value;
        lo = hi;
    }

    if (ratio > 0.0 && ratio < 0.95) {
        const double rem = prev_value * ratio / (1.0 - ratio);
        return {sum + rem, errsum + std::abs(rem)};  // ran out of blocks; completion dominates error
    }
    throw ConvergenceError("integrate_tail: block budget exhausted", sum);
}

Integral integrate_oscillatory_tail(const std::function<double(double)>& g, Oscillator osc,
                                    double w, double a, const QuadratureConfig& cfg) {
    if (!(w > 0.0)) throw std::invalid_argument("integrate_oscillatory_tail: need w > 0");

    const double half_period = kPi / w;
    auto zero_at = [&](long k) {
        return (osc == Oscillator::Cos) ? (static_cast<double>(k) + 0.5) * half_period
                                        : static_cast<double>(k) * half_period;
    };
    long k0 = (osc == Oscillator::Cos)
                  ? static_cast<long>(std::ceil(a / half_period - 0.5))
                  : static_cast<long>(std::ceil(a / half_period));
    if (osc == Oscillator::Sin) k0 = std::max(k0, 1L);
    k0 = std::max(k0, 0L);
    while (zero_at(k0) < a) ++k0;
    const double z0 = zero_at(k0);

    auto integrand = [&](double s) {
        return g(s) * ((osc == Oscillator::Cos) ? std::cos(w * s) : std::sin(w * s));
    };

    QuadratureConfig panel_cfg = cfg;
    panel_cfg.rtol = std::min(cfg.rtol * 1e-2, 1e-12);

    const Integral head = integrate_finite(integrand, a, z0, panel_cfg);

    std::vector<double> partial;  // partial sums of the half-period panel series
    partial.reserve(64);
    partial.push_back(head.value);

    double best = head.value, best_err = std::numeric_limits<double>::infinity();
    double z_lo = z0;
    for (int m = 0; m < cfg.max_half_periods; ++m) {
        const double z_hi = zero_at(k0 + m + 1);
        const Integral panel = integrate_finite(integrand, z_lo, z_hi, panel_cfg);
        partial.push_back(partial.back() + panel.value);
        z_lo = z_hi;

        const int avail = static_cast<int>(partial.size()) - 1;
        const int depth = std::min(cfg.accel_depth, avail);
        if (depth < 2) continue;

        // iterated averaging of the alternating partial sums
        std::vector<double> row(partial);
        double prev_est = row.back();
        for (int j = 0; j < depth; ++j) {
            prev_est = row.back();
            for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
            row.pop_back();
        }
        const double est = row.back();
        // the series controls only its own truncation; the head panel's
        // (conservative) estimate is an exogenous additive term reported to
        // the caller, not part of the stopping decision
        const double err_series = std::abs(est - prev_est);
        if (err_series + head.error < best_err) {
            best = est;
            best_err = err_series + head.error;
        }
        if (err_series <= std::max(cfg.atol, cfg.rtol * std::abs(est)))
            return {est, err_series + head.error};
    }
    throw ConvergenceError("integrate_oscillatory_tail: half-period budget exhausted", best);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

namespace {

ScanExtremum extremize(const std::function<double(double)>& f, double lo, double hi, int n,
                       bool want_max) {
    const auto xs = log_grid(lo, hi, n);
    std::vector<double> vals(xs.size());
    const double worst = want_max ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
    auto better = [&](double u, double v) { return want_max ? u > v : u < v; };

    std::size_t best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = f(xs[i]);
        if (!std::isfinite(v)) v = worst;
        vals[i] = v;
        if (better(v, vals[best])) best = i;
    }

    ScanExtremum out;
    out.boundary_lo = (best == 0);
    out.boundary_hi = (best + 1 == xs.size());

    double tlo, thi;
    if (out.boundary_lo) {
        tlo = std::log(xs[0]);
        thi = std::log(xs[1]);
    } else if (out.boundary_hi) {
        tlo = std::log(xs[xs.size() - 2]);
        thi = std::log(xs.back());
    } else {
        tlo = std::log(xs[best - 1]);
        thi = std::log(xs[best + 1]);
    }

    // golden-section refinement in log(x)
    constexpr double kInvPhi = 0.6180339887498949;
    double t1 = thi - kInvPhi * (thi - tlo);
    double t2 = tlo + kInvPhi * (thi - tlo);
    double f1 = f(std::exp(t1)), f2 = f(std::exp(t2));
    if (!std::isfinite(f1)) f1 = worst;
    if (!std::isfinite(f2)) f2 = worst;
    for (int it = 0; it < 80 && (thi - tlo) > 1e-12; ++it) {
        if (better(f1, f2)) {
            thi = t2;
            t2 = t1;
            f2 = f1;
            t1 = thi - kInvPhi * (thi - tlo);
            f1 = f(std::exp(t1));
            if (!std::isfinite(f1)) f1 = worst;
        } else {
            tlo = t1;
            t1 = t2;
            f1 = f2;
            t2 = tlo + kInvPhi * (thi - tlo);
            f2 = f(std::exp(t2));
            if (!std::isfinite(f2)) f2 = worst;
        }
    }

    double xr = std::exp(0.5 * (tlo + thi));
    double vr = f(xr);
    if (!std::isfinite(vr)) vr = worst;
    if (better(vals[best], vr)) {
        out.x = xs[best];
        out.value = vals[best];
    } else {
        out.x = xr;
        out.value = vr;
    }
    return out;
}

}  // namespace

ScanExtremum maximize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                               int n) {
    return extremize(f, lo, hi, n, true);
}

ScanExtremum minimize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                               int n) {
    return extremize(f, lo, hi, n, false);
}

}  // namespace levygap::quad
