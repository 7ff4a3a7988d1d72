#include "levygap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "levygap/errors.hpp"

namespace levygap::bounds {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

SupResult sup_scan(const std::function<double(double)>& f, const GridSpec& grid) {
    const auto ext = quad::maximize_log_grid(f, grid.lo, grid.hi, grid.points);
    return {ext.value, ext.x, ext.boundary_hi};
}
}  // namespace

DeltaFunctionals compute_delta(const harmonic::HarmonicEvaluator& ev,
                               const speed::SpeedFunction& sp, const GridSpec& grid) {
    DeltaFunctionals out;
    auto H = [&](double x) { return ev.value(x).value; };

    out.delta = sup_scan([&](double x) { return H(x) * sp.tail_mass(x); }, grid);
    out.delta_plus = sup_scan([&](double x) { return H(x) * sp.right_tail_mass(x); }, grid);
    out.delta_minus = sup_scan([&](double x) { return H(x) * sp.left_tail_mass(x); }, grid);

    const auto xs = quad::log_grid(grid.lo, grid.hi, grid.points);
    out.curve.reserve(xs.size());
    for (double x : xs) {
        const double h = H(x);
        const double t = sp.tail_mass(x);
        out.curve.push_back({x, h, t, h * t});
    }
    return out;
}

double lambda1_lower(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::domain_error("spectral-gap bound needs finite positive delta");
    return 1.0 / (8.0 * delta);
}

KappaBound compute_I_and_kappa(const harmonic::HarmonicEvaluator& ev,
                               const speed::SpeedFunction& sp) {
    KappaBound out;
    try {
        const auto I =
            sp.integrate([&](double y) { return ev.value(y).value; }, {0.0}, ev.config());
        out.I = I.value;
        out.I_error = I.error;
        if (std::isfinite(I.value) && I.value > 0.0) {
            out.finite = true;
            out.kappa_lower = 1.0 / (2.0 * I.value);
            out.M0_upper = 2.0 * I.value;
        } else {
            out.diagnostic = "integral of H d-mu is not finite-positive";
        }
    } catch (const ConvergenceError& e) {
        out.I = e.partial_value();
        out.finite = false;
        out.diagnostic =
            std::string("integral of H d-mu did not settle; strong ergodicity not "
                        "established by this criterion (") +
            e.what() + ")";
    }
    return out;
}

Lambda0Bracket lambda0_bracket(const DeltaFunctionals& d) {
    Lambda0Bracket br;
    if (!d.delta.at_boundary && d.delta.value > 0.0 && std::isfinite(d.delta.value)) {
        br.lower = lambda1_lower(d.delta.value);
        br.lower_valid = true;
    }
    const bool plus_ok = !d.delta_plus.at_boundary && d.delta_plus.value > 0.0 &&
                         std::isfinite(d.delta_plus.value);
    const bool minus_ok = !d.delta_minus.at_boundary && d.delta_minus.value > 0.0 &&
                          std::isfinite(d.delta_minus.value);
    if (plus_ok && minus_ok) {
        br.upper = 1.0 / d.delta_plus.value + 1.0 / d.delta_minus.value;
        br.upper_valid = true;
    }
    return br;
}

double green_origin_kernel(const harmonic::HarmonicEvaluator& ev, double x, double y) {
    return ev.value(x).value + ev.value(y).value - ev.value(y - x).value;
}

quad::Integral green_origin_apply(const harmonic::HarmonicEvaluator& ev,
                                  const speed::SpeedFunction& sp,
                                  const std::function<double(double)>& f, double x) {
    const double ax = std::abs(x);
    return sp.integrate([&](double y) { return green_origin_kernel(ev, x, y) * f(y); },
                        {-ax, 0.0, ax}, ev.config());
}

double variational_lower_certificate(const harmonic::HarmonicEvaluator& ev,
                                     const speed::SpeedFunction& sp,
                                     const std::function<double(double)>& f,
                                     const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("certificate: grid must be nonempty");
    double best = std::numeric_limits<double>::infinity();
    for (double x : grid) {
        if (x == 0.0) throw std::invalid_argument("certificate: grid must avoid 0");
        const double fx = f(x);
        if (!(fx > 0.0))
            throw std::invalid_argument("certificate: test function must be positive off 0");
        const double g = green_origin_apply(ev, sp, f, x).value;
        if (!(g > 0.0))
            throw ConvergenceError("certificate: Green potential not positive at grid point", g);
        best = std::min(best, fx / g);
    }
    return best;
}

WlscRateBounds wlsc_rate_bounds(const symbol::CharacteristicExponent& psi,
                                const symbol::WlscParams& w, const speed::SpeedFunction& sp,
                                const GridSpec& grid) {
    if (!(w.delta_s > 1.0))
        throw std::domain_error("scaling rate bounds require delta_s > 1");

    WlscRateBounds out;
    out.params = w;
    const double front = kPi * w.beta * w.beta * (w.delta_s - 1.0);

    auto objective = [&](double x) { return x * psi.sup_on_interval(1.0 / x) / sp.tail_mass(x); };
    const auto inf = quad::minimize_log_grid(objective, grid.lo, grid.hi, grid.points);
    out.inf_scan = {inf.value, inf.x, inf.boundary_lo || inf.boundary_hi};

    if (out.inf_scan.at_boundary || !(inf.value > 0.0) || !std::isfinite(inf.value)) {
        out.diagnostic = "inf over x degenerate at scan boundary; no spectral-gap bound";
        return out;
    }
    out.lambda1_lower = front / 80.0 * inf.value;

    // kappa integrand 1/(|x| a(x) psi_star(1/|x|)), folded onto x > 0
    auto g = [&](double x) {
        return 1.0 / (x * psi.sup_on_interval(1.0 / x)) * (1.0 / sp(x) + 1.0 / sp(-x));
    };
    try {
        const auto head = quad::integrate_endpoint_singular(
            [&](double x) { return x > 0.0 ? g(x) : 0.0; }, 0.0, 1.0);
        const auto tail = quad::integrate_tail(g, 1.0);
        out.kappa_integral = head.value + tail.value;
        if (!(out.kappa_integral > 0.0) || !std::isfinite(out.kappa_integral)) {
            out.diagnostic = "kappa integral not finite-positive; no strong-ergodicity bound";
            return out;
        }
        out.kappa_lower = front / (20.0 * out.kappa_integral);
    } catch (const ConvergenceError& e) {
        out.kappa_integral = e.partial_value();
        out.diagnostic = std::string("kappa integral diverges: ") + e.what();
        return out;
    }
    out.valid = true;
    return out;
}

ErgodicityReport analyze(const symbol::CharacteristicExponent& psi,
                         const speed::SpeedFunction& sp, const quad::QuadratureConfig& qcfg,
                         const AnalyzeOptions& opts) {
    ErgodicityReport rep;
    rep.conditions = symbol::check_conditions(psi, qcfg);
    rep.mu_finite = sp.finite_mass();
    if (rep.mu_finite) rep.mu_total = sp.total_mass();
    rep.hypotheses_ok = rep.conditions.all_hold() && rep.mu_finite;

    if (!rep.hypotheses_ok) {
        rep.status = "hypotheses-fail";
        return rep;
    }

    harmonic::HarmonicEvaluator ev(psi, qcfg, opts.use_closed_form);
    rep.deltas = compute_delta(ev, sp, opts.grid);

    if (!rep.deltas.delta.at_boundary && rep.deltas.delta.value > 0.0 &&
        std::isfinite(rep.deltas.delta.value)) {
        rep.lambda1 = lambda1_lower(rep.deltas.delta.value);
        rep.lambda1_valid = true;
    }
    rep.kappa = compute_I_and_kappa(ev, sp);
    rep.lambda0 = lambda0_bracket(rep.deltas);

    if (opts.fit_scaling) {
        rep.wlsc_params = symbol::fit_wlsc(psi);
        if (rep.wlsc_params && rep.wlsc_params->delta_s > 1.0)
            rep.wlsc = wlsc_rate_bounds(psi, *rep.wlsc_params, sp, opts.grid);
    }

    if (psi.family() == symbol::Family::Stable && rep.lambda1_valid && rep.kappa.finite) {
        StableSpecialization st;
        st.omega_alpha = harmonic::stable_omega(psi.alpha());
        st.delta1 = 2.0 * rep.deltas.delta.value / st.omega_alpha;
        st.I1 = 2.0 * rep.kappa.I / st.omega_alpha;
        st.lambda1_lower = 1.0 / (4.0 * st.omega_alpha * st.delta1);
        st.kappa_lower = 1.0 / (st.omega_alpha * st.I1);
        rep.stable_path = st;
    }

    if (psi.family() == symbol::Family::CauchyPlusBrownian) {
        LogEnvelopeBounds le;
        const auto sup = quad::maximize_log_grid(
            [&](double x) { return std::log1p(x) * sp.tail_mass(x); }, opts.grid.lo,
            opts.grid.hi, opts.grid.points);
        le.sup_scan = {sup.value, sup.x, sup.boundary_hi};
        if (!le.sup_scan.at_boundary && sup.value > 0.0) {
            le.delta2 = sup.value;
            le.lambda1_lower = kPi / (80.0 * le.delta2);
            try {
                le.I2 = sp.integrate([](double y) { return std::log1p(std::abs(y)); }, {0.0},
                                     qcfg)
                            .value;
                if (le.I2 > 0.0 && std::isfinite(le.I2)) le.kappa_lower = kPi / (20.0 * le.I2);
            } catch (const ConvergenceError&) {
                le.I2 = std::numeric_limits<double>::infinity();
            }
            rep.log_envelope_path = le;
        }
    }

    rep.status = (rep.lambda1_valid || rep.kappa.finite) ? "ok" : "no-bound";
    return rep;
}

}  // namespace levygap::bounds
