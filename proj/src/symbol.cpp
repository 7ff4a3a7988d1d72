#include "levygap/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "levygap/errors.hpp"

namespace levygap::symbol {

std::string family_name(Family f) {
    switch (f) {
        case Family::Stable: return "stable";
        case Family::Brownian: return "brownian";
        case Family::StableMixture: return "stable-mixture";
        case Family::CauchyPlusBrownian: return "cauchy-brownian";
        case Family::Tabulated: return "tabulated";
    }
    return "unknown";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

CharacteristicExponent CharacteristicExponent::stable(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("stable symbol: alpha must lie in (0, 2)");
    CharacteristicExponent p;
    p.family_ = Family::Stable;
    p.alpha_ = alpha;
    p.params_ = {alpha};
    return p;
}

CharacteristicExponent CharacteristicExponent::brownian(double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("brownian symbol: sigma2 must be > 0");
    CharacteristicExponent p;
    p.family_ = Family::Brownian;
    p.sigma2_ = sigma2;
    p.params_ = {sigma2};
    return p;
}

CharacteristicExponent CharacteristicExponent::stable_mixture(double c1, double c2,
                                                              double alpha) {
    if (c1 < 0.0 || c2 < 0.0 || (c1 == 0.0 && c2 == 0.0))
        throw std::invalid_argument("mixture symbol: weights must be >= 0 and not both zero");
    if (c2 > 0.0 && !(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("mixture symbol: alpha must lie in (0, 2)");
    CharacteristicExponent p;
    p.family_ = Family::StableMixture;
    p.c1_ = c1;
    p.c2_ = c2;
    p.alpha_ = alpha;
    p.sigma2_ = c1;
    p.params_ = {c1, c2, alpha};
    return p;
}

CharacteristicExponent CharacteristicExponent::cauchy_plus_brownian() {
    CharacteristicExponent p;
    p.family_ = Family::CauchyPlusBrownian;
    p.sigma2_ = 1.0;
    p.c1_ = 1.0;
    p.c2_ = 1.0;
    p.alpha_ = 1.0;
    return p;
}

CharacteristicExponent CharacteristicExponent::tabulated(std::vector<double> xi,
                                                         std::vector<double> psi,
                                                         double tail_power) {
    if (xi.size() != psi.size() || xi.size() < 2)
        throw std::invalid_argument("tabulated symbol: need >= 2 paired samples");
    if (xi.front() < 0.0)
        throw std::invalid_argument("tabulated symbol: grid must lie in [0, inf)");
    for (std::size_t i = 0; i + 1 < xi.size(); ++i)
        if (!(xi[i] < xi[i + 1]))
            throw std::invalid_argument("tabulated symbol: grid must be strictly increasing");
    for (double v : psi)
        if (!(v >= 0.0)) throw std::invalid_argument("tabulated symbol: values must be >= 0");
    if (!std::isfinite(tail_power))
        throw std::invalid_argument("tabulated symbol: tail power must be declared finite");

    CharacteristicExponent p;
    p.family_ = Family::Tabulated;
    p.tail_power_ = tail_power;
    p.table_monotone_ = std::is_sorted(psi.begin(), psi.end());
    p.interp_ = std::make_shared<MonotoneCubic>(std::move(xi), std::move(psi));
    return p;
}

double CharacteristicExponent::operator()(double xi) const {
    const double x = std::abs(xi);
    if (x == 0.0) return 0.0;
    switch (family_) {
        case Family::Stable:
            return std::pow(x, alpha_);
        case Family::Brownian:
            return sigma2_ * x * x;
        case Family::StableMixture:
            return c1_ * x * x + c2_ * std::pow(x, alpha_);
        case Family::CauchyPlusBrownian:
            return x * x + x;
        case Family::Tabulated: {
            const auto& gx = interp_->nodes_x();
            const auto& gy = interp_->nodes_y();
            if (x >= gx.back()) return gy.back() * std::pow(x / gx.back(), tail_power_);
            if (x <= gx.front()) {
                if (gx.front() == 0.0) return (*interp_)(x);
                // continue toward 0 by the power law through the first two nodes
                if (gy[0] > 0.0 && gy[1] > gy[0]) {
                    const double q = std::log(gy[1] / gy[0]) / std::log(gx[1] / gx[0]);
                    return gy[0] * std::pow(x / gx[0], q);
                }
                return gy[0] * (x / gx.front());
            }
            return (*interp_)(x);
        }
    }
    return 0.0;
}

double CharacteristicExponent::sup_on_interval(double x) const {
    if (!(x >= 0.0)) throw std::invalid_argument("sup_on_interval: need x >= 0");
    if (x == 0.0) return 0.0;
    if (monotone()) return (*this)(x);

    // non-monotone table: running maximum over the sampled nodes up to x,
    // extended by the tail law once x leaves the grid
    const auto& gx = interp_->nodes_x();
    const auto& gy = interp_->nodes_y();
    double best = 0.0;
    for (std::size_t i = 0; i < gx.size() && gx[i] <= x; ++i) best = std::max(best, gy[i]);
    if (x < gx.front() || x > gx.back()) best = std::max(best, (*this)(x));
    return best;
}

bool CharacteristicExponent::has_exact_exponents() const {
    return family_ != Family::Tabulated;
}

double CharacteristicExponent::tail_exponent() const {
    switch (family_) {
        case Family::Stable: return alpha_;
        case Family::Brownian: return 2.0;
        case Family::StableMixture: return c1_ > 0.0 ? 2.0 : alpha_;
        case Family::CauchyPlusBrownian: return 2.0;
        case Family::Tabulated: return tail_power_;
    }
    return 0.0;
}

std::optional<double> CharacteristicExponent::origin_exponent() const {
    switch (family_) {
        case Family::Stable: return alpha_;
        case Family::Brownian: return 2.0;
        case Family::StableMixture: return c2_ > 0.0 ? alpha_ : 2.0;
        case Family::CauchyPlusBrownian: return 1.0;
        case Family::Tabulated: return std::nullopt;
    }
    return std::nullopt;
}

bool CharacteristicExponent::monotone() const {
    return family_ != Family::Tabulated || table_monotone_;
}

bool CharacteristicExponent::simulable() const { return family_ != Family::Tabulated; }

namespace {

double fit_exponent(const CharacteristicExponent& psi, double lo, double hi) {
    const auto xs = quad::log_grid(lo, hi, 40);
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(xs.size());
    for (double x : xs) {
        const double v = psi(x);
        if (v > 0.0 && std::isfinite(v)) {
            lx.push_back(std::log(x));
            ly.push_back(std::log(v));
        }
    }
    if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return quad::fit_line(lx, ly).slope;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

ConditionReport check_conditions(const CharacteristicExponent& psi,
                                 const quad::QuadratureConfig& cfg) {
    ConditionReport rep;
    rep.tail_exponent_estimate = fit_exponent(psi, 10.0, 1000.0);
    rep.origin_exponent_estimate = fit_exponent(psi, 1e-4, 1.0);

    const bool exact = psi.has_exact_exponents();
    const double p_tail = exact ? psi.tail_exponent() : rep.tail_exponent_estimate;
    // origin exponent is exact for closed forms; Tabulated only has the fit
    const double p_origin = exact ? *psi.origin_exponent() : rep.origin_exponent_estimate;
    constexpr double kMargin = 0.05;  // decision margin for fitted exponents

    auto decide_vs = [&](double value, double threshold, bool ge) -> Verdict {
        if (!std::isfinite(value)) return Verdict::Inconclusive;
        if (!exact && std::abs(value - threshold) < kMargin) return Verdict::Inconclusive;
        const bool ok = ge ? value >= threshold : value > threshold;
        return ok ? Verdict::Holds : Verdict::Fails;
    };

    // integrability of 1/(1+psi) over the line: bounded near 0 for any q > 0,
    // so only the tail decides; the numeric integral is diagnostic evidence
    std::string a1_num;
    try {
        const auto head =
            quad::integrate_finite([&](double x) { return 1.0 / (1.0 + psi(x)); }, 0.0, 1.0, cfg);
        const auto tail =
            quad::integrate_tail([&](double x) { return 1.0 / (1.0 + psi(x)); }, 1.0, cfg);
        a1_num = "integral of 1/(1+psi) over [0,inf) = " + fmt(head.value + tail.value);
    } catch (const ConvergenceError& e) {
        // verdict still comes from the exponent; the diagnostic records the failure
        a1_num = std::string("integral of 1/(1+psi) did not converge (partial ") +
                 fmt(e.partial_value()) + ")";
    }
    rep.a1 = decide_vs(p_tail, 1.0, /*ge=*/false);
    rep.a1_diagnostic = "tail exponent " + fmt(p_tail) + (exact ? " (exact); " : " (fitted); ") +
                        a1_num;

    rep.a2 = decide_vs(p_origin, 1.0, /*ge=*/true);
    rep.a2_diagnostic = "origin exponent " + fmt(p_origin) + (exact ? " (exact)" : " (fitted)") +
                        "; origin integral of 1/psi diverges iff exponent >= 1";

    rep.a3 = decide_vs(p_tail, 1.0, /*ge=*/false);
    rep.a3_diagnostic = "tail exponent " + fmt(p_tail) + (exact ? " (exact)" : " (fitted)") +
                        "; psi(t)/t -> inf iff exponent > 1";
    return rep;
}

std::optional<WlscParams> fit_wlsc(const CharacteristicExponent& psi,
                                   const std::vector<double>& theta_grid,
                                   const std::vector<double>& lambda_grid) {
    if (theta_grid.empty() || lambda_grid.empty())
        throw std::invalid_argument("fit_wlsc: grids must be nonempty");
    for (double l : lambda_grid)
        if (!(l >= 1.0)) throw std::invalid_argument("fit_wlsc: lambda grid must lie in [1, inf)");

    // r(lambda) = inf_theta psi(lambda*theta)/psi(theta); the candidate
    // exponent only rescales r by lambda^{-d}, so one sweep serves them all
    std::vector<double> lam, logr;
    lam.reserve(lambda_grid.size());
    logr.reserve(lambda_grid.size());
    for (double l : lambda_grid) {
        double r = std::numeric_limits<double>::infinity();
        for (double th : theta_grid) {
            const double denom = psi(th);
            if (!(denom > 0.0)) continue;
            r = std::min(r, psi(l * th) / denom);
        }
        if (!std::isfinite(r) || r <= 0.0) return std::nullopt;
        lam.push_back(l);
        logr.push_back(std::log(r));
    }

    // a candidate d overshoots the true scaling iff r(lambda)/lambda^d decays
    // as lambda grows; measure the asymptotic slope on the top of the grid
    const std::size_t n = lam.size();
    const std::size_t from = (n >= 3) ? (2 * n) / 3 : 0;
    std::vector<double> tx, ty;
    for (std::size_t i = from; i < n; ++i) {
        tx.push_back(std::log(lam[i]));
        ty.push_back(logr[i]);
    }
    if (tx.size() < 2) {
        tx.assign(lam.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) tx[i] = std::log(lam[i]);
        ty = logr;
    }
    const double slope = quad::fit_line(tx, ty).slope;

    // candidates 1.01, 1.02, ..., 2.50
    const int k = std::min(150, static_cast<int>(std::floor((slope + 0.005 - 1.0) / 0.01 + 1e-9)));
    if (k < 1) return std::nullopt;
    const double delta_s = 1.0 + 0.01 * k;

    double beta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        beta = std::min(beta, std::exp(logr[i] - delta_s * std::log(lam[i])));
    if (!(beta > 0.0) || !std::isfinite(beta)) return std::nullopt;
    return WlscParams{delta_s, std::min(beta, 1.0)};
}

std::optional<WlscParams> fit_wlsc(const CharacteristicExponent& psi) {
    return fit_wlsc(psi, quad::log_grid(1e-8, 1e3, 80), quad::log_grid(1.0, 100.0, 40));
}

bool verify_wlsc(const CharacteristicExponent& psi, const WlscParams& w,
                 const std::vector<double>& theta_grid, const std::vector<double>& lambda_grid) {
    for (double l : lambda_grid) {
        for (double th : theta_grid) {
            const double lhs = psi(l * th);
            const double rhs = w.beta * std::pow(l, w.delta_s) * psi(th);
            if (lhs < rhs * (1.0 - 1e-12)) return false;
        }
    }
    return true;
}

}  // namespace levygap::symbol
