#include "levygap/speed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levygap/errors.hpp"

namespace levygap::speed {

std::string family_name(Family f) {
    switch (f) {
        case Family::ExpGrowth: return "exp-growth";
        case Family::PolyGrowth: return "poly-growth";
        case Family::Tabulated: return "tabulated";
    }
    return "unknown";
}

SpeedFunction SpeedFunction::exp_growth(double b, double scale) {
    if (!(b >= 0.0)) throw std::invalid_argument("exp-growth speed: need b >= 0");
    if (!(scale > 0.0)) throw std::invalid_argument("exp-growth speed: need scale > 0");
    SpeedFunction sp;
    sp.family_ = Family::ExpGrowth;
    sp.b_ = b;
    sp.scale_ = scale;
    sp.params_ = {b, scale};
    sp.finite_mass_ = b > 0.0;
    if (sp.finite_mass_) sp.total_ = 2.0 / (scale * b);
    return sp;
}

SpeedFunction SpeedFunction::poly_growth(double p, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("poly-growth speed: need c > 0");
    if (!std::isfinite(p)) throw std::invalid_argument("poly-growth speed: p must be finite");
    SpeedFunction sp;
    sp.family_ = Family::PolyGrowth;
    sp.p_ = p;
    sp.c_ = c;
    sp.params_ = {p, c};
    sp.finite_mass_ = p > 1.0;
    if (sp.finite_mass_) sp.total_ = 2.0 / (c * (p - 1.0));
    return sp;
}

SpeedFunction SpeedFunction::tabulated(std::vector<double> x, std::vector<double> a,
                                       double tail_power) {
    if (x.size() != a.size() || x.size() < 2)
        throw std::invalid_argument("tabulated speed: need >= 2 paired samples");
    for (double v : a)
        if (!(v > 0.0)) throw std::invalid_argument("tabulated speed: values must be > 0");
    if (!std::isfinite(tail_power))
        throw std::invalid_argument("tabulated speed: tail power must be declared finite");
    if (!(x.back() > 0.0))
        throw std::invalid_argument("tabulated speed: grid must reach positive abscissae");

    SpeedFunction sp;
    sp.family_ = Family::Tabulated;
    sp.tail_power_ = tail_power;
    sp.symmetric_ = x.front() >= 0.0;  // one-sided grid means a = a(|x|)
    sp.interp_ = std::make_shared<MonotoneCubic>(std::move(x), std::move(a));
    sp.finite_mass_ = tail_power > 1.0;
    if (sp.finite_mass_) {
        sp.total_ = sp.one_sided_tail(0.0, true) + sp.one_sided_tail(0.0, false);
    }
    return sp;
}

double SpeedFunction::operator()(double x) const {
    switch (family_) {
        case Family::ExpGrowth:
            return scale_ * std::exp(b_ * std::abs(x));
        case Family::PolyGrowth:
            return c_ * std::pow(1.0 + std::abs(x), p_);
        case Family::Tabulated: {
            const double q = symmetric_ ? std::abs(x) : x;
            const double lo = interp_->x_min(), hi = interp_->x_max();
            if (q > hi) return interp_->nodes_y().back() * std::pow(q / hi, tail_power_);
            if (q < lo) {
                if (symmetric_) return interp_->nodes_y().front();  // plateau below the grid
                return interp_->nodes_y().front() * std::pow(q / lo, tail_power_);
            }
            return (*interp_)(q);
        }
    }
    return 1.0;
}

double SpeedFunction::one_sided_tail(double x, bool right) const {
    if (!(x >= 0.0)) throw std::invalid_argument("tail mass: need x >= 0");
    switch (family_) {
        case Family::ExpGrowth:
            if (b_ == 0.0)
                throw InfiniteMassError("exp-growth speed with b = 0 has infinite measure");
            return std::exp(-b_ * x) / (scale_ * b_);
        case Family::PolyGrowth:
            if (!(p_ > 1.0))
                throw InfiniteMassError("poly-growth speed needs p > 1 for finite tail mass");
            return std::pow(1.0 + x, 1.0 - p_) / (c_ * (p_ - 1.0));
        case Family::Tabulated: {
            if (!(tail_power_ > 1.0))
                throw InfiniteMassError("tabulated speed: declared tail power <= 1, tail mass diverges");
            // position t >= 0 measured along the chosen side
            auto side_a = [&](double t) { return (*this)(right ? t : -t); };
            const double anchor =
                (symmetric_ || right) ? interp_->x_max() : -interp_->x_min();
            // beyond the anchor a follows the power law, so the remainder is exact
            auto closed_from = [&](double z) {
                return z / (side_a(z) * (tail_power_ - 1.0));
            };
            if (x >= anchor) return closed_from(x);
            const auto body = quad::integrate_finite(
                [&](double t) { return 1.0 / side_a(t); }, x, anchor, {});
            return body.value + closed_from(anchor);
        }
    }
    return 0.0;
}

double SpeedFunction::right_tail_mass(double x) const { return one_sided_tail(x, true); }

double SpeedFunction::left_tail_mass(double x) const { return one_sided_tail(x, false); }

double SpeedFunction::tail_mass(double x) const {
    return one_sided_tail(x, true) + one_sided_tail(x, false);
}

double SpeedFunction::total_mass() const {
    if (!finite_mass_) {
        switch (family_) {
            case Family::ExpGrowth:
                throw InfiniteMassError("exp-growth speed with b = 0 has infinite total measure");
            case Family::PolyGrowth:
                throw InfiniteMassError("poly-growth speed with p <= 1 has infinite total measure");
            case Family::Tabulated:
                throw InfiniteMassError("tabulated speed: declared tail power <= 1 gives infinite measure");
        }
    }
    return total_;
}

quad::Integral SpeedFunction::integrate(const std::function<double(double)>& f,
                                        const std::vector<double>& breaks,
                                        const quad::QuadratureConfig& cfg) const {
    double body_end = 1.0;
    for (double b : breaks) body_end = std::max(body_end, std::abs(b));
    if (family_ == Family::Tabulated)
        body_end = std::max({body_end, interp_->x_max(), std::abs(interp_->x_min())});

    std::vector<double> pts{-body_end, 0.0, body_end};
    for (double b : breaks)
        if (b > -body_end && b < body_end) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto integrand = [&](double y) { return f(y) / (*this)(y); };

    quad::Integral total{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto part = quad::integrate_finite(integrand, pts[i], pts[i + 1], cfg);
        total.value += part.value;
        total.error += part.error;
    }
    const auto right = quad::integrate_tail(integrand, body_end, cfg);
    const auto left =
        quad::integrate_tail([&](double t) { return integrand(-t); }, body_end, cfg);
    total.value += right.value + left.value;
    total.error += right.error + left.error;
    return total;
}

}  // namespace levygap::speed
