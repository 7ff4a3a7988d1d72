#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "levygap/monotone_cubic.hpp"
#include "levygap/quad.hpp"

namespace levygap::speed {

enum class Family { ExpGrowth, PolyGrowth, Tabulated };

std::string family_name(Family f);

/// Speed function a(x) > 0 of the time change, together with the measure
/// mu(dx) = a(x)^{-1} dx. Closed-form families carry exact masses; tabulated
/// speeds interpolate the grid with a monotone cubic and continue past the
/// grid ends by the declared tail power (mandatory, so mass classification
/// never guesses). A grid given on [0, inf) is treated as symmetric in |x|;
/// a grid spanning negative and positive abscissae is taken literally, in
/// which case the one-sided masses may differ.
///
/// Total mass may legitimately be infinite (e.g. a constant speed); that is
/// only an error for the operations whose hypotheses need mu(R) < inf, which
/// throw InfiniteMassError.
class SpeedFunction {
public:
    static SpeedFunction exp_growth(double b, double scale = 1.0);  // a = scale*e^{b|x|}
    static SpeedFunction poly_growth(double p, double c);           // a = c*(1+|x|)^p
    static SpeedFunction tabulated(std::vector<double> x, std::vector<double> a,
                                   double tail_power);

    double operator()(double x) const;  // a(x)

    bool finite_mass() const { return finite_mass_; }
    double total_mass() const;               // mu(R); throws InfiniteMassError when infinite
    double tail_mass(double x) const;        // mu((-x, x)^c), x >= 0
    double right_tail_mass(double x) const;  // mu([x, inf)), x >= 0
    double left_tail_mass(double x) const;   // mu((-inf, -x]), x >= 0

    /// integral of f d-mu over the line; breaks lists interior points where f
    /// has kinks so panel quadrature can split there. Throws ConvergenceError
    /// with the partial value when the tails fail to settle.
    quad::Integral integrate(const std::function<double(double)>& f,
                             const std::vector<double>& breaks = {},
                             const quad::QuadratureConfig& cfg = {}) const;

    Family family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    bool symmetric() const { return symmetric_; }

private:
    SpeedFunction() = default;
    double one_sided_tail(double x, bool right) const;

    Family family_ = Family::ExpGrowth;
    double b_ = 0.0, scale_ = 1.0;  // ExpGrowth
    double p_ = 0.0, c_ = 1.0;      // PolyGrowth
    double tail_power_ = 0.0;       // Tabulated
    std::vector<double> params_;
    std::shared_ptr<const MonotoneCubic> interp_;  // Tabulated only
    bool symmetric_ = true;
    bool finite_mass_ = false;
    double total_ = 0.0;  // valid when finite_mass_
};

}  // namespace levygap::speed
