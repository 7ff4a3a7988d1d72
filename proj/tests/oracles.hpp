#pragma once

// Reference values for the test suite. Everything here was computed away from
// the library under test: closed-form calculus where available, otherwise
// high-precision arbitrary-precision quadrature, rounded to double. Keeping
// them as frozen literals means a regression in the quadrature stack cannot
// silently re-derive its own expectations.

namespace oracle {

// H(x) = omega_alpha * |x|^{alpha-1} / 2 for the pure stable symbol,
// omega_alpha = -1 / (cos(pi*alpha/2) * Gamma(alpha))
inline constexpr double kOmega12 = 3.5244806624998797;          // alpha = 1.2
inline constexpr double kOmega15 = 1.5957691216057307;          // alpha = 1.5
inline constexpr double kOmega18 = 1.1289247858931952;          // alpha = 1.8
inline constexpr double kStableH15x1 = 0.7978845608028654;      // omega_15 / 2
inline constexpr double kStableHprime15x1 = 0.3989422804014327; // omega_15/2*(alpha-1)
inline constexpr double kStableH12x10 = 2.7929627044784473;     // omega_12/2 * 10^0.2

// mixture c1 = c2 = 1, alpha = 1.5 (full quadrature, no closed form)
inline constexpr double kMixtureH1 = 0.2745307207885984;

// xi^2 + |xi| symbol at x = 1
inline constexpr double kCauchyBrownianH1 = 0.29303405245935632;

// oscillatory tails
inline constexpr double kIntCosOverS2 = -0.084410950559573887;   // int_1^inf cos(s)/s^2
inline constexpr double kIntSinOverS = 0.6247132564277136;       // int_1^inf sin(s)/s
inline constexpr double kIntCosOverS15 = -0.18495045600119666;   // int_1^inf cos(s)/s^1.5

// worked configuration psi = xi^2, a = e^{|x|}:
//   H = x/2, mu-tail = 2e^{-x}  ->  delta = sup x*e^{-x} = 1/e at x = 1,
//   one-sided deltas 1/(2e), I = int H dmu = 1, bracket [e/8, 4e]
inline constexpr double kBEDelta = 0.36787944117144233;
inline constexpr double kBEDeltaOneSided = 0.18393972058572117;
inline constexpr double kBELambda1 = 0.33978522855738065;  // e/8
inline constexpr double kBELambda0Upper = 10.873127313836181;  // 4e
// scaling-route bounds for the same configuration, WLSC(2,1):
//   inf_x x*(1/x)^2/(2e^{-x}) = e/2, lambda1 >= pi*e/160, J = 2, kappa >= pi/40
inline constexpr double kBEWlscInf = 1.3591409142295226;
inline constexpr double kBEWlscLambda1 = 0.053373338891709794;
inline constexpr double kBEWlscKappa = 0.078539816339744831;

// stable alpha = 1.5 with a = e^{|x|}:
//   delta = omega*sup sqrt(x)e^{-x} = omega*sqrt(1/2)*e^{-1/2} at x = 1/2,
//   I = omega*sqrt(pi)/2 = sqrt(2), I1 = 2I/omega = sqrt(pi)
inline constexpr double kStableDelta = 0.68439656062443307;
inline constexpr double kStableI = 1.414213562373095;
inline constexpr double kStableI1 = 1.7724538509055161;  // sqrt(pi)

// xi^2 + |xi| with a = e^{|x|}, logarithmic envelope route:
//   delta2 = sup 2*log(1+x)e^{-x} = 2e^{1-u}/u at x = u-1, where log u = 1/u
//   I2 = 2 int_0^inf log(1+x)e^{-x} dx = 2e*E1(1)
inline constexpr double kLogEnvArgmax = 0.7632228343518967;
inline constexpr double kLogEnvDelta2 = 0.52876089469926865;
inline constexpr double kLogEnvI2 = 1.1926947246463881;
inline constexpr double kLogEnvLambda1 = 0.074267799611404832;  // pi/(80*delta2)
inline constexpr double kLogEnvKappa = 0.1317014567378596;      // pi/(20*I2)

// speed-measure integrals for a = e^{|x|}
inline constexpr double kExpSpeedMinAbs1 = 1.2642411176571154;  // int min(1,|y|) dmu = 2(1-1/e)

// Y-hitting-time oracle, psi = xi^2, a = e^{|x|}, start x = 1:
//   E[T_0] = int G(1,y) dmu(y) = 1 - 1/e
inline constexpr double kBEMeanHitFrom1 = 0.6321205588285577;

}  // namespace oracle
