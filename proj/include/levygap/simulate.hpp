#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levygap/speed.hpp"
#include "levygap/symbol.hpp"

namespace levygap::sim {

/// Counter-based uniform source: every variate is a pure function of
/// (seed, path, step, draw), so results are independent of how paths are
/// scheduled across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t path);

    double uniform(std::uint64_t step, std::uint32_t draw) const;  // open (0,1)
    double normal(std::uint64_t step, std::uint32_t draw) const;   // N(0,1), uses draw, draw+1

private:
    std::uint64_t base_;
};

/// Step index reserved for the initial-condition draw of a path.
inline constexpr std::uint64_t kInitStep = ~std::uint64_t{0};

/// Samples increments whose characteristic function over one step dt is
/// exactly e^{-dt*psi(xi)}: a Gaussian part for the xi^2 coefficient plus an
/// independent symmetric stable part (polar construction) for the |xi|^alpha
/// part. Because increments are exact in law, dt refinement changes only the
/// clock discretization, never the law of the base process at grid times.
class IncrementSampler {
public:
    IncrementSampler(const symbol::CharacteristicExponent& psi, double dt);
    double operator()(const CounterRng& rng, std::uint64_t step) const;
    double dt() const { return dt_; }

private:
    double dt_ = 0.0;
    double gauss_sd_ = 0.0;     // N(0, 2*sigma2*dt) component
    double stable_scale_ = 0.0; // scale of the alpha-stable component
    double alpha_ = 0.0;        // 0 when there is no stable component
};

enum class InitialLaw { Point, Stationary };

struct SimConfig {
    std::uint64_t seed = 12345;
    std::size_t n_paths = 10000;
    double T = 20.0;                 // output horizon on the time-changed clock
    double dt = 0.0;                 // base-time step; <= 0 selects 1e-3 * T
    std::size_t output_points = 200; // observable sampling times on [0, T]
    InitialLaw init = InitialLaw::Point;
    double x0 = 2.0;
    double base_cap_factor = 200.0;  // give up on a path after base time factor*T
    unsigned threads = 0;            // 0 selects hardware concurrency

    double step() const { return dt > 0.0 ? dt : 1e-3 * T; }
};

/// Time-changed paths sampled at a fixed output grid. Row-major:
/// value(path, k) is Y at times[k]. A path whose clock failed to reach T
/// within the base-time cap is flagged truncated (its tail values repeat the
/// last state).
struct PathEnsemble {
    SimConfig cfg;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<std::uint8_t> truncated;

    double value(std::size_t path, std::size_t k) const {
        return values[path * times.size() + k];
    }
    std::size_t truncated_count() const;
};

/// Base Levy path on the grid t_k = k*dt, started at x0.
std::vector<double> sample_base_path(const symbol::CharacteristicExponent& psi, double T,
                                     double dt, std::uint64_t seed, std::uint64_t path_id,
                                     double x0 = 0.0);

/// Clock A_t = integral of 1/a(X_s) ds by left-endpoint sums; Y at an output
/// time t is the grid state X_k holding on the clock interval [A_k, A_{k+1}).
/// Returns Y at the requested times; entries beyond the reach of the clock
/// repeat the final state, and *truncated reports whether that happened.
std::vector<double> time_change(const std::vector<double>& xpath, double dt,
                                const speed::SpeedFunction& sp,
                                const std::vector<double>& output_times,
                                bool* truncated = nullptr);

PathEnsemble sample_ensemble(const symbol::CharacteristicExponent& psi,
                             const speed::SpeedFunction& sp, const SimConfig& cfg);

/// Terminal base-process values X_T over n independent paths (no time change);
/// exact in law for any dt that divides T.
std::vector<double> sample_terminal_values(const symbol::CharacteristicExponent& psi, double T,
                                           double dt, std::size_t n, std::uint64_t seed,
                                           unsigned threads = 0);

struct Observable {
    std::string name;
    std::function<double(double)> f;
};

/// Built-in observables: sgn_min1 (odd, default), abs_min1, indicator1
/// (|x| >= 1), constant.
Observable make_observable(const std::string& name);

struct DecayFitConfig {
    double start_fraction = 0.5;  // window opens once m(t) < start_fraction * m(0)
    double noise_multiple = 5.0;  // window closes once m(t) < noise_multiple * se(t)
    int bootstrap_replicates = 200;
    std::uint64_t bootstrap_seed = 0x626f6f74ULL;
};

struct DecayEstimate {
    double rate = 0.0;     // fitted exponential decay rate of |E f(Y_t) - mu(f)|
    double ci_low = 0.0;   // bootstrap 95% band
    double ci_high = 0.0;
    std::string observable;
    double window_t1 = 0.0, window_t2 = 0.0;
    std::size_t window_points = 0;
    double residual_rms = 0.0;
    double mu_f = 0.0;
    std::vector<std::array<double, 3>> mean_series;  // (t, ensemble mean, standard error)
};

/// Fits log|ensemble mean of f(Y_t) - mu_f| linearly on the window where the
/// signal is above the noise floor. Throws NoSignalError when the signal
/// never rises above noise (e.g. constant observables).
DecayEstimate estimate_decay_rate(const PathEnsemble& ens, const Observable& obs, double mu_f,
                                  const DecayFitConfig& fit = {});

struct ReturnTimeEstimate {
    double eps = 0.0;
    double x0 = 0.0;
    double mean = 0.0;     // mean first entry time of Y into [-eps, eps]
    double ci_low = 0.0;   // normal-approximation 95% interval
    double ci_high = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_censored = 0;  // never entered within the base-time cap
};

/// First entry of the discretized Y into [-eps, eps], started at x0, measured
/// on the time-changed clock. Two discretization effects pull in opposite
/// directions: interval hitting precedes point hitting (downward), while a
/// finite step can leap the interval without landing in it (upward, shrinks
/// with dt). The estimate tests order-of-magnitude upper bounds, not exact
/// hitting times.
ReturnTimeEstimate estimate_return_time(const symbol::CharacteristicExponent& psi,
                                        const speed::SpeedFunction& sp, const SimConfig& cfg,
                                        double eps, double x0);

}  // namespace levygap::sim
