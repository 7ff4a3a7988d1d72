#include "levygap/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "levygap/errors.hpp"
#include "levygap/quad.hpp"

namespace levygap::sim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// run job(p) for p in [0, n) on the given number of workers;
// output slots are preallocated by the caller, so scheduling cannot
// affect the result
template <typename Job>
void parallel_for_paths(std::size_t n, unsigned threads, Job&& job) {
    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t p = 0; p < n; ++p) job(p);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t p = next.fetch_add(1);
            if (p >= n) return;
            job(p);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

// symmetric alpha-stable with unit scale (characteristic function e^{-|xi|^alpha})
// by the polar (Chambers-Mallows-Stuck) construction
double standard_stable(double alpha, double u1, double u2) {
    const double U = kPi * (u1 - 0.5);
    if (alpha == 1.0) return std::tan(U);
    const double W = -std::log(u2);
    const double a = std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha);
    const double b = std::pow(std::cos((1.0 - alpha) * U) / W, (1.0 - alpha) / alpha);
    return a * b;
}

// inverse-CDF sampler for the normalized measure a(x)^{-1} dx / mu(R)
class StationarySampler {
public:
    explicit StationarySampler(const speed::SpeedFunction& sp) {
        const double total = sp.total_mass();
        double L = 1.0;
        while (sp.tail_mass(L) > 1e-10 * total && L < 1e9) L *= 2.0;
        constexpr int kN = 10000;
        xs_.resize(kN + 1);
        cdf_.resize(kN + 1);
        for (int i = 0; i <= kN; ++i) {
            const double x = -L + 2.0 * L * i / kN;
            xs_[static_cast<std::size_t>(i)] = x;
            const double below =
                x >= 0.0 ? total - sp.right_tail_mass(x) : sp.left_tail_mass(-x);
            cdf_[static_cast<std::size_t>(i)] = std::clamp(below / total, 0.0, 1.0);
        }
        for (std::size_t i = 1; i < cdf_.size(); ++i)  // guard quadrature wiggle
            cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
        cdf_.front() = 0.0;
        cdf_.back() = 1.0;
    }

    double operator()(double u) const {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
        i = std::clamp<std::size_t>(i, 1, cdf_.size() - 1);
        const double c0 = cdf_[i - 1], c1 = cdf_[i];
        const double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
        return xs_[i - 1] + frac * (xs_[i] - xs_[i - 1]);
    }

private:
    std::vector<double> xs_, cdf_;
};

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t path)
    : base_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                  (path * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL))) {}

double CounterRng::uniform(std::uint64_t step, std::uint32_t draw) const {
    const std::uint64_t h =
        mix64(base_ ^ mix64(step + (static_cast<std::uint64_t>(draw) + 1) *
                                       0x9e3779b97f4a7c15ULL));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t step, std::uint32_t draw) const {
    const double u1 = uniform(step, draw);
    const double u2 = uniform(step, draw + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

IncrementSampler::IncrementSampler(const symbol::CharacteristicExponent& psi, double dt)
    : dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("increment sampler: need dt > 0");
    if (!psi.simulable())
        throw UnsupportedFamilyError("no exact increment sampler for tabulated symbols");
    using symbol::Family;
    switch (psi.family()) {
        case Family::Brownian:
            gauss_sd_ = std::sqrt(2.0 * psi.sigma2() * dt);
            break;
        case Family::Stable:
            alpha_ = psi.alpha();
            stable_scale_ = (alpha_ == 1.0) ? dt : std::pow(dt, 1.0 / alpha_);
            break;
        case Family::StableMixture:
            if (psi.c1() > 0.0) gauss_sd_ = std::sqrt(2.0 * psi.c1() * dt);
            if (psi.c2() > 0.0) {
                alpha_ = psi.alpha();
                stable_scale_ =
                    (alpha_ == 1.0) ? psi.c2() * dt : std::pow(psi.c2() * dt, 1.0 / alpha_);
            }
            break;
        case Family::CauchyPlusBrownian:
            gauss_sd_ = std::sqrt(2.0 * dt);
            alpha_ = 1.0;
            stable_scale_ = dt;
            break;
        case Family::Tabulated:
            break;  // unreachable, rejected above
    }
}

double IncrementSampler::operator()(const CounterRng& rng, std::uint64_t step) const {
    // fixed draw layout per step: 0,1 Gaussian part; 2,3 stable part
    double inc = 0.0;
    if (gauss_sd_ > 0.0) inc += gauss_sd_ * rng.normal(step, 0);
    if (alpha_ > 0.0)
        inc += stable_scale_ * standard_stable(alpha_, rng.uniform(step, 2), rng.uniform(step, 3));
    return inc;
}

std::size_t PathEnsemble::truncated_count() const {
    return static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), 1));
}

std::vector<double> sample_base_path(const symbol::CharacteristicExponent& psi, double T,
                                     double dt, std::uint64_t seed, std::uint64_t path_id,
                                     double x0) {
    if (!(T > 0.0)) throw std::invalid_argument("sample_base_path: need T > 0");
    const IncrementSampler inc(psi, dt);
    const CounterRng rng(seed, path_id);
    const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    std::vector<double> x(n + 1);
    x[0] = x0;
    for (std::size_t k = 0; k < n; ++k) x[k + 1] = x[k] + inc(rng, k);
    return x;
}

std::vector<double> time_change(const std::vector<double>& xpath, double dt,
                                const speed::SpeedFunction& sp,
                                const std::vector<double>& output_times, bool* truncated) {
    if (xpath.empty()) throw std::invalid_argument("time_change: empty path");
    std::vector<double> y(output_times.size());
    double A = 0.0;
    std::size_t oi = 0;
    for (std::size_t k = 0; k + 1 < xpath.size() && oi < y.size(); ++k) {
        const double A_next = A + dt / sp(xpath[k]);
        while (oi < y.size() && output_times[oi] < A_next) y[oi++] = xpath[k];
        A = A_next;
    }
    if (truncated) *truncated = oi < y.size();
    while (oi < y.size()) y[oi++] = xpath.back();
    return y;
}

PathEnsemble sample_ensemble(const symbol::CharacteristicExponent& psi,
                             const speed::SpeedFunction& sp, const SimConfig& cfg) {
    if (!(cfg.T > 0.0)) throw std::invalid_argument("sample_ensemble: need T > 0");
    const double dt = cfg.step();
    const IncrementSampler inc(psi, dt);

    PathEnsemble ens;
    ens.cfg = cfg;
    const std::size_t n_out = std::max<std::size_t>(cfg.output_points, 2);
    ens.times.resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i)
        ens.times[i] = cfg.T * static_cast<double>(i) / static_cast<double>(n_out - 1);
    ens.values.assign(cfg.n_paths * n_out, 0.0);
    ens.truncated.assign(cfg.n_paths, 0);

    std::optional<StationarySampler> stat;
    if (cfg.init == InitialLaw::Stationary) stat.emplace(sp);

    const auto max_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.base_cap_factor * cfg.T / dt));

    parallel_for_paths(cfg.n_paths, cfg.threads, [&](std::size_t p) {
        const CounterRng rng(cfg.seed, p);
        double x = stat ? (*stat)(rng.uniform(kInitStep, 0)) : cfg.x0;
        double A = 0.0;
        double* row = &ens.values[p * n_out];
        std::size_t oi = 0;
        for (std::uint64_t k = 0; k < max_steps && oi < n_out; ++k) {
            const double A_next = A + dt / sp(x);
            while (oi < n_out && ens.times[oi] < A_next) row[oi++] = x;
            x += inc(rng, k);
            A = A_next;
        }
        if (oi < n_out) {
            ens.truncated[p] = 1;
            while (oi < n_out) row[oi++] = x;
        }
    });
    return ens;
}

std::vector<double> sample_terminal_values(const symbol::CharacteristicExponent& psi, double T,
                                           double dt, std::size_t n, std::uint64_t seed,
                                           unsigned threads) {
    const IncrementSampler inc(psi, dt);
    const auto steps = static_cast<std::uint64_t>(std::ceil(T / dt - 1e-9));
    std::vector<double> out(n, 0.0);
    parallel_for_paths(n, threads, [&](std::size_t p) {
        const CounterRng rng(seed, p);
        double x = 0.0;
        for (std::uint64_t k = 0; k < steps; ++k) x += inc(rng, k);
        out[p] = x;
    });
    return out;
}

Observable make_observable(const std::string& name) {
    if (name == "sgn_min1")
        return {name, [](double x) {
                    const double s = (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
                    return s * std::min(std::abs(x), 1.0);
                }};
    if (name == "abs_min1")
        return {name, [](double x) { return std::min(std::abs(x), 1.0); }};
    if (name == "indicator1")
        return {name, [](double x) { return std::abs(x) >= 1.0 ? 1.0 : 0.0; }};
    if (name == "constant") return {name, [](double) { return 1.0; }};
    throw std::invalid_argument("unknown observable: " + name);
}

DecayEstimate estimate_decay_rate(const PathEnsemble& ens, const Observable& obs, double mu_f,
                                  const DecayFitConfig& fit) {
    const std::size_t n_t = ens.times.size();
    const std::size_t n_p = ens.truncated.size();
    if (n_p < 2) throw std::invalid_argument("decay fit: need at least 2 paths");

    std::vector<double> mean(n_t, 0.0), se(n_t, 0.0), m(n_t, 0.0);
    {
        std::vector<double> sum(n_t, 0.0), sumsq(n_t, 0.0);
        for (std::size_t p = 0; p < n_p; ++p) {
            const double* row = &ens.values[p * n_t];
            for (std::size_t i = 0; i < n_t; ++i) {
                const double v = obs.f(row[i]);
                sum[i] += v;
                sumsq[i] += v * v;
            }
        }
        for (std::size_t i = 0; i < n_t; ++i) {
            mean[i] = sum[i] / static_cast<double>(n_p);
            const double var =
                std::max(0.0, (sumsq[i] - static_cast<double>(n_p) * mean[i] * mean[i]) /
                                  static_cast<double>(n_p - 1));
            se[i] = std::sqrt(var / static_cast<double>(n_p));
            m[i] = std::abs(mean[i] - mu_f);
        }
    }

    DecayEstimate est;
    est.observable = obs.name;
    est.mu_f = mu_f;
    est.mean_series.resize(n_t);
    for (std::size_t i = 0; i < n_t; ++i) est.mean_series[i] = {ens.times[i], mean[i], se[i]};

    // a point needs to clear both the sampling noise and an absolute floor;
    // the floor keeps quadrature error in mu_f (with se identically 0 for a
    // constant observable) from masquerading as signal
    const double floor_abs = 1e-9 * (1.0 + std::abs(mu_f));
    bool any_signal = false;
    for (std::size_t i = 0; i < n_t; ++i)
        if (m[i] > std::max(fit.noise_multiple * se[i], floor_abs)) any_signal = true;
    if (!any_signal || !(m[0] > floor_abs))
        throw NoSignalError("observable mean never rises above the noise floor");

    // fit window: wait out the initial transient, stop at the noise floor
    std::size_t i1 = 0;
    while (i1 < n_t && !(m[i1] < fit.start_fraction * m[0])) ++i1;
    std::size_t i2 = i1;
    while (i2 < n_t && !(m[i2] < fit.noise_multiple * se[i2])) ++i2;
    if (i2 == n_t) i2 = n_t - 1;
    if (i2 - i1 < 3) i1 = 0;
    if (i2 - i1 < 3) throw NoSignalError("decay window too short to fit");

    auto window_fit = [&](const std::vector<double>& mm, double* rms) -> double {
        std::vector<double> tx, ty;
        tx.reserve(i2 - i1);
        ty.reserve(i2 - i1);
        for (std::size_t i = i1; i < i2; ++i) {
            if (mm[i] > 0.0) {
                tx.push_back(ens.times[i]);
                ty.push_back(std::log(mm[i]));
            }
        }
        if (tx.size() < 3) throw NoSignalError("decay window collapsed during fit");
        const auto line = quad::fit_line(tx, ty);
        if (rms) {
            double s = 0.0;
            for (std::size_t j = 0; j < tx.size(); ++j) {
                const double r = ty[j] - (line.intercept + line.slope * tx[j]);
                s += r * r;
            }
            *rms = std::sqrt(s / static_cast<double>(tx.size()));
        }
        return -line.slope;
    };

    est.rate = window_fit(m, &est.residual_rms);
    est.window_t1 = ens.times[i1];
    est.window_t2 = ens.times[i2 - 1];
    est.window_points = i2 - i1;

    // bootstrap over paths, window held fixed
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(fit.bootstrap_replicates));
    std::vector<double> mb(n_t, 0.0);
    for (int b = 0; b < fit.bootstrap_replicates; ++b) {
        const CounterRng rng(fit.bootstrap_seed ^ ens.cfg.seed, static_cast<std::uint64_t>(b));
        std::vector<double> sum(n_t, 0.0);
        for (std::size_t j = 0; j < n_p; ++j) {
            const auto pick = static_cast<std::size_t>(
                rng.uniform(static_cast<std::uint64_t>(j), 0) * static_cast<double>(n_p));
            const double* row = &ens.values[std::min(pick, n_p - 1) * n_t];
            for (std::size_t i = i1; i < i2; ++i) sum[i] += obs.f(row[i]);
        }
        for (std::size_t i = i1; i < i2; ++i)
            mb[i] = std::abs(sum[i] / static_cast<double>(n_p) - mu_f);
        try {
            rates.push_back(window_fit(mb, nullptr));
        } catch (const NoSignalError&) {
            // replicate lost the window; skip it
        }
    }
    if (rates.size() >= 20) {
        std::sort(rates.begin(), rates.end());
        const auto lo = static_cast<std::size_t>(0.025 * static_cast<double>(rates.size()));
        const auto hi = std::min(rates.size() - 1,
                                 static_cast<std::size_t>(0.975 * static_cast<double>(rates.size())));
        est.ci_low = std::min(rates[lo], est.rate);
        est.ci_high = std::max(rates[hi], est.rate);
    } else {
        est.ci_low = est.ci_high = est.rate;
    }
    return est;
}

ReturnTimeEstimate estimate_return_time(const symbol::CharacteristicExponent& psi,
                                        const speed::SpeedFunction& sp, const SimConfig& cfg,
                                        double eps, double x0) {
    if (!(eps > 0.0)) throw std::invalid_argument("return time: need eps > 0");
    const double dt = cfg.step();
    const IncrementSampler inc(psi, dt);
    const auto max_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.base_cap_factor * cfg.T / dt));

    std::vector<double> hit(cfg.n_paths, std::numeric_limits<double>::quiet_NaN());
    parallel_for_paths(cfg.n_paths, cfg.threads, [&](std::size_t p) {
        const CounterRng rng(cfg.seed, p);
        double x = x0, A = 0.0;
        for (std::uint64_t k = 0; k < max_steps; ++k) {
            if (std::abs(x) <= eps) {
                hit[p] = A;
                return;
            }
            A += dt / sp(x);
            x += inc(rng, k);
        }
    });

    ReturnTimeEstimate est;
    est.eps = eps;
    est.x0 = x0;
    est.n_paths = cfg.n_paths;
    double sum = 0.0, sumsq = 0.0;
    std::size_t n_hit = 0;
    for (double h : hit) {
        if (std::isnan(h)) {
            ++est.n_censored;
        } else {
            sum += h;
            sumsq += h * h;
            ++n_hit;
        }
    }
    if (n_hit == 0) return est;  // fully censored; mean stays 0 with full censor count
    est.mean = sum / static_cast<double>(n_hit);
    if (n_hit > 1) {
        const double var = std::max(
            0.0, (sumsq - static_cast<double>(n_hit) * est.mean * est.mean) /
                     static_cast<double>(n_hit - 1));
        const double half = 1.96 * std::sqrt(var / static_cast<double>(n_hit));
        est.ci_low = est.mean - half;
        est.ci_high = est.mean + half;
    } else {
        est.ci_low = est.ci_high = est.mean;
    }
    return est;
}

}  // namespace levygap::sim
