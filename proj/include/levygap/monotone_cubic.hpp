#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace levygap {

/// Monotonicity-preserving piecewise cubic Hermite interpolant
/// (Fritsch-Carlson slope limiting). If the data are monotone the
/// interpolant is monotone on every interval; it never overshoots
/// the local data range either way.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw std::invalid_argument("MonotoneCubic: need >= 2 nodes, equal lengths");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("MonotoneCubic: nodes must be strictly increasing");

        std::vector<double> h(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            d[i] = (y_[i + 1] - y_[i]) / h[i];
        }

        m_.assign(n, 0.0);
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m_[i] = 0.0;  // local extremum in the data
            } else {
                // weighted harmonic mean of adjacent secants
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // limit endpoint slopes (three-point rule would also work; clamping
        // to 3x the secant is what keeps the interpolant monotone)
        for (std::size_t i : {std::size_t{0}, n - 1}) {
            const double sec = (i == 0) ? d[0] : d[n - 2];
            if (m_[i] * sec <= 0.0)
                m_[i] = 0.0;
            else if (std::abs(m_[i]) > 3.0 * std::abs(sec))
                m_[i] = 3.0 * sec;
        }
    }

    double operator()(double xq) const {
        const std::size_t i = locate(xq);
        const double h = x_[i + 1] - x_[i];
        const double t = (xq - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    }

    double derivative(double xq) const {
        const std::size_t i = locate(xq);
        const double h = x_[i + 1] - x_[i];
        const double t = (xq - x_[i]) / h;
        const double t2 = t * t;
        const double dh00 = (6 * t2 - 6 * t) / h;
        const double dh10 = 3 * t2 - 4 * t + 1;
        const double dh01 = (-6 * t2 + 6 * t) / h;
        const double dh11 = 3 * t2 - 2 * t;
        return dh00 * y_[i] + dh10 * m_[i] + dh01 * y_[i + 1] + dh11 * m_[i + 1];
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    const std::vector<double>& nodes_x() const { return x_; }
    const std::vector<double>& nodes_y() const { return y_; }

private:
    std::size_t locate(double xq) const {
        // clamp to the outermost intervals: callers handle extrapolation
        // policy themselves (tabulated symbols switch to a power tail)
        if (xq <= x_.front()) return 0;
        if (xq >= x_.back()) return x_.size() - 2;
        auto it = std::upper_bound(x_.begin(), x_.end(), xq);
        return static_cast<std::size_t>(it - x_.begin()) - 1;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace levygap
