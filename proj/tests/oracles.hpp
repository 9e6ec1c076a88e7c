#pragma once

// Independent reference computations for the numerical tests. These work
// on raw (seconds, value) pairs and deliberately share no code with the
// library's interpolation or integration paths.

#include <cassert>
#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

using Polyline = std::vector<std::pair<double, double>>; // (t seconds, value)

inline double polyline_value(const Polyline& pts, double t) {
    assert(!pts.empty());
    assert(t >= pts.front().first && t <= pts.back().first);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (t <= pts[i].first) {
            const auto [t0, v0] = pts[i - 1];
            const auto [t1, v1] = pts[i];
            if (t0 == t1) return v1;
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return pts.back().second;
}

/// Trapezoid quadrature of the polyline at a fixed step (in seconds),
/// averaged over [end - window, end].
inline double polyline_window_average(const Polyline& pts, double end, double window,
                                      double step) {
    const double begin = end - window;
    double integral = 0.0;
    double prev_t = begin;
    double prev_v = polyline_value(pts, begin);
    for (double t = begin + step; t < end; t += step) {
        const double v = polyline_value(pts, t);
        integral += 0.5 * (prev_v + v) * (t - prev_t);
        prev_t = t;
        prev_v = v;
    }
    const double last_v = polyline_value(pts, end);
    integral += 0.5 * (prev_v + last_v) * (end - prev_t);
    return integral / window;
}

/// Closed-form mean of base + amplitude*sin(2*pi*t/period + phase) over
/// [end - window, end], times in seconds.
inline double sinusoid_window_average(double base, double amplitude, double period,
                                      double phase, double end, double window) {
    const double two_pi = 2.0 * std::acos(-1.0);
    const double a = end - window;
    const double antiderivative_a = -std::cos(two_pi * a / period + phase) * period / two_pi;
    const double antiderivative_b = -std::cos(two_pi * end / period + phase) * period / two_pi;
    return base + amplitude * (antiderivative_b - antiderivative_a) / window;
}

} // namespace oracle
