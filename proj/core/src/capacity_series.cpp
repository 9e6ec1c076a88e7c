#include "esc/capacity_series.hpp"

#include "esc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace esc {

namespace {

std::string span_text(Timestamp a, Timestamp b) {
    return "[" + format_timestamp(a) + ", " + format_timestamp(b) + "]";
}

} // namespace

CapacitySeries::CapacitySeries(std::string source_id, std::vector<CapacitySample> samples)
    : id_(std::move(source_id)), samples_(std::move(samples)) {
    if (samples_.empty())
        throw ValidationError("series '" + id_ + "': no samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        auto& s = samples_[i];
        const std::string row = std::to_string(i + 1);
        if (!std::isfinite(s.capacity.magnitude))
            throw ValidationError("series '" + id_ + "': non-finite capacity at row " + row);
        if (s.capacity.magnitude < 0.0)
            throw ValidationError("series '" + id_ + "': negative capacity at row " + row);
        if (i > 0 && s.t <= samples_[i - 1].t)
            throw ValidationError("series '" + id_ + "': non-increasing timestamp at row " + row);
        s.capacity = convert(s.capacity, EnergyUnit::GWy);
    }
}

// Last sample with timestamp <= t. Caller guarantees t is inside the span.
const CapacitySample& CapacitySeries::sample_before(Timestamp t) const noexcept {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](Timestamp lhs, const CapacitySample& s) { return lhs < s.t; });
    return *std::prev(it);
}

// Interpolation uses only timestamp differences, never absolute values,
// so translating a series in time reproduces results bit for bit.
double CapacitySeries::interpolate(Timestamp t) const noexcept {
    const CapacitySample& lo = sample_before(t);
    if (lo.t == t) return lo.capacity.magnitude;
    const CapacitySample& hi = *(&lo + 1);
    const double frac = static_cast<double>((t - lo.t).seconds) /
                        static_cast<double>((hi.t - lo.t).seconds);
    return lo.capacity.magnitude + (hi.capacity.magnitude - lo.capacity.magnitude) * frac;
}

EnergyQuantity CapacitySeries::value_at(Timestamp t) const {
    if (t < first_time() || t > last_time())
        throw RangeError("series '" + id_ + "': " + format_timestamp(t) +
                         " outside sampled span " + span_text(first_time(), last_time()));
    return {interpolate(t), EnergyUnit::GWy};
}

EnergyQuantity CapacitySeries::window_average(Timestamp end, Duration window) const {
    if (!window.positive())
        throw ValidationError("series '" + id_ + "': window must be positive");
    const Timestamp begin = end - window;
    if (begin < first_time() || end > last_time())
        throw RangeError("series '" + id_ + "': window " + span_text(begin, end) +
                         " not covered by samples " + span_text(first_time(), last_time()));

    // Exact trapezoid over every interpolant breakpoint inside the window.
    double integral = 0.0;
    Timestamp t0 = begin;
    double v0 = interpolate(begin);
    auto it = std::upper_bound(samples_.begin(), samples_.end(), begin,
                               [](Timestamp lhs, const CapacitySample& s) { return lhs < s.t; });
    for (; it != samples_.end() && it->t < end; ++it) {
        integral += 0.5 * (v0 + it->capacity.magnitude) *
                    static_cast<double>((it->t - t0).seconds);
        t0 = it->t;
        v0 = it->capacity.magnitude;
    }
    const double v1 = interpolate(end);
    integral += 0.5 * (v0 + v1) * static_cast<double>((end - t0).seconds);
    return {integral / static_cast<double>(window.seconds), EnergyUnit::GWy};
}

double CapacitySeries::derivative_of_average(Timestamp t, Duration window, Duration step) const {
    if (!step.positive())
        throw ValidationError("series '" + id_ + "': derivative step must be positive");
    if (!window.positive())
        throw ValidationError("series '" + id_ + "': window must be positive");
    const Timestamp left = t - step;
    const Timestamp right = t + step;
    if (!covers(left - window, left))
        throw RangeError("series '" + id_ + "': left stencil point " + format_timestamp(left) +
                         " needs window " + span_text(left - window, left) +
                         " but samples cover " + span_text(first_time(), last_time()));
    if (!covers(right - window, right))
        throw RangeError("series '" + id_ + "': right stencil point " + format_timestamp(right) +
                         " needs window " + span_text(right - window, right) +
                         " but samples cover " + span_text(first_time(), last_time()));
    const double plus = window_average(right, window).magnitude;
    const double minus = window_average(left, window).magnitude;
    return (plus - minus) / (2.0 * step.years());
}

Duration default_derivative_step(Duration window) noexcept {
    return {std::max<std::int64_t>(1, window.seconds / 20)};
}

} // namespace esc
