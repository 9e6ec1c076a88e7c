#pragma once

#include "esc/time.hpp"
#include "esc/units.hpp"

#include <string>
#include <vector>

namespace esc {

/// One observation of a source's annualized supply capacity.
struct CapacitySample {
    Timestamp t;
    EnergyQuantity capacity;
};

/// A source's supply-capacity history. Samples are converted to GWy on
/// construction and interpolated linearly in between; queries outside the
/// sampled span are refused rather than extrapolated. Instances are
/// immutable, so all operations are safe to call concurrently.
class CapacitySeries {
public:
    /// Validates and canonicalizes: at least one sample, strictly
    /// increasing timestamps, finite non-negative capacities, everything
    /// converted to GWy. Errors name the offending 1-based row.
    CapacitySeries(std::string source_id, std::vector<CapacitySample> samples);

    const std::string& source_id() const noexcept { return id_; }
    const std::vector<CapacitySample>& samples() const noexcept { return samples_; }
    Timestamp first_time() const noexcept { return samples_.front().t; }
    Timestamp last_time() const noexcept { return samples_.back().t; }

    /// True when [from, to] lies inside the sampled span.
    bool covers(Timestamp from, Timestamp to) const noexcept {
        return first_time() <= from && to <= last_time();
    }

    /// Piecewise-linear interpolation; exact sample values at sample
    /// timestamps. Throws RangeError outside the span.
    EnergyQuantity value_at(Timestamp t) const;

    /// Trailing-window mean (1/W) * integral of the interpolant over
    /// [end - window, end]. The integral is the exact trapezoid over
    /// segment breakpoints plus the two partial end segments. Throws
    /// RangeError when the window reaches outside the span (a
    /// single-sample series therefore never has a computable average).
    EnergyQuantity window_average(Timestamp end, Duration window) const;

    /// Central difference of the trailing-window mean, in GWy per year:
    /// (A(t+step) - A(t-step)) / (2*step). Errors say which side of the
    /// stencil lacks data.
    double derivative_of_average(Timestamp t, Duration window, Duration step) const;

private:
    const CapacitySample& sample_before(Timestamp t) const noexcept;
    double interpolate(Timestamp t) const noexcept;

    std::string id_;
    std::vector<CapacitySample> samples_;
};

/// Default finite-difference step: window/20, floored at one second.
Duration default_derivative_step(Duration window) noexcept;

} // namespace esc
