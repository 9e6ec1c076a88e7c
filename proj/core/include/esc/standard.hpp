#pragma once

#include "esc/capacity_series.hpp"
#include "esc/time.hpp"
#include "esc/units.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esc {

/// One energy source backing the currency: its conversion coefficient c
/// (a.m.u. per GWy) and its seasonality-absorbing averaging window.
struct SourceSpec {
    std::string id;
    std::string label;
    double c_amu_per_gwy = 0.0;
    Duration window{};

    bool operator==(const SourceSpec&) const = default;
};

/// The energy matrix: the set of sources with their capacity histories.
/// Construction enforces a one-to-one pairing of specs and series, unique
/// ids, finite non-negative coefficients and positive windows. Immutable
/// after construction; evaluation order follows the spec order.
class EnergyMatrix {
public:
    EnergyMatrix() = default;
    EnergyMatrix(std::vector<SourceSpec> sources, std::map<std::string, CapacitySeries> series);

    std::span<const SourceSpec> sources() const noexcept { return sources_; }
    const CapacitySeries& series_for(const std::string& id) const;
    bool empty() const noexcept { return sources_.empty(); }
    std::size_t size() const noexcept { return sources_.size(); }

private:
    std::vector<SourceSpec> sources_;
    std::map<std::string, CapacitySeries> series_;
};

struct SourceContribution {
    std::string source_id;
    double average_gwy = 0.0;      // windowed capacity average
    double contribution_amu = 0.0; // c * average
};

/// Represented money and total abundance at one instant, with the
/// per-source breakdown that sums to both.
struct MonetarySnapshot {
    Timestamp t;
    MoneyQuantity money;
    EnergyQuantity abundance; // GWy, independent of the coefficients
    std::vector<SourceContribution> per_source;
};

struct SourceRate {
    std::string source_id;
    double gwy_per_year = 0.0;
};

/// Compensation check for one declining source m: the other sources'
/// combined money-weighted growth (lhs) must strictly exceed the money
/// drained by m (rhs = -c_m * d<e_m>/dt).
struct CompensationEntry {
    std::string source_id;
    double lhs_amu_per_year = 0.0;
    double rhs_amu_per_year = 0.0;
    bool satisfied = false;
};

struct GrowthAssessment {
    Timestamp t;
    std::vector<SourceRate> per_source_rate;
    double money_rate_amu_per_year = 0.0; // dM/dt
    std::vector<std::string> declining;
    std::vector<CompensationEntry> compensation; // one entry per declining source
    bool overall_growth = false;                 // dM/dt > 0, strict
};

/// Total represented money M = sum of c_n * <e_n>_{window_n} at t, with
/// per-source breakdown and the abundance. Any source whose window is not
/// covered fails the whole evaluation; there are no partial snapshots.
MonetarySnapshot money_supply(const EnergyMatrix& matrix, Timestamp t);

/// Total abundance A = sum of <e_n>_{window_n} at t. No coefficients.
EnergyQuantity total_abundance(const EnergyMatrix& matrix, Timestamp t);

/// Per-source capacity-average derivatives and the monetary growth
/// verdicts at t. `step` is the central-difference half-step; when absent
/// each source uses its own window/20. Both the compensation inequalities
/// and overall growth use strict comparisons: ties do not satisfy.
GrowthAssessment growth_condition(const EnergyMatrix& matrix, Timestamp t,
                                  std::optional<Duration> step = std::nullopt);

} // namespace esc
