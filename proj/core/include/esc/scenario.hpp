#pragma once

#include "esc/standard.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace esc {

/// Parametric capacity profile, in GWy:
///
///   e(t) = max(0, base + trend*dt_years
///                 + amplitude*sin(2*pi*dt/period + phase)
///                 + noise_sigma*z(seed, source_id, k))
///
/// where dt is the offset from the series start and k the sample index.
/// z is the deterministic standard-normal stream from profile_noise(),
/// so identical inputs generate bit-identical series.
struct SeasonalProfile {
    double base_gwy = 0.0;
    double trend_gwy_per_year = 0.0;
    double amplitude_gwy = 0.0;
    Duration period{};
    double phase_rad = 0.0;
    double noise_sigma_gwy = 0.0;
    std::uint64_t seed = 0;
};

/// The k-th standard-normal draw of the stream identified by
/// (seed, source_id). The stream is fixed by definition, not platform:
/// a splitmix64 counter sequence seeded with seed xor FNV-1a(source_id),
/// two draws mapped through Box-Muller per normal deviate. Integer
/// outputs are bit-exact everywhere; the floating mapping agrees across
/// conforming platforms to about 1e-12.
double profile_noise(std::uint64_t seed, std::string_view source_id, std::uint64_t sample_index);

struct CommissionAction {
    SourceSpec spec;
    SeasonalProfile profile;
};
struct RetireAction {
    std::string source_id;
};
struct SetCoefficientAction {
    std::string source_id;
    double new_c_amu_per_gwy = 0.0;
};

/// A discrete change to the energy matrix, effective exactly at `at`
/// (an evaluation at the event timestamp sees the post-event matrix).
struct MatrixEvent {
    Timestamp at;
    std::variant<CommissionAction, RetireAction, SetCoefficientAction> action;
};

struct ScenarioSource {
    SourceSpec spec;
    SeasonalProfile profile;
};

struct Scenario {
    Timestamp start;
    Duration horizon{};
    Duration eval_step{};
    Duration sample_step{};
    std::vector<ScenarioSource> initial;
    std::vector<MatrixEvent> events; // ordered by `at`, within [start, start+horizon]
    /// Central-difference half-step; absent = per-source window/20.
    std::optional<Duration> derivative_step;
};

/// A maximal interval with a constant matrix. `to` of the last epoch is
/// the horizon end.
struct EpochInfo {
    Timestamp from;
    Timestamp to;
    std::vector<SourceSpec> sources;
};

struct Violation {
    Timestamp t;
    std::vector<std::string> source_ids; // declining sources left uncompensated
};

/// Sweep output. snapshots and assessments are parallel: an assessment is
/// absent where the derivative stencil would straddle an event boundary.
/// skipped lists the evaluation timestamps dropped because some active
/// source lacked window or stencil history.
struct SimulationResult {
    std::vector<MonetarySnapshot> snapshots;
    std::vector<std::optional<GrowthAssessment>> assessments;
    std::vector<Timestamp> skipped;
    std::vector<Violation> violations;
    std::vector<EpochInfo> epochs;
};

/// Samples a profile at start + k*sample_step for every k with
/// k*sample_step <= span. Validation errors name the offending field.
CapacitySeries generate_series(const SeasonalProfile& profile, std::string source_id,
                               Timestamp start, Duration span, Duration sample_step);

/// Returns a copy of `matrix` with the event applied; the input is left
/// untouched. Commissioning needs the new source's generated series.
EnergyMatrix apply_event(const EnergyMatrix& matrix, const MatrixEvent& event,
                         const CapacitySeries* commissioned_series = nullptr);

/// Evaluates money supply and the growth condition over the horizon at
/// start + k*eval_step. Deterministic: equal scenarios (seeds included)
/// produce identical results. Commissioned sources join the evaluated
/// matrix once their trailing window is covered by their own samples.
SimulationResult simulate(const Scenario& scenario);

} // namespace esc
