#include "esc/scenario.hpp"

#include "esc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>

namespace esc {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// j-th raw draw of the (seed, id) stream; random access by construction.
std::uint64_t stream_draw(std::uint64_t state0, std::uint64_t j) noexcept {
    return splitmix64(state0 + (j + 1) * golden_gamma);
}

double to_unit_half_open(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1p-53; }
double to_unit_open_at_zero(std::uint64_t x) noexcept {
    return static_cast<double>((x >> 11) + 1) * 0x1p-53; // (0, 1], keeps log() finite
}

void validate_profile(const SeasonalProfile& p, const std::string& id) {
    const auto bad = [&](const std::string& field, const std::string& why) {
        throw ValidationError("profile for '" + id + "': " + field + " " + why);
    };
    if (!std::isfinite(p.base_gwy) || p.base_gwy < 0.0) bad("base_gwy", "must be finite and >= 0");
    if (!std::isfinite(p.trend_gwy_per_year)) bad("trend_gwy_per_year", "must be finite");
    if (!std::isfinite(p.amplitude_gwy) || p.amplitude_gwy < 0.0)
        bad("amplitude_gwy", "must be finite and >= 0");
    if (p.amplitude_gwy > p.base_gwy) bad("amplitude_gwy", "must not exceed base_gwy");
    if (p.amplitude_gwy > 0.0 && !p.period.positive())
        bad("period", "must be positive when amplitude_gwy > 0");
    if (!std::isfinite(p.phase_rad)) bad("phase_rad", "must be finite");
    if (!std::isfinite(p.noise_sigma_gwy) || p.noise_sigma_gwy < 0.0)
        bad("noise_sigma_gwy", "must be finite and >= 0");
}

} // namespace

double profile_noise(std::uint64_t seed, std::string_view source_id, std::uint64_t sample_index) {
    const std::uint64_t state0 = seed ^ fnv1a64(source_id);
    const double u1 = to_unit_open_at_zero(stream_draw(state0, 2 * sample_index));
    const double u2 = to_unit_half_open(stream_draw(state0, 2 * sample_index + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CapacitySeries generate_series(const SeasonalProfile& profile, std::string source_id,
                               Timestamp start, Duration span, Duration sample_step) {
    validate_profile(profile, source_id);
    if (!sample_step.positive())
        throw ValidationError("series '" + source_id + "': sample_step must be positive");
    if (span < sample_step)
        throw ValidationError("series '" + source_id + "': span must be >= sample_step");

    const std::int64_t count = span.seconds / sample_step.seconds;
    std::vector<CapacitySample> samples;
    samples.reserve(static_cast<std::size_t>(count) + 1);
    for (std::int64_t k = 0; k <= count; ++k) {
        const Duration offset = sample_step * k;
        const double dt_years = offset.years();
        double value = profile.base_gwy + profile.trend_gwy_per_year * dt_years;
        if (profile.amplitude_gwy > 0.0) {
            const double cycles =
                static_cast<double>(offset.seconds) / static_cast<double>(profile.period.seconds);
            value += profile.amplitude_gwy *
                     std::sin(2.0 * std::numbers::pi * cycles + profile.phase_rad);
        }
        if (profile.noise_sigma_gwy > 0.0)
            value += profile.noise_sigma_gwy *
                     profile_noise(profile.seed, source_id, static_cast<std::uint64_t>(k));
        samples.push_back({start + offset, {std::max(0.0, value), EnergyUnit::GWy}});
    }
    return {std::move(source_id), std::move(samples)};
}

EnergyMatrix apply_event(const EnergyMatrix& matrix, const MatrixEvent& event,
                         const CapacitySeries* commissioned_series) {
    std::vector<SourceSpec> specs(matrix.sources().begin(), matrix.sources().end());
    std::map<std::string, CapacitySeries> series;
    for (const auto& spec : specs) series.emplace(spec.id, matrix.series_for(spec.id));

    if (const auto* commission = std::get_if<CommissionAction>(&event.action)) {
        const std::string& id = commission->spec.id;
        if (series.count(id))
            throw ValidationError("commission of duplicate source id '" + id + "'");
        if (commissioned_series == nullptr)
            throw ValidationError("commission of '" + id + "' requires a generated series");
        if (commissioned_series->source_id() != id)
            throw ValidationError("commissioned series is for '" +
                                  commissioned_series->source_id() + "', expected '" + id + "'");
        specs.push_back(commission->spec);
        series.emplace(id, *commissioned_series);
    } else if (const auto* retire = std::get_if<RetireAction>(&event.action)) {
        const auto it = std::find_if(specs.begin(), specs.end(), [&](const SourceSpec& s) {
            return s.id == retire->source_id;
        });
        if (it == specs.end())
            throw ValidationError("retire of unknown source id '" + retire->source_id + "'");
        series.erase(it->id);
        specs.erase(it);
    } else {
        const auto& set_c = std::get<SetCoefficientAction>(event.action);
        const auto it = std::find_if(specs.begin(), specs.end(), [&](const SourceSpec& s) {
            return s.id == set_c.source_id;
        });
        if (it == specs.end())
            throw ValidationError("set-coefficient of unknown source id '" + set_c.source_id +
                                  "'");
        it->c_amu_per_gwy = set_c.new_c_amu_per_gwy;
    }
    return {std::move(specs), std::move(series)};
}

namespace {

struct SimulationPlan {
    Timestamp end;                                           // start + horizon
    std::unordered_map<std::string, CapacitySeries> series;  // whole-life data per id
    std::unordered_map<std::string, Duration> step_for;      // resolved derivative step
    std::set<std::string> initial_ids;
    std::vector<Timestamp> event_times;                      // sorted, may repeat
};

void validate_scenario(const Scenario& sc) {
    if (!sc.horizon.positive()) throw ValidationError("scenario: horizon must be positive");
    if (!sc.eval_step.positive() || sc.eval_step > sc.horizon)
        throw ValidationError("scenario: eval_step must satisfy 0 < eval_step <= horizon");
    if (!sc.sample_step.positive() || sc.sample_step > sc.eval_step)
        throw ValidationError("scenario: sample_step must satisfy 0 < sample_step <= eval_step");
    if (sc.derivative_step && !sc.derivative_step->positive())
        throw ValidationError("scenario: derivative_step must be positive");
    const Timestamp end = sc.start + sc.horizon;
    Timestamp prev = sc.start;
    for (const auto& ev : sc.events) {
        if (ev.at < sc.start || ev.at > end)
            throw ValidationError("scenario: event at " + format_timestamp(ev.at) +
                                  " outside [start, start+horizon]");
        if (ev.at < prev) throw ValidationError("scenario: events not sorted by time");
        prev = ev.at;
    }
}

// Span from `from` to at least `to`, rounded up to whole sample steps.
Duration span_covering(Timestamp from, Timestamp to, Duration step) {
    const std::int64_t raw = (to - from).seconds;
    const std::int64_t steps = (raw + step.seconds - 1) / step.seconds;
    return step * std::max<std::int64_t>(steps, 1);
}

SimulationPlan build_plan(const Scenario& sc) {
    SimulationPlan plan;
    plan.end = sc.start + sc.horizon;

    const auto resolve_step = [&](const SourceSpec& spec) {
        return sc.derivative_step.value_or(default_derivative_step(spec.window));
    };

    // Series must extend one derivative step past the horizon so the
    // growth stencil stays computable at the final evaluations.
    Duration pad{0};
    for (const auto& src : sc.initial) pad = std::max(pad, resolve_step(src.spec));
    for (const auto& ev : sc.events)
        if (const auto* c = std::get_if<CommissionAction>(&ev.action))
            pad = std::max(pad, resolve_step(c->spec));

    std::set<std::string> ids;
    for (const auto& src : sc.initial) {
        if (!ids.insert(src.spec.id).second)
            throw ValidationError("scenario: duplicate initial source id '" + src.spec.id + "'");
        plan.initial_ids.insert(src.spec.id);
        plan.step_for.emplace(src.spec.id, resolve_step(src.spec));
        plan.series.emplace(src.spec.id,
                            generate_series(src.profile, src.spec.id, sc.start,
                                            span_covering(sc.start, plan.end + pad, sc.sample_step),
                                            sc.sample_step));
    }
    std::set<std::string> live = ids;
    for (const auto& ev : sc.events) {
        plan.event_times.push_back(ev.at);
        if (const auto* c = std::get_if<CommissionAction>(&ev.action)) {
            // Ids stay reserved after retirement; one series per id.
            if (!ids.insert(c->spec.id).second)
                throw ValidationError("scenario: commission of duplicate source id '" +
                                      c->spec.id + "'");
            live.insert(c->spec.id);
            plan.step_for.emplace(c->spec.id, resolve_step(c->spec));
            plan.series.emplace(c->spec.id,
                                generate_series(c->profile, c->spec.id, ev.at,
                                                span_covering(ev.at, plan.end + pad,
                                                              sc.sample_step),
                                                sc.sample_step));
        } else if (const auto* r = std::get_if<RetireAction>(&ev.action)) {
            if (!live.erase(r->source_id))
                throw ValidationError("scenario: retire of unknown source id '" + r->source_id +
                                      "'");
        } else {
            const auto& s = std::get<SetCoefficientAction>(ev.action);
            if (!live.count(s.source_id))
                throw ValidationError("scenario: set-coefficient of unknown source id '" +
                                      s.source_id + "'");
            if (!std::isfinite(s.new_c_amu_per_gwy) || s.new_c_amu_per_gwy < 0.0)
                throw ValidationError("scenario: new coefficient for '" + s.source_id +
                                      "' must be finite and >= 0");
        }
    }
    return plan;
}

// Applies an event to a plain spec list (series already exist in the plan).
void apply_to_specs(std::vector<SourceSpec>& specs, const MatrixEvent& ev) {
    if (const auto* c = std::get_if<CommissionAction>(&ev.action)) {
        specs.push_back(c->spec);
    } else if (const auto* r = std::get_if<RetireAction>(&ev.action)) {
        std::erase_if(specs, [&](const SourceSpec& s) { return s.id == r->source_id; });
    } else {
        const auto& sc = std::get<SetCoefficientAction>(ev.action);
        for (auto& s : specs)
            if (s.id == sc.source_id) s.c_amu_per_gwy = sc.new_c_amu_per_gwy;
    }
}

} // namespace

SimulationResult simulate(const Scenario& scenario) {
    validate_scenario(scenario);
    SimulationPlan plan = build_plan(scenario);
    SimulationResult result;

    // Event-defined epochs, for the report and the stencil rule.
    std::vector<SourceSpec> specs;
    for (const auto& src : scenario.initial) specs.push_back(src.spec);
    {
        Timestamp from = scenario.start;
        std::size_t i = 0;
        while (i < scenario.events.size()) {
            const Timestamp at = scenario.events[i].at;
            if (at > from) {
                result.epochs.push_back({from, at, specs});
                from = at;
            }
            while (i < scenario.events.size() && scenario.events[i].at == at)
                apply_to_specs(specs, scenario.events[i++]);
        }
        result.epochs.push_back({from, plan.end, specs});
    }

    // Evaluation sweep. The matrix is rebuilt only when the set of
    // contributing sources changes.
    std::vector<SourceSpec> cached_specs;
    EnergyMatrix matrix;
    std::size_t epoch_idx = 0;
    for (std::int64_t k = 0;; ++k) {
        const Timestamp t = scenario.start + scenario.eval_step * k;
        if (t > plan.end) break;
        while (epoch_idx + 1 < result.epochs.size() && t >= result.epochs[epoch_idx + 1].from)
            ++epoch_idx;
        const EpochInfo& epoch = result.epochs[epoch_idx];

        bool skip = false;
        std::vector<SourceSpec> active;
        for (const auto& spec : epoch.sources) {
            const CapacitySeries& ser = plan.series.at(spec.id);
            const bool window_ok = ser.covers(t - spec.window, t);
            if (!window_ok) {
                if (plan.initial_ids.count(spec.id)) {
                    skip = true; // startup: history not yet long enough
                    break;
                }
                continue; // commissioned source still filling its window
            }
            active.push_back(spec);
        }
        if (!skip) {
            for (const auto& spec : active) {
                const Duration h = plan.step_for.at(spec.id);
                const CapacitySeries& ser = plan.series.at(spec.id);
                if (!ser.covers(t - h - spec.window, t + h)) {
                    skip = true;
                    break;
                }
            }
        }
        if (skip) {
            result.skipped.push_back(t);
            continue;
        }

        if (active != cached_specs) {
            std::map<std::string, CapacitySeries> series;
            for (const auto& spec : active) series.emplace(spec.id, plan.series.at(spec.id));
            matrix = EnergyMatrix(active, std::move(series));
            cached_specs = active;
        }

        result.snapshots.push_back(money_supply(matrix, t));

        // The stencil must not straddle an event boundary: the instant of
        // an event already belongs to the post-event epoch, so t-h may
        // touch the epoch start but t+h must stay short of the next event.
        bool crosses = false;
        for (const auto& spec : active) {
            const Duration h = plan.step_for.at(spec.id);
            const auto prev = std::partition_point(
                plan.event_times.begin(), plan.event_times.end(),
                [&](Timestamp at) { return at <= t; });
            if (prev != plan.event_times.begin() && t - h < *std::prev(prev)) crosses = true;
            if (prev != plan.event_times.end() && !(t + h < *prev)) crosses = true;
            if (crosses) break;
        }
        if (crosses) {
            result.assessments.emplace_back();
            continue;
        }

        GrowthAssessment assessment = growth_condition(matrix, t, scenario.derivative_step);
        Violation violation{t, {}};
        for (const auto& entry : assessment.compensation)
            if (!entry.satisfied) violation.source_ids.push_back(entry.source_id);
        if (!violation.source_ids.empty()) result.violations.push_back(std::move(violation));
        result.assessments.push_back(std::move(assessment));
    }
    return result;
}

} // namespace esc
