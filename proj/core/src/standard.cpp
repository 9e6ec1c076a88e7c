#include "esc/standard.hpp"

#include "esc/errors.hpp"

#include <cmath>
#include <set>

namespace esc {

EnergyMatrix::EnergyMatrix(std::vector<SourceSpec> sources,
                           std::map<std::string, CapacitySeries> series)
    : sources_(std::move(sources)), series_(std::move(series)) {
    std::set<std::string> seen;
    for (const auto& spec : sources_) {
        if (!seen.insert(spec.id).second)
            throw ValidationError("duplicate source id '" + spec.id + "'");
        if (!std::isfinite(spec.c_amu_per_gwy) || spec.c_amu_per_gwy < 0.0)
            throw ValidationError("source '" + spec.id +
                                  "': coefficient must be finite and >= 0");
        if (!spec.window.positive())
            throw ValidationError("source '" + spec.id + "': window must be positive");
        if (series_.find(spec.id) == series_.end())
            throw ValidationError("source '" + spec.id + "' has no capacity series");
    }
    for (const auto& [id, ignored] : series_)
        if (seen.find(id) == seen.end())
            throw ValidationError("capacity series '" + id + "' matches no source spec");
}

const CapacitySeries& EnergyMatrix::series_for(const std::string& id) const {
    auto it = series_.find(id);
    if (it == series_.end())
        throw ValidationError("unknown source id '" + id + "'");
    return it->second;
}

MonetarySnapshot money_supply(const EnergyMatrix& matrix, Timestamp t) {
    MonetarySnapshot snap{t, MoneyQuantity{0.0}, EnergyQuantity{0.0, EnergyUnit::GWy}, {}};
    snap.per_source.reserve(matrix.size());
    for (const auto& spec : matrix.sources()) {
        const double avg = matrix.series_for(spec.id).window_average(t, spec.window).magnitude;
        const double contribution = spec.c_amu_per_gwy * avg;
        snap.money.amu += contribution;
        snap.abundance.magnitude += avg;
        snap.per_source.push_back({spec.id, avg, contribution});
    }
    return snap;
}

EnergyQuantity total_abundance(const EnergyMatrix& matrix, Timestamp t) {
    EnergyQuantity total{0.0, EnergyUnit::GWy};
    for (const auto& spec : matrix.sources())
        total.magnitude += matrix.series_for(spec.id).window_average(t, spec.window).magnitude;
    return total;
}

GrowthAssessment growth_condition(const EnergyMatrix& matrix, Timestamp t,
                                  std::optional<Duration> step) {
    GrowthAssessment out{t, {}, 0.0, {}, {}, false};
    out.per_source_rate.reserve(matrix.size());

    // c_n * d<e_n>/dt per source, in spec order.
    std::vector<double> weighted;
    weighted.reserve(matrix.size());
    for (const auto& spec : matrix.sources()) {
        const Duration h = step.value_or(default_derivative_step(spec.window));
        const double rate =
            matrix.series_for(spec.id).derivative_of_average(t, spec.window, h);
        out.per_source_rate.push_back({spec.id, rate});
        weighted.push_back(spec.c_amu_per_gwy * rate);
        out.money_rate_amu_per_year += weighted.back();
    }

    const auto specs = matrix.sources();
    for (std::size_t m = 0; m < weighted.size(); ++m) {
        if (out.per_source_rate[m].gwy_per_year >= 0.0) continue;
        out.declining.push_back(specs[m].id);
        double lhs = 0.0;
        for (std::size_t s = 0; s < weighted.size(); ++s)
            if (s != m) lhs += weighted[s];
        const double rhs = -weighted[m];
        out.compensation.push_back({specs[m].id, lhs, rhs, lhs > rhs});
    }
    out.overall_growth = out.money_rate_amu_per_year > 0.0;
    return out;
}

} // namespace esc
