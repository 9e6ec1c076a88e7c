#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace esc {

/// Energy units understood by the standard. GWy and TWy (gigawatt-year,
/// terawatt-year) follow the fixed 8760 h/year convention from time.hpp.
enum class EnergyUnit { kWh, MWh, GWh, TWh, GWy, TWy };

inline constexpr std::array<EnergyUnit, 6> all_energy_units = {
    EnergyUnit::kWh, EnergyUnit::MWh, EnergyUnit::GWh,
    EnergyUnit::TWh, EnergyUnit::GWy, EnergyUnit::TWy,
};

/// Canonical tag as it appears in CSV headers and CLI arguments.
std::string_view unit_tag(EnergyUnit u) noexcept;

/// Case-sensitive inverse of unit_tag. Throws ParseError for unknown tags.
EnergyUnit parse_unit(std::string_view tag);

/// kWh represented by one `u`, exact (1 GWy = 8'760'000'000 kWh).
std::int64_t kwh_per(EnergyUnit u) noexcept;

/// Conversion factor from -> to as an exact integer ratio in lowest terms.
std::pair<std::int64_t, std::int64_t> conversion_ratio(EnergyUnit from, EnergyUnit to) noexcept;

/// An amount of energy tagged with its unit.
struct EnergyQuantity {
    double magnitude = 0.0;
    EnergyUnit unit = EnergyUnit::GWy;

    bool operator==(const EnergyQuantity&) const = default;
};

/// Money in the standard's arbitrary monetary unit. The unit has no
/// subdivision; the tag is fixed to "a.m.u.".
struct MoneyQuantity {
    double amu = 0.0;

    bool operator==(const MoneyQuantity&) const = default;
};

inline constexpr std::string_view money_unit_tag = "a.m.u.";

/// Converts `q` to `target`. The factor is the reduced integer ratio
/// rounded once, and a single multiplication is applied, so chains of
/// conversions do not accumulate per-step drift.
EnergyQuantity convert(EnergyQuantity q, EnergyUnit target) noexcept;

/// Parses `<decimal><whitespace?><unit-tag>`, e.g. "1 GWy" or "8760GWh".
/// Unit tags are case-sensitive. Throws ParseError naming the bad token.
EnergyQuantity parse_quantity(std::string_view text);

/// Shortest decimal form that parses back to exactly the same quantity.
std::string format_quantity(EnergyQuantity q);

} // namespace esc
