#include "esc/units.hpp"

#include "esc/errors.hpp"
#include "esc/time.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace esc {

namespace {

struct UnitInfo {
    EnergyUnit unit;
    std::string_view tag;
    std::int64_t kwh;
};

constexpr std::array<UnitInfo, 6> unit_table{{
    {EnergyUnit::kWh, "kWh", 1},
    {EnergyUnit::MWh, "MWh", 1'000},
    {EnergyUnit::GWh, "GWh", 1'000'000},
    {EnergyUnit::TWh, "TWh", 1'000'000'000},
    {EnergyUnit::GWy, "GWy", hours_per_year * 1'000'000},
    {EnergyUnit::TWy, "TWy", hours_per_year * 1'000'000'000},
}};

const UnitInfo& info(EnergyUnit u) noexcept {
    return unit_table[static_cast<std::size_t>(u)];
}

} // namespace

std::string_view unit_tag(EnergyUnit u) noexcept { return info(u).tag; }

std::int64_t kwh_per(EnergyUnit u) noexcept { return info(u).kwh; }

EnergyUnit parse_unit(std::string_view tag) {
    for (const auto& e : unit_table)
        if (e.tag == tag) return e.unit;
    throw ParseError("unknown unit tag '" + std::string(tag) + "'");
}

std::pair<std::int64_t, std::int64_t> conversion_ratio(EnergyUnit from, EnergyUnit to) noexcept {
    std::int64_t num = kwh_per(from);
    std::int64_t den = kwh_per(to);
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

EnergyQuantity convert(EnergyQuantity q, EnergyUnit target) noexcept {
    if (q.unit == target) return q;
    const auto [num, den] = conversion_ratio(q.unit, target);
    // num and den are < 2^53, so the quotient is correctly rounded.
    const double factor = static_cast<double>(num) / static_cast<double>(den);
    return {q.magnitude * factor, target};
}

EnergyQuantity parse_quantity(std::string_view text) {
    double magnitude = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [num_end, ec] = std::from_chars(begin, end, magnitude);
    if (ec != std::errc{} || num_end == begin)
        throw ParseError("malformed number in quantity '" + std::string(text) + "'");
    if (!std::isfinite(magnitude))
        throw ParseError("non-finite number in quantity '" + std::string(text) + "'");
    std::string_view rest = text.substr(static_cast<std::size_t>(num_end - begin));
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    if (rest.empty())
        throw ParseError("missing unit tag in quantity '" + std::string(text) + "'");
    return {magnitude, parse_unit(rest)};
}

std::string format_quantity(EnergyQuantity q) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, q.magnitude);
    std::string out(buf, res.ptr);
    out += ' ';
    out += unit_tag(q.unit);
    return out;
}

} // namespace esc
