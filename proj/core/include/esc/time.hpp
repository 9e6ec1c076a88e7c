#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace esc {

// Fixed year convention: 1 year = 365 days = 8760 hours. Every duration
// conversion in the library derives from these constants, so results are
// reproducible bit for bit across runs and platforms.
inline constexpr std::int64_t seconds_per_hour = 3600;
inline constexpr std::int64_t hours_per_year = 8760;
inline constexpr std::int64_t seconds_per_year = hours_per_year * seconds_per_hour;

/// A signed span of time with one-second resolution.
struct Duration {
    std::int64_t seconds = 0;

    static constexpr Duration from_seconds(std::int64_t s) noexcept { return {s}; }

    /// Nearest whole second to `years` under the 8760 h/year convention.
    /// Throws ValidationError for non-finite or absurdly large values.
    static Duration from_years(double years);

    constexpr double years() const noexcept {
        return static_cast<double>(seconds) / static_cast<double>(seconds_per_year);
    }
    constexpr bool positive() const noexcept { return seconds > 0; }

    auto operator<=>(const Duration&) const = default;
};

/// A point in time: seconds since 1970-01-01T00:00:00Z.
struct Timestamp {
    std::int64_t seconds_utc = 0;

    auto operator<=>(const Timestamp&) const = default;
};

constexpr Timestamp operator+(Timestamp t, Duration d) noexcept {
    return {t.seconds_utc + d.seconds};
}
constexpr Timestamp operator-(Timestamp t, Duration d) noexcept {
    return {t.seconds_utc - d.seconds};
}
constexpr Duration operator-(Timestamp a, Timestamp b) noexcept {
    return {a.seconds_utc - b.seconds_utc};
}
constexpr Duration operator+(Duration a, Duration b) noexcept { return {a.seconds + b.seconds}; }
constexpr Duration operator-(Duration a, Duration b) noexcept { return {a.seconds - b.seconds}; }
constexpr Duration operator*(Duration d, std::int64_t k) noexcept { return {d.seconds * k}; }
constexpr Duration operator*(std::int64_t k, Duration d) noexcept { return {d.seconds * k}; }

/// Parses a strict `YYYY-MM-DDThh:mm:ssZ` UTC timestamp (proleptic
/// Gregorian calendar, years 0000-9999). Anything else, including local
/// times and numeric offsets, is rejected with a ParseError.
Timestamp parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDThh:mm:ssZ`. Inverse of parse_timestamp.
std::string format_timestamp(Timestamp t);

} // namespace esc
