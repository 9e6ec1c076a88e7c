#include "esc/time.hpp"

#include "esc/errors.hpp"

#include <cmath>
#include <cstdio>

namespace esc {

namespace {

constexpr std::int64_t seconds_per_day = 86400;

// Days since 1970-01-01 of a proleptic Gregorian date (Howard Hinnant's
// days_from_civil algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool is_leap(std::int64_t y) noexcept {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

unsigned days_in_month(std::int64_t y, unsigned m) noexcept {
    static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

bool all_digits(std::string_view s) noexcept {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return !s.empty();
}

unsigned to_number(std::string_view s) noexcept {
    unsigned v = 0;
    for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
    return v;
}

} // namespace

Duration Duration::from_years(double years) {
    if (!std::isfinite(years))
        throw ValidationError("duration in years must be finite");
    const double secs = years * static_cast<double>(seconds_per_year);
    if (std::fabs(secs) > 9.0e18)
        throw ValidationError("duration out of representable range");
    return {std::llround(secs)};
}

Timestamp parse_timestamp(std::string_view text) {
    // Exactly YYYY-MM-DDThh:mm:ssZ.
    const auto fail = [&](const char* why) -> Timestamp {
        throw ParseError("invalid timestamp '" + std::string(text) + "': " + why);
    };
    if (text.size() != 20) return fail("expected YYYY-MM-DDThh:mm:ssZ");
    if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':' || text[19] != 'Z')
        return fail("expected YYYY-MM-DDThh:mm:ssZ (UTC, trailing Z)");
    const std::string_view ys = text.substr(0, 4), mos = text.substr(5, 2),
                           ds = text.substr(8, 2), hs = text.substr(11, 2),
                           mis = text.substr(14, 2), ss = text.substr(17, 2);
    for (auto part : {ys, mos, ds, hs, mis, ss})
        if (!all_digits(part)) return fail("non-digit in date/time field");
    const std::int64_t year = to_number(ys);
    const unsigned month = to_number(mos), day = to_number(ds);
    const unsigned hour = to_number(hs), minute = to_number(mis), second = to_number(ss);
    if (month < 1 || month > 12) return fail("month out of range");
    if (day < 1 || day > days_in_month(year, month)) return fail("day out of range");
    if (hour > 23) return fail("hour out of range");
    if (minute > 59) return fail("minute out of range");
    if (second > 59) return fail("second out of range");
    const std::int64_t days = days_from_civil(year, month, day);
    return {days * seconds_per_day +
            static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second};
}

std::string format_timestamp(Timestamp t) {
    std::int64_t days = t.seconds_utc / seconds_per_day;
    std::int64_t sod = t.seconds_utc % seconds_per_day;
    if (sod < 0) {
        sod += seconds_per_day;
        days -= 1;
    }
    std::int64_t year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);
    if (year < 0 || year > 9999)
        throw RangeError("timestamp outside formattable years 0000-9999");
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(year), month, day,
                  static_cast<long long>(sod / 3600),
                  static_cast<long long>(sod / 60 % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

} // namespace esc
