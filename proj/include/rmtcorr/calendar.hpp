#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rmtcorr {

enum class Weekday { Monday = 0, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

// Calendar date stored as a serial day count (days since 1970-01-01).
// Arithmetic and ordering are therefore exact; month/day views are computed
// on demand from the proleptic Gregorian calendar.
class Date {
public:
    Date() : serial_(0) {}

    static Date from_ymd(int year, int month, int day);

    // Accepts strict ISO form "YYYY-MM-DD"; rejects impossible dates.
    static std::optional<Date> parse(std::string_view text);

    static Date from_serial(std::int64_t serial) {
        Date d;
        d.serial_ = serial;
        return d;
    }

    [[nodiscard]] std::int64_t serial() const { return serial_; }
    [[nodiscard]] int year() const;
    [[nodiscard]] int month() const;
    [[nodiscard]] int day() const;
    [[nodiscard]] Weekday weekday() const {
        // serial 0 is 1970-01-01, a Thursday.
        std::int64_t w = (serial_ + 3) % 7;
        if (w < 0) w += 7;
        return static_cast<Weekday>(w);
    }

    [[nodiscard]] std::string to_string() const;

    Date add_days(std::int64_t n) const { return from_serial(serial_ + n); }

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t serial_;
};

}  // namespace rmtcorr
