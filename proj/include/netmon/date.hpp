#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace netmon {

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD; returns nullopt on anything else, including invalid days.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

struct DateRange {
    Date first;
    Date last;
    bool contains(const Date& d) const { return first <= d && d <= last; }
};

// "YYYY-MM-DD:YYYY-MM-DD", inclusive on both ends.
std::optional<DateRange> parse_date_range(std::string_view text);

}  // namespace netmon
