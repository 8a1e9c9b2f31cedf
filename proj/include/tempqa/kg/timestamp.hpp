#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tempqa::kg {

enum class Resolution { year, month, day };

// Calendar point with optional month/day. Missing fields are stored as 0, so
// the default member-wise ordering ranks a missing field before a present one.
struct Timestamp {
  int year = 0;
  int month = 0;  // 0 = absent, else 1..12
  int day = 0;    // 0 = absent, else 1..31; requires month

  Resolution resolution() const {
    if (day) return Resolution::day;
    if (month) return Resolution::month;
    return Resolution::year;
  }

  auto operator<=>(const Timestamp&) const = default;

  static Timestamp of_year(int y) { return {y, 0, 0}; }
  static Timestamp of_month(int y, int m) { return {y, m, 0}; }
  static Timestamp of_day(int y, int m, int d) { return {y, m, d}; }
};

bool is_valid(const Timestamp& ts);

// Accepts "yyyy", "yyyy-mm", "yyyy-mm-dd" (ISO order) and "dd-mm-yyyy",
// "mm-yyyy" (day-first order, also with '/' separators).
std::optional<Timestamp> parse_timestamp(std::string_view text);

// Canonical storage form: "yyyy", "yyyy-mm" or "yyyy-mm-dd".
std::string to_iso(const Timestamp& ts);

// Display form: "dd-mm-yyyy", "mm-yyyy" or "yyyy".
std::string to_display(const Timestamp& ts);

}  // namespace tempqa::kg
