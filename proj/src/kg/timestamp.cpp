#include "tempqa/kg/timestamp.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

namespace tempqa::kg {
namespace {

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

std::optional<int> to_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_date(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '-' || text[i] == '/') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

bool is_valid(const Timestamp& ts) {
  if (ts.month == 0) return ts.day == 0;
  if (ts.month < 1 || ts.month > 12) return false;
  if (ts.day == 0) return true;
  return ts.day >= 1 && ts.day <= days_in_month(ts.year, ts.month);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  const auto parts = split_date(text);
  for (auto p : parts) {
    if (p.empty()) return std::nullopt;
    for (char c : p)
      if (c < '0' || c > '9') return std::nullopt;
  }
  Timestamp ts;
  if (parts.size() == 1) {
    if (parts[0].size() != 4) return std::nullopt;
    ts.year = *to_int(parts[0]);
  } else if (parts.size() == 2) {
    if (parts[0].size() == 4 && parts[1].size() <= 2) {
      ts = {*to_int(parts[0]), *to_int(parts[1]), 0};
    } else if (parts[1].size() == 4 && parts[0].size() <= 2) {
      ts = {*to_int(parts[1]), *to_int(parts[0]), 0};
    } else {
      return std::nullopt;
    }
  } else if (parts.size() == 3) {
    if (parts[0].size() == 4 && parts[1].size() <= 2 && parts[2].size() <= 2) {
      ts = {*to_int(parts[0]), *to_int(parts[1]), *to_int(parts[2])};
    } else if (parts[2].size() == 4 && parts[0].size() <= 2 && parts[1].size() <= 2) {
      ts = {*to_int(parts[2]), *to_int(parts[1]), *to_int(parts[0])};
    } else {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (!is_valid(ts)) return std::nullopt;
  return ts;
}

std::string to_iso(const Timestamp& ts) {
  char buf[32];
  switch (ts.resolution()) {
    case Resolution::year:
      std::snprintf(buf, sizeof buf, "%04d", ts.year);
      break;
    case Resolution::month:
      std::snprintf(buf, sizeof buf, "%04d-%02d", ts.year, ts.month);
      break;
    case Resolution::day:
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", ts.year, ts.month, ts.day);
      break;
  }
  return buf;
}

std::string to_display(const Timestamp& ts) {
  char buf[32];
  switch (ts.resolution()) {
    case Resolution::year:
      std::snprintf(buf, sizeof buf, "%04d", ts.year);
      break;
    case Resolution::month:
      std::snprintf(buf, sizeof buf, "%02d-%04d", ts.month, ts.year);
      break;
    case Resolution::day:
      std::snprintf(buf, sizeof buf, "%02d-%02d-%04d", ts.day, ts.month, ts.year);
      break;
  }
  return buf;
}

}  // namespace tempqa::kg
