#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace triage {

// Calendar date at day granularity.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  // Accepts ISO-8601 (YYYY-MM-DD), optionally followed by a timestamp tail
  // starting with 'T' or ' ' (the NVD export form, e.g. 2020-10-23T18:15Z).
  // Anything else, including invalid calendar dates, yields nullopt.
  static std::optional<Date> parse(std::string_view text);

  std::string to_string() const;  // YYYY-MM-DD

  auto operator<=>(const Date&) const = default;
};

}  // namespace triage
