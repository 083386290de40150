/*
 * Copyright 2026 The crickpred Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace crickpred {

/// Calendar date stored as a day count since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  static constexpr Date from_days(int days) { return Date(days); }
  static Date from_ymd(int year, unsigned month, unsigned day);

  /// Parses strict ISO-8601 `YYYY-MM-DD`. Returns nullopt for anything else,
  /// including impossible dates such as 2019-02-29.
  static std::optional<Date> parse(std::string_view text);

  constexpr int days() const { return days_; }
  std::string iso() const;

  constexpr Date operator-(int n) const { return Date(days_ - n); }
  constexpr Date operator+(int n) const { return Date(days_ + n); }
  constexpr int operator-(Date other) const { return days_ - other.days_; }
  constexpr auto operator<=>(const Date&) const = default;

 private:
  constexpr explicit Date(int days) : days_(days) {}
  int days_ = 0;
};

}  // namespace crickpred
