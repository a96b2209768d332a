#pragma once

#include <span>
#include <string_view>

namespace ivl::detail {

struct GoldenScheduleText {
  std::string_view name;
  std::string_view text;
};

// Defined in the generated golden_data.cpp (one entry per schedules/*.sched file).
std::span<const GoldenScheduleText> golden_schedules();

}  // namespace ivl::detail
