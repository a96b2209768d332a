#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ivl {

/// Process identity in [1, n]. Register slots are 0-based, so process p owns slot p - 1.
struct ProcessId {
  int value = 0;

  constexpr ProcessId() = default;
  constexpr explicit ProcessId(int v) : value(v) {}

  constexpr std::size_t slot() const { return static_cast<std::size_t>(value - 1); }
  constexpr auto operator<=>(const ProcessId&) const = default;
};

/// Component 0 first.
using BitVector = std::vector<std::uint8_t>;

/// Query return values. Counters and sketches return integers, the parameter object reals,
/// binary snapshot scans bit vectors.
using Value = std::variant<std::int64_t, double, BitVector>;

/// Operation arguments: none, an integer (counter batch, snapshot bit), a real (parameter
/// update) or a symbol (sketch item).
using Arg = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Absolute tolerance for comparing real-valued returns (parameter object, naive adder).
inline constexpr double kRealTolerance = 1e-9;

class ValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<double> as_number(const Value& v);
std::optional<double> as_number(const Arg& a);

/// Three-way comparison of two numeric values. Integers compare exactly; if either side is
/// real the comparison uses `tolerance`. Throws ValueError for bit vectors, which carry no order.
std::partial_ordering compare_values(const Value& a, const Value& b, double tolerance = kRealTolerance);

/// Equality including bit vectors.
bool values_equal(const Value& a, const Value& b, double tolerance = kRealTolerance);

/// Textual forms used by the history and schedule files. Reals always carry a '.' or an
/// exponent so they never parse back as integers; bit vectors are written `#0101`.
std::string format_value(const Value& v);
Value parse_value(std::string_view text);

/// `-` for no argument.
std::string format_arg(const Arg& a);
Arg parse_arg(std::string_view text);

std::string format_real(double v);

}  // namespace ivl
