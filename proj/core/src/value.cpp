#include "ivl/value.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace ivl {

std::optional<double> as_number(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

std::optional<double> as_number(const Arg& a) {
  if (const auto* i = std::get_if<std::int64_t>(&a)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&a)) return *d;
  return std::nullopt;
}

std::partial_ordering compare_values(const Value& a, const Value& b, double tolerance) {
  const auto* ai = std::get_if<std::int64_t>(&a);
  const auto* bi = std::get_if<std::int64_t>(&b);
  if (ai && bi) return *ai <=> *bi;
  auto x = as_number(a);
  auto y = as_number(b);
  if (!x || !y) throw ValueError("bit vectors have no order");
  if (std::isnan(*x) || std::isnan(*y)) return std::partial_ordering::unordered;
  if (std::fabs(*x - *y) <= tolerance) return std::partial_ordering::equivalent;
  return *x <=> *y;
}

bool values_equal(const Value& a, const Value& b, double tolerance) {
  const auto* ab = std::get_if<BitVector>(&a);
  const auto* bb = std::get_if<BitVector>(&b);
  if (ab || bb) return ab && bb && *ab == *bb;
  return compare_values(a, b, tolerance) == std::partial_ordering::equivalent;
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string out(buf, end);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";  // "inf", "nan" contain 'n'
  return out;
}

std::string format_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
  std::string out = "#";
  for (auto bit : std::get<BitVector>(v)) out += bit ? '1' : '0';
  return out;
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t out = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || first == ptr) return std::nullopt;
  return out;
}

std::optional<double> parse_real(std::string_view s) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

bool looks_real(std::string_view s) { return s.find_first_of(".eE") != std::string_view::npos || s == "inf" || s == "-inf"; }

}  // namespace

Value parse_value(std::string_view text) {
  if (!text.empty() && text.front() == '#') {
    BitVector bits;
    for (char c : text.substr(1)) {
      if (c != '0' && c != '1') throw ValueError("bad bit vector: " + std::string(text));
      bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
  }
  if (looks_real(text)) {
    if (auto d = parse_real(text)) return *d;
  } else if (auto i = parse_int(text)) {
    return *i;
  }
  throw ValueError("bad value: " + std::string(text));
}

std::string format_arg(const Arg& a) {
  if (std::holds_alternative<std::monostate>(a)) return "-";
  if (const auto* i = std::get_if<std::int64_t>(&a)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&a)) return format_real(*d);
  return std::get<std::string>(a);
}

Arg parse_arg(std::string_view text) {
  if (text.empty()) throw ValueError("empty argument");
  if (text == "-") return std::monostate{};
  const char c = text.front();
  const bool numeric = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
  if (!numeric) return std::string(text);
  if (looks_real(text)) {
    if (auto d = parse_real(text)) return *d;
  } else if (auto i = parse_int(text)) {
    return *i;
  }
  throw ValueError("bad argument: " + std::string(text));
}

}  // namespace ivl
