#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ivl/history.hpp"

namespace ivl {

// History file grammar, one event per line:
//
//   <seq> <process> <object> <inv|res> <update|read|query|scan> <arg> <ret>
//
// <arg> is `-` when the operation takes none. <ret> is `-` on invocations and update
// responses, `?` on an erased query response, otherwise a value: integer, real (always
// written with '.' or an exponent) or bit vector `#b0b1...`. Blank lines and lines
// starting with '#' are ignored. Fields are separated by whitespace.

std::string to_text(const History& h);
void write_history(std::ostream& out, const History& h);

/// Parses and validates. Throws MalformedHistory with the offending line number.
History parse_history(std::string_view text);
History read_history_file(const std::filesystem::path& path);

}  // namespace ivl
