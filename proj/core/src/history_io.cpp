#include "ivl/history_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "text_util.hpp"

namespace ivl {

void write_history(std::ostream& out, const History& h) {
  for (const auto& e : h.events()) {
    out << e.seq << ' ' << e.process.value << ' ' << e.object << ' ' << (e.kind == EventKind::Invoke ? "inv" : "res") << ' '
        << to_string(e.op.kind) << ' ' << format_arg(e.op.arg) << ' ';
    if (e.ret)
      out << format_value(*e.ret);
    else if (e.kind == EventKind::Respond && e.op.returns_value())
      out << '?';
    else
      out << '-';
    out << '\n';
  }
}

std::string to_text(const History& h) {
  std::ostringstream out;
  write_history(out, h);
  return out.str();
}

namespace {

template <typename T>
T parse_unsigned(std::string_view s, const char* what) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw MalformedHistory(std::string("bad ") + what + ": " + std::string(s));
  return out;
}

Event parse_event(const std::vector<std::string_view>& f) {
  if (f.size() != 7) throw MalformedHistory("expected 7 fields, got " + std::to_string(f.size()));
  Event e;
  e.seq = parse_unsigned<std::uint64_t>(f[0], "sequence number");
  e.process = ProcessId(parse_unsigned<int>(f[1], "process id"));
  e.object = std::string(f[2]);
  if (f[3] == "inv")
    e.kind = EventKind::Invoke;
  else if (f[3] == "res")
    e.kind = EventKind::Respond;
  else
    throw MalformedHistory("event kind must be inv or res: " + std::string(f[3]));
  e.op.kind = parse_op_kind(f[4]);
  try {
    e.op.arg = parse_arg(f[5]);
    if (f[6] != "-" && f[6] != "?") e.ret = parse_value(f[6]);
  } catch (const ValueError& err) {
    throw MalformedHistory(err.what());
  }
  if (f[6] == "?" && !(e.kind == EventKind::Respond && e.op.returns_value()))
    throw MalformedHistory("'?' only appears on query responses");
  return e;
}

}  // namespace

History parse_history(std::string_view text) {
  std::vector<Event> events;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    try {
      events.push_back(parse_event(fields));
    } catch (const MalformedHistory& err) {
      throw MalformedHistory("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  History h(std::move(events));
  validate(h);
  return h;
}

History read_history_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_history(buf.str());
}

}  // namespace ivl
