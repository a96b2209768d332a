#include "ivl/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "golden_data.hpp"
#include "text_util.hpp"

namespace ivl {

const ObjectDecl& Schedule::object(std::string_view name) const {
  for (const auto& o : objects)
    if (o.name == name) return o;
  throw ScheduleError("undeclared object '" + std::string(name) + "'");
}

namespace {

template <typename T>
T number(std::string_view s, const char* what) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ScheduleError(std::string("bad ") + what + ": " + std::string(s));
  return out;
}

ObjectDecl& find_object(Schedule& s, std::string_view name) {
  for (auto& o : s.objects)
    if (o.name == name) return o;
  throw ScheduleError("undeclared object '" + std::string(name) + "'");
}

void parse_line(Schedule& s, const std::vector<std::string_view>& f) {
  const auto& head = f[0];
  auto need = [&](std::size_t n) {
    if (f.size() < n) throw ScheduleError("'" + std::string(head) + "' needs " + std::to_string(n - 1) + " fields");
  };
  if (head == "name") {
    need(2);
    s.name = std::string(f[1]);
  } else if (head == "processes") {
    need(2);
    s.processes = number<std::size_t>(f[1], "process count");
    if (s.processes == 0) throw ScheduleError("need at least one process");
    for (auto& o : s.objects) o.config.processes = s.processes;
  } else if (head == "seed") {
    need(2);
    s.seed = number<std::uint64_t>(f[1], "seed");
  } else if (head == "object") {
    need(3);
    ObjectDecl d;
    d.name = std::string(f[1]);
    try {
      d.config.kind = parse_object_kind(f[2]);
    } catch (const std::invalid_argument& e) {
      throw ScheduleError(e.what());
    }
    d.config.processes = s.processes;
    for (std::size_t i = 3; i < f.size(); ++i) {
      auto eq = f[i].find('=');
      if (eq == std::string_view::npos) throw ScheduleError("object option must be key=value: " + std::string(f[i]));
      auto key = f[i].substr(0, eq);
      auto val = f[i].substr(eq + 1);
      if (key == "width")
        d.config.width = number<std::size_t>(val, "width");
      else if (key == "depth")
        d.config.depth = number<std::size_t>(val, "depth");
      else if (key == "seed")
        d.config.seed = number<std::uint64_t>(val, "seed");
      else if (key == "base") {
        if (val == "locked")
          d.config.base = SnapshotBase::Locked;
        else if (val == "ivl")
          d.config.base = SnapshotBase::Ivl;
        else
          throw ScheduleError("base must be locked or ivl");
      } else {
        throw ScheduleError("unknown object option: " + std::string(key));
      }
    }
    s.objects.push_back(std::move(d));
  } else if (head == "hash") {
    need(4);
    auto& o = find_object(s, f[1]);
    std::vector<std::size_t> rows;
    for (std::size_t i = 3; i < f.size(); ++i) rows.push_back(number<std::size_t>(f[i], "bucket"));
    o.config.pinned_hashes[std::string(f[2])] = std::move(rows);
  } else if (head == "init") {
    need(4);
    auto& o = find_object(s, f[1]);
    auto row = number<std::size_t>(f[2], "row");
    if (o.config.initial.size() <= row) o.config.initial.resize(row + 1);
    o.config.initial[row].clear();
    for (std::size_t i = 3; i < f.size(); ++i) o.config.initial[row].push_back(number<std::uint64_t>(f[i], "counter"));
  } else if (head == "INVOKE") {
    need(5);
    InvokeEntry e;
    e.process = ProcessId(number<int>(f[1], "process"));
    e.object = std::string(f[2]);
    (void)s.object(e.object);
    try {
      e.op.kind = parse_op_kind(f[3]);
      e.op.arg = parse_arg(f[4]);
    } catch (const std::exception& err) {
      throw ScheduleError(err.what());
    }
    s.entries.emplace_back(std::move(e));
  } else if (head == "STEP") {
    need(2);
    s.entries.emplace_back(StepEntry{ProcessId(number<int>(f[1], "process"))});
  } else if (head == "RUN") {
    need(2);
    s.entries.emplace_back(RunEntry{ProcessId(number<int>(f[1], "process"))});
  } else {
    throw ScheduleError("unknown directive: " + std::string(head));
  }
}

}  // namespace

Schedule parse_schedule(std::string_view text) {
  Schedule s;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    try {
      parse_line(s, fields);
    } catch (const ScheduleError& e) {
      throw ScheduleError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return s;
}

Schedule read_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScheduleError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str());
}

std::string to_text(const Schedule& s) {
  std::ostringstream out;
  if (!s.name.empty()) out << "name " << s.name << '\n';
  out << "processes " << s.processes << '\n';
  if (s.seed) out << "seed " << s.seed << '\n';
  for (const auto& o : s.objects) {
    const auto& c = o.config;
    out << "object " << o.name << ' ' << to_string(c.kind);
    if (c.kind == ObjectKind::Pcm) out << " width=" << c.width << " depth=" << c.depth << " seed=" << c.seed;
    if (c.kind == ObjectKind::Snapshot) out << " base=" << (c.base == SnapshotBase::Ivl ? "ivl" : "locked");
    out << '\n';
    for (const auto& [symbol, rows] : c.pinned_hashes) {
      out << "hash " << o.name << ' ' << symbol;
      for (auto b : rows) out << ' ' << b;
      out << '\n';
    }
    for (std::size_t r = 0; r < c.initial.size(); ++r) {
      out << "init " << o.name << ' ' << r;
      for (auto v : c.initial[r]) out << ' ' << v;
      out << '\n';
    }
  }
  for (const auto& e : s.entries) {
    if (const auto* inv = std::get_if<InvokeEntry>(&e))
      out << "INVOKE " << inv->process.value << ' ' << inv->object << ' ' << to_string(inv->op.kind) << ' ' << format_arg(inv->op.arg) << '\n';
    else if (const auto* st = std::get_if<StepEntry>(&e))
      out << "STEP " << st->process.value << '\n';
    else
      out << "RUN " << std::get<RunEntry>(e).process.value << '\n';
  }
  return out.str();
}

std::vector<std::string> golden_schedule_names() {
  std::vector<std::string> names;
  for (const auto& g : detail::golden_schedules()) names.emplace_back(g.name);
  std::sort(names.begin(), names.end());
  return names;
}

Schedule golden_schedule(std::string_view name) {
  for (const auto& g : detail::golden_schedules())
    if (g.name == name) return parse_schedule(g.text);
  throw ScheduleError("unknown schedule: " + std::string(name));
}

}  // namespace ivl
