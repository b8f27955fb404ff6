#include "mgsched/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "mgsched/error.hpp"

namespace mgsched {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string format_alpha(std::optional<double> alpha) {
  return alpha ? format_double(*alpha) : "inf";
}

void write_instance_jsonl(std::ostream& out, const Instance& inst) {
  if (!inst.meta.is_null()) out << ordered_json{{"meta", inst.meta}}.dump() << '\n';
  for (const auto& p : inst.packets) {
    ordered_json line;
    line["id"] = p.id;
    line["release"] = p.release;
    line["deadline"] = p.deadline.bounded() ? ordered_json(p.deadline.at()) : ordered_json(nullptr);
    line["value"] = p.value;
    out << line.dump() << '\n';
  }
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

std::int64_t integer_field(const ordered_json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(line_no, std::string("missing \"") + key + "\"");
  if (!it->is_number_integer()) parse_fail(line_no, std::string("\"") + key + "\" must be an integer");
  return it->get<std::int64_t>();
}

}  // namespace

Instance read_instance_jsonl(std::istream& in) {
  Instance inst;
  std::string line;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      parse_fail(line_no, e.what());
    }
    if (!obj.is_object()) parse_fail(line_no, "expected a JSON object");
    if (obj.contains("meta")) {
      if (seen_record) parse_fail(line_no, "meta must be the first line");
      inst.meta = obj["meta"];
      seen_record = true;
      continue;
    }
    seen_record = true;
    Packet p;
    p.id = integer_field(obj, "id", line_no);
    p.release = integer_field(obj, "release", line_no);
    auto d = obj.find("deadline");
    if (d == obj.end()) parse_fail(line_no, "missing \"deadline\"");
    if (d->is_null()) {
      p.deadline = Deadline::unbounded();
    } else if (d->is_number_integer()) {
      p.deadline = Deadline(d->get<std::int64_t>());
    } else {
      parse_fail(line_no, "\"deadline\" must be an integer or null");
    }
    auto v = obj.find("value");
    if (v == obj.end() || !v->is_number()) parse_fail(line_no, "\"value\" must be a number");
    p.value = v->get<double>();
    inst.packets.push_back(p);
  }
  return inst;
}

std::string instance_to_jsonl(const Instance& inst) {
  std::ostringstream out;
  write_instance_jsonl(out, inst);
  return out.str();
}

Instance instance_from_jsonl(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance_jsonl(in);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return read_instance_jsonl(in);
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_instance_jsonl(out, inst);
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

void write_trace_jsonl(std::ostream& out, const SimulationTrace& trace) {
  for (const auto& s : trace.steps) {
    ordered_json line;
    line["t"] = s.t;
    line["sentPacketId"] = s.sent ? ordered_json(*s.sent) : ordered_json(nullptr);
    line["sentValue"] = s.sent_value;
    line["bufferSize"] = s.buffer_size;
    line["scheduleValue"] = s.schedule_value;
    out << line.dump() << '\n';
  }
  ordered_json summary;
  summary["totalValue"] = trace.total_value;
  summary["sentCount"] = trace.sent_count();
  summary["droppedCount"] = trace.dropped_expired.size();
  out << ordered_json{{"summary", summary}}.dump() << '\n';
}

std::string trace_to_jsonl(const SimulationTrace& trace) {
  std::ostringstream out;
  write_trace_jsonl(out, trace);
  return out.str();
}

std::string offschedule_to_jsonl(const OffSchedule& schedule) {
  std::ostringstream out;
  for (const auto& a : schedule.assignments) {
    out << ordered_json{{"id", a.packet_id}, {"slot", a.slot}}.dump() << '\n';
  }
  out << ordered_json{{"summary", {{"totalValue", schedule.total_value}}}}.dump() << '\n';
  return out.str();
}

std::string ratio_csv_header() {
  return "instanceId,variant,policy,alpha,beta,optValue,algValue,ratio\n";
}

std::string ratio_csv_row(std::string_view instance_id, std::string_view variant,
                          const PolicyParams& params, const RatioReport& report) {
  std::string row;
  row.append(instance_id).append(",").append(variant).append(",");
  row.append(to_string(params.kind)).append(",");
  row.append(format_alpha(params.alpha)).append(",").append(format_double(params.beta)).append(",");
  row.append(format_double(report.opt_value)).append(",");
  row.append(format_double(report.alg_value)).append(",");
  row.append(format_double(report.ratio)).append("\n");
  return row;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "variant,kind,alpha,beta,trials,max_ratio,mean_ratio,argmax_seed\n";
  for (const auto& r : report.rows) {
    out.append(to_string(r.variant)).append(",");
    out.append(to_string(r.params.kind)).append(",");
    out.append(format_alpha(r.params.alpha)).append(",");
    out.append(format_double(r.params.beta)).append(",");
    out.append(std::to_string(r.trials)).append(",");
    out.append(format_double(r.max_ratio)).append(",");
    out.append(format_double(r.mean_ratio)).append(",");
    out.append(std::to_string(r.argmax_seed)).append("\n");
  }
  return out;
}

std::string sweep_table(const SweepReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-30s %-18s %8s %10s %10s %8s %s\n", "variant", "policy",
                "trials", "max", "mean", "claimed", "ok");
  out << line;
  for (const auto& r : report.rows) {
    const std::string policy = std::string(to_string(r.params.kind)) + "(" +
                               format_alpha(r.params.alpha).substr(0, 6) + "," +
                               format_double(r.params.beta).substr(0, 6) + ")";
    const std::string claimed = r.claimed_bound ? format_double(*r.claimed_bound).substr(0, 6) : "-";
    const char* ok = !r.claimed_bound ? "-" : (r.max_ratio <= *r.claimed_bound + 1e-9 ? "yes" : "NO");
    std::snprintf(line, sizeof line, "%-30s %-18s %8llu %10.6f %10.6f %8s %s\n",
                  std::string(to_string(r.variant)).c_str(), policy.c_str(),
                  static_cast<unsigned long long>(r.trials), r.max_ratio, r.mean_ratio,
                  claimed.c_str(), ok);
    out << line;
  }
  return out.str();
}

}  // namespace mgsched
