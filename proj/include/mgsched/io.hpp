#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mgsched/analysis.hpp"
#include "mgsched/model.hpp"
#include "mgsched/offline.hpp"
#include "mgsched/policies.hpp"

namespace mgsched {

// Shortest decimal that round-trips; "inf" for infinity.
std::string format_double(double x);
// "inf" for the unbounded alpha.
std::string format_alpha(std::optional<double> alpha);

// Instance JSON-lines: an optional {"meta": {...}} first line, then one
// {"id", "release", "deadline" (null = unbounded), "value"} object per line.
void write_instance_jsonl(std::ostream& out, const Instance& inst);
Instance read_instance_jsonl(std::istream& in);
std::string instance_to_jsonl(const Instance& inst);
Instance instance_from_jsonl(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

// One record per step, then {"summary": {totalValue, sentCount, droppedCount}}.
void write_trace_jsonl(std::ostream& out, const SimulationTrace& trace);
std::string trace_to_jsonl(const SimulationTrace& trace);

// {"id", "slot"} per assignment, then {"summary": {"totalValue"}}.
std::string offschedule_to_jsonl(const OffSchedule& schedule);

std::string ratio_csv_header();
std::string ratio_csv_row(std::string_view instance_id, std::string_view variant,
                          const PolicyParams& params, const RatioReport& report);

// Header: variant,kind,alpha,beta,trials,max_ratio,mean_ratio,argmax_seed
std::string sweep_csv(const SweepReport& report);
// Fixed-width summary with the claimed bound per row.
std::string sweep_table(const SweepReport& report);

}  // namespace mgsched
