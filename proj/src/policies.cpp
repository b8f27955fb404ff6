#include "mgsched/policies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgsched/error.hpp"

namespace mgsched {

const char* to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::mg: return "mg";
    case PolicyKind::edf_alpha: return "edf";
    case PolicyKind::greedy: return "greedy";
  }
  return "unknown";
}

void PolicyParams::validate() const {
  if (kind == PolicyKind::greedy) return;
  if (alpha && !(*alpha >= 1.0)) {
    throw Error(Errc::invalid_argument, "alpha must be >= 1");
  }
  if (kind == PolicyKind::mg) {
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
      throw Error(Errc::invalid_argument, "beta must be a finite value >= 1");
    }
    if (alpha && beta > *alpha) throw Error(Errc::invalid_argument, "MG requires beta <= alpha");
  }
}

double value_floor(double max_value, std::optional<double> alpha) {
  return alpha ? max_value / *alpha : 0.0;
}

const Packet& mg_select(const ProvisionalSchedule& s, const PolicyParams& params) {
  const auto [e, h] = select_e_h(s);
  const double ve = s.entries[e].packet.value;
  const double floor = value_floor(s.entries[h].packet.value, params.alpha);
  if (ve >= floor) return s.entries[e].packet;

  const double threshold = std::max(floor, params.beta * ve);
  for (const auto& entry : s.entries) {
    if (entry.packet.value >= threshold) return entry.packet;
  }
  // beta <= alpha makes h qualify; only rounding in beta * v_e can get here.
  return s.entries[h].packet;
}

namespace {

void require_pending(std::span<const Packet> pending, Time t) {
  if (pending.empty()) throw Error(Errc::empty_buffer, "buffer is empty");
  for (const auto& p : pending) {
    if (p.release > t || !p.deadline.alive_at(t)) {
      throw Error(Errc::invalid_argument,
                  "packet " + std::to_string(p.id) + " is not pending at t=" + std::to_string(t));
    }
  }
}

}  // namespace

const Packet& edf_alpha_select(std::span<const Packet> pending, Time t,
                               std::optional<double> alpha) {
  require_pending(pending, t);
  double max_value = 0.0;
  for (const auto& p : pending) max_value = std::max(max_value, p.value);
  const double floor = value_floor(max_value, alpha);

  const Packet* best = nullptr;
  for (const auto& p : pending) {
    if (p.value < floor) continue;
    if (best == nullptr || canonical_less(p, *best)) best = &p;
  }
  return *best;
}

const Packet& greedy_select(std::span<const Packet> pending, Time t) {
  require_pending(pending, t);
  const Packet* best = &pending.front();
  for (const auto& p : pending.subspan(1)) {
    if (p.value > best->value ||
        (p.value == best->value &&
         (p.deadline < best->deadline || (p.deadline == best->deadline && p.id < best->id)))) {
      best = &p;
    }
  }
  return *best;
}

std::size_t SimulationTrace::sent_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const TraceStep& s) { return s.sent.has_value(); }));
}

namespace {

void check_value_order(const ProvisionalSchedule& s) {
  // Entries are sorted by deadline; every value in a deadline group must
  // not exceed the smallest value seen in strictly earlier groups.
  double earlier_min = INFINITY;
  double group_min = INFINITY;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& p = s.entries[i].packet;
    if (i > 0 && s.entries[i - 1].packet.deadline != p.deadline) {
      earlier_min = std::min(earlier_min, group_min);
      group_min = INFINITY;
    }
    if (p.value > earlier_min) {
      throw Error(Errc::invariant_violation,
                  "step " + std::to_string(s.time) + ": packet " + std::to_string(p.id) +
                      " outranks an earlier-deadline packet in the provisional schedule");
    }
    group_min = std::min(group_min, p.value);
  }
}

}  // namespace

SimulationTrace simulate(const Instance& inst, const PolicyParams& params,
                         const SimulateOptions& options) {
  require_valid(inst);
  params.validate();

  std::vector<Packet> arrivals = inst.packets;
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const Packet& a, const Packet& b) { return a.release < b.release; });

  SimulationTrace trace;
  const Time end = horizon(inst);
  trace.steps.reserve(static_cast<std::size_t>(end));
  std::vector<Packet> buffer;
  std::size_t next = 0;

  for (Time t = 1; t <= end; ++t) {
    while (next < arrivals.size() && arrivals[next].release == t) buffer.push_back(arrivals[next++]);

    auto expired = std::stable_partition(buffer.begin(), buffer.end(),
                                         [t](const Packet& p) { return p.deadline.alive_at(t); });
    for (auto it = expired; it != buffer.end(); ++it) trace.dropped_expired.push_back(it->id);
    buffer.erase(expired, buffer.end());

    TraceStep step;
    step.t = t;
    step.buffer_size = buffer.size();
    if (!buffer.empty()) {
      const ProvisionalSchedule schedule = optimal_provisional_schedule(buffer, t);
      step.schedule_value = schedule.total_value;
      if (options.check_slack_order) check_value_order(schedule);

      PacketId chosen = 0;
      switch (params.kind) {
        case PolicyKind::mg: chosen = mg_select(schedule, params).id; break;
        case PolicyKind::edf_alpha: chosen = edf_alpha_select(buffer, t, params.alpha).id; break;
        case PolicyKind::greedy: chosen = greedy_select(buffer, t).id; break;
      }
      auto it = std::find_if(buffer.begin(), buffer.end(),
                             [chosen](const Packet& p) { return p.id == chosen; });
      step.sent = chosen;
      step.sent_value = it->value;
      trace.total_value += it->value;
      buffer.erase(it);
    }
    trace.steps.push_back(step);
  }
  for (const auto& p : buffer) trace.dropped_expired.push_back(p.id);
  return trace;
}

}  // namespace mgsched
