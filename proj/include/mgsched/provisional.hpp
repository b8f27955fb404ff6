#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgsched/model.hpp"

namespace mgsched {

// Canonical order: increasing deadline, then decreasing value, then id.
bool canonical_less(const Packet& a, const Packet& b);

struct ScheduleEntry {
  Packet packet;
  Time slot;
};

// The pending packets an online policy could still deliver at step `time`
// if nothing else arrived, one per slot starting at `time`, in canonical
// order.
struct ProvisionalSchedule {
  Time time = 0;
  std::vector<ScheduleEntry> entries;
  double total_value = 0.0;

  bool empty() const { return entries.empty(); }
};

// Slot-counting test: after sorting by deadline, the i-th packet (0-based)
// must have deadline >= t + i.
bool feasible(std::span<const Packet> packets, Time t);

// Maximum-value slot-feasible subset of `pending`, built greedily by
// decreasing value (ties: earlier deadline, then smaller id) with a
// feasibility test per candidate. Requires release <= t <= deadline for
// every pending packet.
ProvisionalSchedule optimal_provisional_schedule(std::span<const Packet> pending, Time t);

struct FirstAndHighest {
  std::size_t e;  // always 0
  std::size_t h;  // first entry carrying the maximum value
};

FirstAndHighest select_e_h(const ProvisionalSchedule& s);

}  // namespace mgsched
