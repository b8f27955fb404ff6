#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mgsched/model.hpp"
#include "mgsched/policies.hpp"

namespace mgsched {

struct SlotAssignment {
  PacketId packet_id;
  Time slot;
};

struct OffSchedule {
  // Sorted by slot.
  std::vector<SlotAssignment> assignments;
  double total_value = 0.0;
};

struct OfflineOptions {
  // Last usable slot; defaults to horizon(inst).
  std::optional<Time> horizon;
};

// Maximum-value assignment of packets to distinct slots inside their
// release/deadline windows, solved as a vertex-weighted bipartite matching
// between packets and the slots covered by at least one window.
OffSchedule offline_optimal(const Instance& inst, const OfflineOptions& options = {});

inline constexpr std::size_t kBruteForceLimit = 10;

// Exhaustive reference: every subset is tested for feasibility by EDF
// slotting. Only for instances of at most kBruteForceLimit packets.
OffSchedule brute_force_optimal(const Instance& inst);

struct RatioReport {
  double opt_value = 0.0;
  double alg_value = 0.0;
  // opt / alg; 1 when both are 0, +inf when only alg is 0.
  double ratio = 1.0;
};

RatioReport make_ratio(double opt_value, double alg_value);
RatioReport empirical_ratio(const Instance& inst, const PolicyParams& params);

}  // namespace mgsched
