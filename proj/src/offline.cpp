#include "mgsched/offline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <string>

#include "mgsched/error.hpp"

namespace mgsched {

namespace {

// "Smallest unmarked index >= x" over 0..n-1; n is returned when none is
// left.
class NextUnmarked {
 public:
  explicit NextUnmarked(std::size_t n) : parent_(n + 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::size_t up = parent_[x];
      parent_[x] = root;
      x = up;
    }
    return root;
  }

  void mark(std::size_t x) {
    parent_[x] = x + 1;
    dirty_ = true;
  }

  void reset() {
    if (!dirty_) return;
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    dirty_ = false;
  }

 private:
  std::vector<std::size_t> parent_;
  bool dirty_ = false;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

double sum_by_id(const Instance& inst, const std::vector<SlotAssignment>& assignments) {
  std::vector<PacketId> ids;
  ids.reserve(assignments.size());
  for (const auto& a : assignments) ids.push_back(a.packet_id);
  std::sort(ids.begin(), ids.end());
  std::vector<const Packet*> by_id;
  by_id.reserve(inst.packets.size());
  for (const auto& p : inst.packets) by_id.push_back(&p);
  std::sort(by_id.begin(), by_id.end(), [](const Packet* a, const Packet* b) { return a->id < b->id; });
  double total = 0.0;
  std::size_t j = 0;
  for (PacketId id : ids) {
    while (by_id[j]->id != id) ++j;
    total += by_id[j]->value;
  }
  return total;
}

}  // namespace

OffSchedule offline_optimal(const Instance& inst, const OfflineOptions& options) {
  require_valid(inst);
  const Time cap = options.horizon.value_or(horizon(inst));
  const auto& packets = inst.packets;

  // Live windows clipped to the cap, then the union of windows as the
  // materialized slot list.
  struct Window {
    Time lo, hi;
  };
  std::vector<Window> windows(packets.size());
  std::vector<Window> live;
  for (std::size_t i = 0; i < packets.size(); ++i) {
    const auto& p = packets[i];
    Time hi = p.deadline.bounded() ? std::min(p.deadline.at(), cap) : cap;
    windows[i] = {p.release, hi};
    if (p.release <= hi) live.push_back(windows[i]);
  }
  std::sort(live.begin(), live.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
  std::vector<Time> slots;
  Time covered = 0;
  for (const auto& w : live) {
    for (Time s = std::max(w.lo, covered + 1); s <= w.hi; ++s) slots.push_back(s);
    covered = std::max(covered, w.hi);
  }
  const std::size_t slot_count = slots.size();
  auto index_of = [&](Time t) {
    return static_cast<std::size_t>(std::lower_bound(slots.begin(), slots.end(), t) - slots.begin());
  };

  std::vector<std::size_t> lo(packets.size()), hi(packets.size());
  for (std::size_t i = 0; i < packets.size(); ++i) {
    if (windows[i].lo > windows[i].hi) {
      lo[i] = 1;
      hi[i] = 0;
      continue;
    }
    lo[i] = index_of(windows[i].lo);
    hi[i] = index_of(windows[i].hi);
  }

  std::vector<std::size_t> order(packets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (packets[a].value != packets[b].value) return packets[a].value > packets[b].value;
    return packets[a].id < packets[b].id;
  });

  std::vector<std::size_t> owner(slot_count, kNone);
  std::vector<std::size_t> slot_of(packets.size(), kNone);
  NextUnmarked free_slots(slot_count);
  NextUnmarked unvisited(slot_count);
  std::vector<std::size_t> reached_from(slot_count, kNone);
  std::vector<std::size_t> queue;

  // Heaviest packets first; a packet joins iff an augmenting path from it
  // reaches a free slot. Rejected packets never re-enter, since the
  // matchable sets form a matroid.
  for (std::size_t p : order) {
    if (lo[p] > hi[p]) continue;

    std::size_t end_packet = kNone;
    std::size_t end_slot = kNone;
    queue.assign(1, p);
    for (std::size_t head = 0; head < queue.size() && end_packet == kNone; ++head) {
      const std::size_t q = queue[head];
      const std::size_t f = free_slots.find(lo[q]);
      if (f <= hi[q]) {
        end_packet = q;
        end_slot = f;
        break;
      }
      for (std::size_t s = unvisited.find(lo[q]); s <= hi[q]; s = unvisited.find(s)) {
        unvisited.mark(s);
        reached_from[s] = q;
        queue.push_back(owner[s]);
      }
    }
    unvisited.reset();
    if (end_packet == kNone) continue;

    free_slots.mark(end_slot);
    std::size_t q = end_packet;
    std::size_t s = end_slot;
    while (true) {
      const std::size_t previous = slot_of[q];
      owner[s] = q;
      slot_of[q] = s;
      if (q == p) break;
      s = previous;
      q = reached_from[s];
    }
  }

  OffSchedule out;
  for (std::size_t i = 0; i < packets.size(); ++i) {
    if (slot_of[i] != kNone) out.assignments.push_back({packets[i].id, slots[slot_of[i]]});
  }
  std::sort(out.assignments.begin(), out.assignments.end(),
            [](const SlotAssignment& a, const SlotAssignment& b) { return a.slot < b.slot; });
  out.total_value = sum_by_id(inst, out.assignments);
  return out;
}

namespace {

// EDF slotting of a chosen subset; empty result when some packet misses
// its deadline.
std::optional<std::vector<SlotAssignment>> edf_slotting(std::vector<const Packet*> chosen) {
  std::sort(chosen.begin(), chosen.end(),
            [](const Packet* a, const Packet* b) { return a->release < b->release; });
  auto later_deadline = [](const Packet* a, const Packet* b) {
    if (a->deadline != b->deadline) return b->deadline < a->deadline;
    return b->id < a->id;
  };
  std::priority_queue<const Packet*, std::vector<const Packet*>, decltype(later_deadline)> ready(
      later_deadline);
  std::vector<SlotAssignment> out;
  std::size_t next = 0;
  Time t = 0;
  while (next < chosen.size() || !ready.empty()) {
    if (ready.empty()) t = std::max(t, chosen[next]->release);
    while (next < chosen.size() && chosen[next]->release <= t) ready.push(chosen[next++]);
    const Packet* p = ready.top();
    ready.pop();
    if (!p->deadline.alive_at(t)) return std::nullopt;
    out.push_back({p->id, t});
    ++t;
  }
  return out;
}

}  // namespace

OffSchedule brute_force_optimal(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.packets.size();
  if (n > kBruteForceLimit) {
    throw Error(Errc::size_limit, "brute force is limited to " + std::to_string(kBruteForceLimit) +
                                      " packets, got " + std::to_string(n));
  }
  OffSchedule best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<const Packet*> chosen;
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        chosen.push_back(&inst.packets[i]);
        value += inst.packets[i].value;
      }
    }
    if (value <= best.total_value && mask != 0) continue;
    auto slotting = edf_slotting(std::move(chosen));
    if (!slotting) continue;
    OffSchedule candidate{std::move(*slotting), 0.0};
    candidate.total_value = sum_by_id(inst, candidate.assignments);
    if (candidate.total_value > best.total_value) best = std::move(candidate);
  }
  return best;
}

RatioReport make_ratio(double opt_value, double alg_value) {
  RatioReport r{opt_value, alg_value, 1.0};
  if (alg_value == 0.0) {
    r.ratio = opt_value == 0.0 ? 1.0 : INFINITY;
  } else {
    r.ratio = opt_value / alg_value;
  }
  return r;
}

RatioReport empirical_ratio(const Instance& inst, const PolicyParams& params) {
  const double alg = simulate(inst, params).total_value;
  const double opt = offline_optimal(inst).total_value;
  return make_ratio(opt, alg);
}

}  // namespace mgsched
