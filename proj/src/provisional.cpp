#include "mgsched/provisional.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mgsched/error.hpp"

namespace mgsched {

bool canonical_less(const Packet& a, const Packet& b) {
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  if (a.value != b.value) return a.value > b.value;
  return a.id < b.id;
}

bool feasible(std::span<const Packet> packets, Time t) {
  std::vector<Deadline> deadlines;
  deadlines.reserve(packets.size());
  for (const auto& p : packets) deadlines.push_back(p.deadline);
  std::sort(deadlines.begin(), deadlines.end());
  for (std::size_t i = 0; i < deadlines.size(); ++i) {
    if (!deadlines[i].alive_at(t + static_cast<Time>(i))) return false;
  }
  return true;
}

namespace {

// Union-find over relative slots 0..n-1 answering "latest free slot <= x".
// Node j + 1 stands for slot j; node 0 means no free slot remains.
class LatestFreeSlot {
 public:
  explicit LatestFreeSlot(std::size_t n) : parent_(n + 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  // Claims the latest free slot <= x; returns false if none exists.
  bool claim(std::size_t x) {
    std::size_t node = find(x + 1);
    if (node == 0) return false;
    parent_[node] = node - 1;
    return true;
  }

 private:
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::vector<std::size_t> parent_;
};

}  // namespace

ProvisionalSchedule optimal_provisional_schedule(std::span<const Packet> pending, Time t) {
  for (const auto& p : pending) {
    if (p.release > t || !p.deadline.alive_at(t)) {
      throw Error(Errc::invalid_argument,
                  "packet " + std::to_string(p.id) + " is not pending at t=" + std::to_string(t));
    }
  }

  std::vector<const Packet*> order;
  order.reserve(pending.size());
  for (const auto& p : pending) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Packet* a, const Packet* b) {
    if (a->value != b->value) return a->value > b->value;
    if (a->deadline != b->deadline) return a->deadline < b->deadline;
    return a->id < b->id;
  });

  // A candidate keeps the set feasible iff some slot between t and its
  // deadline is still free once earlier picks took their latest slots.
  const std::size_t n = pending.size();
  LatestFreeSlot slots(n);
  std::vector<Packet> chosen;
  chosen.reserve(n);
  for (const Packet* p : order) {
    std::size_t cap = n - 1;
    if (p->deadline.bounded()) {
      cap = std::min<std::size_t>(cap, static_cast<std::size_t>(p->deadline.at() - t));
    }
    if (slots.claim(cap)) chosen.push_back(*p);
  }
  std::sort(chosen.begin(), chosen.end(), canonical_less);

  ProvisionalSchedule s;
  s.time = t;
  s.entries.reserve(chosen.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    s.entries.push_back({chosen[i], t + static_cast<Time>(i)});
    s.total_value += chosen[i].value;
  }
  return s;
}

FirstAndHighest select_e_h(const ProvisionalSchedule& s) {
  if (s.empty()) throw Error(Errc::empty_schedule, "provisional schedule is empty");
  std::size_t h = 0;
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    if (s.entries[i].packet.value > s.entries[h].packet.value) h = i;
  }
  return {0, h};
}

}  // namespace mgsched
