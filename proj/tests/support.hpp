#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mgsched/model.hpp"

namespace testing_support {

using mgsched::Deadline;
using mgsched::Instance;
using mgsched::Packet;
using mgsched::Time;

inline Packet pk(std::int64_t id, Time r, Time d, double v) { return Packet{id, r, Deadline(d), v}; }
inline Packet pku(std::int64_t id, Time r, double v) { return Packet{id, r, Deadline::unbounded(), v}; }

inline Instance make(std::vector<Packet> packets) {
  Instance inst;
  inst.packets = std::move(packets);
  return inst;
}

// Uniform integer in [lo, hi], drawn with an explicit rejection loop so the
// sequence does not depend on the standard library's distributions.
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

// Value on the 1/64 grid in [1, hi]; a small hi makes value ties common.
inline double grid_value(std::mt19937_64& rng, int hi) { return static_cast<double>(uniform(rng, 64, 64 * hi)) / 64.0; }

struct RandomShape {
  int n = 8;
  Time max_release = 5;
  Time max_slack = 4;
  int value_hi = 8;
  int unbounded_percent = 10;
};

inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape) {
  Instance inst;
  for (int i = 0; i < shape.n; ++i) {
    const Time r = uniform(rng, 1, shape.max_release);
    Packet p;
    p.id = i;
    p.release = r;
    p.value = grid_value(rng, shape.value_hi);
    if (uniform(rng, 1, 100) <= shape.unbounded_percent) {
      p.deadline = Deadline::unbounded();
    } else {
      p.deadline = Deadline(r + uniform(rng, 0, shape.max_slack));
    }
    inst.packets.push_back(p);
  }
  return inst;
}

// Hall-type feasibility: for every bound D, the packets due by D fit in
// the D - t + 1 slots t..D.
inline bool hall_feasible(std::span<const Packet> set, Time t) {
  for (const Packet& bound : set) {
    if (!bound.deadline.bounded()) continue;
    const Time d = bound.deadline.at();
    Time due = 0;
    for (const Packet& p : set) due += (p.deadline <= bound.deadline) ? 1 : 0;
    if (due > d - t + 1) return false;
  }
  return true;
}

// Maximum value over all Hall-feasible subsets of `pending` at step t.
inline double brute_provisional_value(std::span<const Packet> pending, Time t) {
  const std::size_t n = pending.size();
  double best = 0.0;
  std::vector<Packet> subset;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    subset.clear();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        subset.push_back(pending[i]);
        total += pending[i].value;
      }
    }
    if (total > best && hall_feasible(subset, t)) best = total;
  }
  return best;
}

// Offline optimum by dynamic programming over slots 1..horizon with the set
// of already-sent packets as state. Exponential in n; for n <= 12.
inline double dp_optimal(const Instance& inst, Time horizon) {
  const std::size_t n = inst.packets.size();
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> best(states, -1.0), next(states);
  best[0] = 0.0;
  for (Time t = 1; t <= horizon; ++t) {
    next = best;  // idle step
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (best[mask] < 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const Packet& p = inst.packets[i];
        if ((mask >> i) & 1u) continue;
        if (p.release > t || !p.deadline.alive_at(t)) continue;
        const std::size_t m2 = mask | (std::size_t{1} << i);
        next[m2] = std::max(next[m2], best[mask] + p.value);
      }
    }
    best.swap(next);
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace testing_support
