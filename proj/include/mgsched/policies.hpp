#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgsched/model.hpp"
#include "mgsched/provisional.hpp"

namespace mgsched {

inline constexpr double kPhi = std::numbers::phi;
inline constexpr double kPhiSquared = std::numbers::phi * std::numbers::phi;

enum class PolicyKind { mg, edf_alpha, greedy };

const char* to_string(PolicyKind kind) noexcept;

struct PolicyParams {
  PolicyKind kind = PolicyKind::mg;
  // nullopt is the unbounded alpha: v_h / alpha is then taken as 0.
  std::optional<double> alpha = 1.0;
  double beta = 1.0;

  static PolicyParams mg(std::optional<double> alpha, double beta) {
    return {PolicyKind::mg, alpha, beta};
  }
  static PolicyParams edf(std::optional<double> alpha) { return {PolicyKind::edf_alpha, alpha, 1.0}; }
  static PolicyParams greedy() { return {PolicyKind::greedy, 1.0, 1.0}; }

  // Throws Error(invalid_argument) unless 1 <= beta <= alpha (MG) and
  // alpha >= 1 for the alpha-based kinds.
  void validate() const;
};

// v_h / alpha, or 0 when alpha is unbounded.
double value_floor(double max_value, std::optional<double> alpha);

// MG decision on an optimal provisional schedule: the first entry e when
// v_e >= v_h / alpha, otherwise the first entry f (canonical order) with
// v_f >= max(v_h / alpha, beta * v_e).
const Packet& mg_select(const ProvisionalSchedule& s, const PolicyParams& params);

// Earliest-deadline packet among those worth at least max_value / alpha;
// ties by higher value, then smaller id. Works on the raw buffer.
const Packet& edf_alpha_select(std::span<const Packet> pending, Time t, std::optional<double> alpha);

// Highest-value pending packet; ties by earlier deadline, then smaller id.
const Packet& greedy_select(std::span<const Packet> pending, Time t);

struct TraceStep {
  Time t = 0;
  std::optional<PacketId> sent;
  double sent_value = 0.0;
  std::size_t buffer_size = 0;
  double schedule_value = 0.0;
};

struct SimulationTrace {
  std::vector<TraceStep> steps;
  double total_value = 0.0;
  // Packets that reached their deadline unsent, in drop order.
  std::vector<PacketId> dropped_expired;

  std::size_t sent_count() const;
};

struct SimulateOptions {
  // Verify on every step that the provisional schedule is value
  // non-increasing across strictly increasing deadlines; throws
  // Error(invariant_violation) at the first step where it is not.
  bool check_slack_order = false;
};

// Runs the policy over steps 1..horizon(inst). Each step admits arrivals,
// drops expired packets, then sends at most one packet.
SimulationTrace simulate(const Instance& inst, const PolicyParams& params,
                         const SimulateOptions& options = {});

}  // namespace mgsched
