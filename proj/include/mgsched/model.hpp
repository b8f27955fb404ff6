#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mgsched {

using Time = std::int64_t;
using PacketId = std::int64_t;

// A packet deadline: either a concrete step or UNBOUNDED, which orders
// strictly after every bounded deadline and equal to itself.
class Deadline {
 public:
  constexpr Deadline() = default;
  constexpr explicit Deadline(Time at) : bounded_(true), at_(at) {}
  static constexpr Deadline unbounded() { return Deadline{}; }

  constexpr bool bounded() const { return bounded_; }
  // Only meaningful when bounded().
  constexpr Time at() const { return at_; }

  // True iff a packet with this deadline may still be sent at step t.
  constexpr bool alive_at(Time t) const { return !bounded_ || at_ >= t; }

  friend constexpr bool operator==(const Deadline& a, const Deadline& b) {
    return a.bounded_ == b.bounded_ && (!a.bounded_ || a.at_ == b.at_);
  }
  friend constexpr std::strong_ordering operator<=>(const Deadline& a, const Deadline& b) {
    if (a.bounded_ != b.bounded_) {
      return a.bounded_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (!a.bounded_) return std::strong_ordering::equal;
    return a.at_ <=> b.at_;
  }

 private:
  bool bounded_ = false;
  Time at_ = 0;
};

struct Packet {
  PacketId id = 0;
  Time release = 1;
  Deadline deadline;
  double value = 1.0;

  // Slack d - r; nullopt stands for unbounded slack.
  std::optional<Time> slack() const {
    if (!deadline.bounded()) return std::nullopt;
    return deadline.at() - release;
  }
};

struct Instance {
  std::vector<Packet> packets;
  // Generator descriptor (variant, seed, parameters). Null when absent.
  nlohmann::ordered_json meta;
};

// Last step at which any packet of the instance can still be sent: the
// largest bounded deadline, extended to max(release) + |packets| when some
// deadline is unbounded. Zero for the empty instance.
Time horizon(const Instance& inst);

enum class Rule {
  duplicate_id,
  negative_id,
  release_before_one,
  deadline_before_release,
  non_positive_value,
  non_finite_value,
};

const char* to_string(Rule rule) noexcept;

struct Violation {
  PacketId packet_id;
  Rule rule;
  std::string message;
};

std::vector<Violation> validate_instance(const Instance& inst);

// Throws Error(invalid_instance) naming the first violation.
void require_valid(const Instance& inst);

// The eight restricted settings. Each condition reads "for any two packets
// p, q with key(p) <= key(q), value(p) <= value(q)" (agreeable) or ">="
// (anti-agreeable), for the key/value pairs listed per enumerator.
enum class Variant {
  general,
  agreeable_deadline,                 // release -> deadline
  anti_agreeable_deadline,
  agreeable_value,                    // release -> value
  anti_agreeable_value,
  agreeable_deadline_value,           // deadline -> value
  anti_agreeable_deadline_value,
  agreeable_slack_value,              // slack -> value
  anti_agreeable_slack_value,
};

inline constexpr Variant kAllVariants[] = {
    Variant::general,
    Variant::agreeable_deadline,
    Variant::anti_agreeable_deadline,
    Variant::agreeable_value,
    Variant::anti_agreeable_value,
    Variant::agreeable_deadline_value,
    Variant::anti_agreeable_deadline_value,
    Variant::agreeable_slack_value,
    Variant::anti_agreeable_slack_value,
};

std::string_view to_string(Variant v) noexcept;
// Accepts the canonical names ("agreeable-deadline/value") and the
// slash-free aliases ("agreeable-deadline-value").
std::optional<Variant> parse_variant(std::string_view name);

struct VariantClass {
  bool agreeable_deadline = true;
  bool anti_agreeable_deadline = true;
  bool agreeable_value = true;
  bool anti_agreeable_value = true;
  bool agreeable_deadline_value = true;
  bool anti_agreeable_deadline_value = true;
  bool agreeable_slack_value = true;
  bool anti_agreeable_slack_value = true;

  // general always holds.
  bool holds(Variant v) const;
  bool operator==(const VariantClass&) const = default;
};

VariantClass classify_variants(const Instance& inst);

}  // namespace mgsched
