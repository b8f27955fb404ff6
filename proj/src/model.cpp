#include "mgsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "mgsched/error.hpp"

namespace mgsched {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_instance: return "invalid instance";
    case Errc::empty_schedule: return "empty schedule";
    case Errc::empty_buffer: return "empty buffer";
    case Errc::size_limit: return "size limit exceeded";
    case Errc::premise_violation: return "premise violation";
    case Errc::domain_error: return "domain error";
    case Errc::infeasible_spec: return "infeasible spec";
    case Errc::io_error: return "i/o error";
    case Errc::parse_error: return "parse error";
    case Errc::invariant_violation: return "invariant violation";
  }
  return "unknown error";
}

Time horizon(const Instance& inst) {
  Time max_deadline = 0;
  Time max_release = 0;
  bool any_unbounded = false;
  for (const auto& p : inst.packets) {
    max_release = std::max(max_release, p.release);
    if (p.deadline.bounded()) {
      max_deadline = std::max(max_deadline, p.deadline.at());
    } else {
      any_unbounded = true;
    }
  }
  if (any_unbounded) {
    max_deadline = std::max(max_deadline, max_release + static_cast<Time>(inst.packets.size()));
  }
  return max_deadline;
}

const char* to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::duplicate_id: return "duplicate-id";
    case Rule::negative_id: return "negative-id";
    case Rule::release_before_one: return "release-before-one";
    case Rule::deadline_before_release: return "deadline-before-release";
    case Rule::non_positive_value: return "non-positive-value";
    case Rule::non_finite_value: return "non-finite-value";
  }
  return "unknown";
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  std::unordered_set<PacketId> seen;
  auto add = [&](const Packet& p, Rule rule, std::string detail) {
    out.push_back({p.id, rule,
                   "packet " + std::to_string(p.id) + ": " + to_string(rule) + " (" + detail + ")"});
  };
  for (const auto& p : inst.packets) {
    if (p.id < 0) add(p, Rule::negative_id, "id must be >= 0");
    if (!seen.insert(p.id).second) add(p, Rule::duplicate_id, "id already used");
    if (p.release < 1) add(p, Rule::release_before_one, "release=" + std::to_string(p.release));
    if (p.deadline.bounded() && p.deadline.at() < p.release) {
      add(p, Rule::deadline_before_release,
          "deadline=" + std::to_string(p.deadline.at()) + " < release=" + std::to_string(p.release));
    }
    if (!std::isfinite(p.value)) {
      add(p, Rule::non_finite_value, "value is not finite");
    } else if (p.value <= 0.0) {
      add(p, Rule::non_positive_value, "value must be > 0");
    }
  }
  return out;
}

void require_valid(const Instance& inst) {
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = violations.front().message;
    if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw Error(Errc::invalid_instance, msg);
  }
}

namespace {

struct VariantName {
  Variant variant;
  std::string_view canonical;
  std::string_view alias;
};

constexpr VariantName kNames[] = {
    {Variant::general, "general", "general"},
    {Variant::agreeable_deadline, "agreeable-deadline", "agreeable-deadline"},
    {Variant::anti_agreeable_deadline, "anti-agreeable-deadline", "anti-agreeable-deadline"},
    {Variant::agreeable_value, "agreeable-value", "agreeable-value"},
    {Variant::anti_agreeable_value, "anti-agreeable-value", "anti-agreeable-value"},
    {Variant::agreeable_deadline_value, "agreeable-deadline/value", "agreeable-deadline-value"},
    {Variant::anti_agreeable_deadline_value, "anti-agreeable-deadline/value",
     "anti-agreeable-deadline-value"},
    {Variant::agreeable_slack_value, "agreeable-slack/value", "agreeable-slack-value"},
    {Variant::anti_agreeable_slack_value, "anti-agreeable-slack/value",
     "anti-agreeable-slack-value"},
};

// Unbounded slack sorts after every bounded slack.
std::pair<bool, Time> slack_key(const Packet& p) {
  auto s = p.slack();
  return s ? std::pair{false, *s} : std::pair{true, Time{0}};
}

// Checks "key(p) <= key(q) implies val(p) <= val(q)" (or >= when anti) over
// all ordered pairs. Sorting by (key, val) reduces it to: equal keys carry
// equal values, and values are monotone across consecutive key groups.
template <class KeyFn, class ValFn>
std::pair<bool, bool> coupled(const std::vector<Packet>& packets, KeyFn key, ValFn val) {
  std::vector<std::size_t> idx(packets.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = packets[a];
    const auto& pb = packets[b];
    if (key(pa) != key(pb)) return key(pa) < key(pb);
    return val(pa) < val(pb);
  });
  bool agreeable = true;
  bool anti = true;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const auto& a = packets[idx[i - 1]];
    const auto& b = packets[idx[i]];
    if (key(a) == key(b)) {
      if (!(val(a) == val(b))) agreeable = anti = false;
    } else {
      if (val(b) < val(a)) agreeable = false;
      if (val(a) < val(b)) anti = false;
    }
  }
  return {agreeable, anti};
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  for (const auto& n : kNames) {
    if (n.variant == v) return n.canonical;
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (const auto& n : kNames) {
    if (name == n.canonical || name == n.alias) return n.variant;
  }
  return std::nullopt;
}

bool VariantClass::holds(Variant v) const {
  switch (v) {
    case Variant::general: return true;
    case Variant::agreeable_deadline: return agreeable_deadline;
    case Variant::anti_agreeable_deadline: return anti_agreeable_deadline;
    case Variant::agreeable_value: return agreeable_value;
    case Variant::anti_agreeable_value: return anti_agreeable_value;
    case Variant::agreeable_deadline_value: return agreeable_deadline_value;
    case Variant::anti_agreeable_deadline_value: return anti_agreeable_deadline_value;
    case Variant::agreeable_slack_value: return agreeable_slack_value;
    case Variant::anti_agreeable_slack_value: return anti_agreeable_slack_value;
  }
  return false;
}

VariantClass classify_variants(const Instance& inst) {
  const auto& ps = inst.packets;
  auto release = [](const Packet& p) { return p.release; };
  auto deadline = [](const Packet& p) { return p.deadline; };
  auto value = [](const Packet& p) { return p.value; };

  VariantClass c;
  std::tie(c.agreeable_deadline, c.anti_agreeable_deadline) = coupled(ps, release, deadline);
  std::tie(c.agreeable_value, c.anti_agreeable_value) = coupled(ps, release, value);
  std::tie(c.agreeable_deadline_value, c.anti_agreeable_deadline_value) =
      coupled(ps, deadline, value);
  std::tie(c.agreeable_slack_value, c.anti_agreeable_slack_value) = coupled(ps, slack_key, value);
  return c;
}

}  // namespace mgsched
