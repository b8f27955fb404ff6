#include <algorithm>
#include <random>

#include "doctest.h"
#include "mgsched/error.hpp"
#include "mgsched/generators.hpp"
#include "mgsched/model.hpp"
#include "support.hpp"

using namespace mgsched;
using testing_support::make;
using testing_support::pk;
using testing_support::pku;

namespace {

bool has_rule(const std::vector<Violation>& vs, Rule rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

// Direct evaluation of "key(p) <= key(q) implies val(p) <= val(q)" (or >=)
// over all ordered pairs.
template <class Key, class Val>
bool pairwise(const Instance& inst, bool agreeable, Key key, Val val) {
  for (const Packet& p : inst.packets) {
    for (const Packet& q : inst.packets) {
      if (!(key(p) <= key(q))) continue;
      if (agreeable ? !(val(p) <= val(q)) : !(val(p) >= val(q))) return false;
    }
  }
  return true;
}

// Unbounded slack orders after every bounded slack.
std::pair<int, Time> slack_key(const Packet& p) {
  auto s = p.slack();
  return s ? std::pair<int, Time>{0, *s} : std::pair<int, Time>{1, 0};
}

VariantClass oracle_classify(const Instance& inst) {
  auto rel = [](const Packet& p) { return p.release; };
  auto dl = [](const Packet& p) { return p.deadline; };
  auto val = [](const Packet& p) { return p.value; };
  VariantClass c;
  c.agreeable_deadline = pairwise(inst, true, rel, dl);
  c.anti_agreeable_deadline = pairwise(inst, false, rel, dl);
  c.agreeable_value = pairwise(inst, true, rel, val);
  c.anti_agreeable_value = pairwise(inst, false, rel, val);
  c.agreeable_deadline_value = pairwise(inst, true, dl, val);
  c.anti_agreeable_deadline_value = pairwise(inst, false, dl, val);
  c.agreeable_slack_value = pairwise(inst, true, slack_key, val);
  c.anti_agreeable_slack_value = pairwise(inst, false, slack_key, val);
  return c;
}

}  // namespace

TEST_CASE("deadline ordering puts unbounded last") {
  CHECK(Deadline(5) < Deadline::unbounded());
  CHECK(Deadline(1000000000) < Deadline::unbounded());
  CHECK(Deadline::unbounded() == Deadline::unbounded());
  CHECK(Deadline(3) == Deadline(3));
  CHECK_FALSE(Deadline(3) == Deadline::unbounded());
  CHECK(Deadline::unbounded().alive_at(1LL << 60));
  CHECK(Deadline(4).alive_at(4));
  CHECK_FALSE(Deadline(4).alive_at(5));
}

TEST_CASE("validate_instance examples") {
  CHECK(validate_instance(make({pk(0, 1, 1, 1.0)})).empty());

  auto v = validate_instance(make({pk(0, 1, 0, 1.0)}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Rule::deadline_before_release);
  CHECK(v[0].packet_id == 0);

  v = validate_instance(make({pk(3, 1, 1, 0.0)}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Rule::non_positive_value);
  CHECK(v[0].packet_id == 3);
}

TEST_CASE("validate_instance flags each rule") {
  CHECK(has_rule(validate_instance(make({pk(1, 1, 2, 1.0), pk(1, 2, 3, 2.0)})), Rule::duplicate_id));
  CHECK(has_rule(validate_instance(make({pk(-1, 1, 2, 1.0)})), Rule::negative_id));
  CHECK(has_rule(validate_instance(make({pk(0, 0, 2, 1.0)})), Rule::release_before_one));
  CHECK(has_rule(validate_instance(make({pk(0, 1, 2, -3.0)})), Rule::non_positive_value));
  CHECK(has_rule(validate_instance(make({pk(0, 1, 2, std::numeric_limits<double>::infinity())})),
                 Rule::non_finite_value));
  CHECK(has_rule(validate_instance(make({pk(0, 1, 2, std::numeric_limits<double>::quiet_NaN())})),
                 Rule::non_finite_value));
  CHECK(validate_instance(make({pku(0, 7, 2.0), pk(1, 7, 7, 2.0)})).empty());
  CHECK(validate_instance(Instance{}).empty());
}

TEST_CASE("require_valid throws invalid_instance") {
  try {
    require_valid(make({pk(0, 1, 0, 1.0)}));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_instance);
  }
  CHECK_NOTHROW(require_valid(make({pk(0, 1, 1, 1.0)})));
}

TEST_CASE("horizon") {
  CHECK(horizon(Instance{}) == 0);
  CHECK(horizon(make({pk(0, 1, 4, 1.0), pk(1, 2, 9, 1.0)})) == 9);
  // max release 5 plus 3 packets
  CHECK(horizon(make({pk(0, 1, 4, 1.0), pku(1, 5, 1.0), pk(2, 3, 3, 1.0)})) == 8);
  // a bounded deadline beyond that extension still wins
  CHECK(horizon(make({pk(0, 1, 40, 1.0), pku(1, 2, 1.0)})) == 40);
}

TEST_CASE("classify_variants examples") {
  auto c = classify_variants(make({pk(0, 1, 1, 5.0), pk(1, 2, 3, 1.0)}));
  CHECK(c.agreeable_deadline);
  CHECK(c.anti_agreeable_value);
  CHECK_FALSE(c.agreeable_value);

  CHECK(classify_variants(Instance{}) == VariantClass{});

  auto ties = classify_variants(make({pk(0, 1, 2, 1.0), pk(1, 2, 2, 1.0)}));
  CHECK(ties == VariantClass{});
  for (Variant v : kAllVariants) CHECK(ties.holds(v));
}

TEST_CASE("classify_variants handles unbounded deadlines and slacks") {
  // release order 1 < 2, deadlines 5 < inf: agreeable deadline.
  auto c = classify_variants(make({pk(0, 1, 5, 2.0), pku(1, 2, 1.0)}));
  CHECK(c.agreeable_deadline);
  CHECK_FALSE(c.anti_agreeable_deadline);
  CHECK(c.anti_agreeable_deadline_value);
  CHECK(c.anti_agreeable_slack_value);
  CHECK_FALSE(c.agreeable_slack_value);
}

TEST_CASE("classify_variants matches the pairwise oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    testing_support::RandomShape shape;
    shape.n = static_cast<int>(testing_support::uniform(rng, 0, 6));
    shape.max_release = testing_support::uniform(rng, 1, 4);
    shape.max_slack = testing_support::uniform(rng, 0, 3);
    shape.value_hi = static_cast<int>(testing_support::uniform(rng, 1, 3));
    shape.unbounded_percent = 20;
    auto inst = testing_support::random_instance(rng, shape);
    // Coarse values make ties and coupled instances frequent.
    for (auto& p : inst.packets) p.value = std::floor(p.value);
    INFO("trial " << trial);
    CHECK(classify_variants(inst) == oracle_classify(inst));
  }
}

TEST_CASE("classify_variants is monotone under packet removal") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Variant v = kAllVariants[trial % 9];
    auto inst = generate({v, 12, 3, 1.0, 4.0, static_cast<std::uint64_t>(trial)});
    const auto before = classify_variants(inst);
    const auto drop = static_cast<std::size_t>(testing_support::uniform(rng, 0, 11));
    inst.packets.erase(inst.packets.begin() + static_cast<std::ptrdiff_t>(drop));
    const auto after = classify_variants(inst);
    for (Variant w : kAllVariants) {
      if (before.holds(w)) CHECK(after.holds(w));
    }
  }
}

TEST_CASE("agreeable and anti-agreeable deadlines together force equal deadlines per release") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = generate({Variant::general, 8, 2, 1.0, 2.0, seed});
    const auto c = classify_variants(inst);
    if (!(c.agreeable_deadline && c.anti_agreeable_deadline)) continue;
    for (const auto& p : inst.packets) {
      for (const auto& q : inst.packets) {
        if (p.release == q.release) CHECK(p.deadline == q.deadline);
      }
    }
  }
}

TEST_CASE("reversing values turns agreeable value into anti-agreeable value") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = generate({Variant::agreeable_value, 20, 4, 1.0, 32.0, seed});
    REQUIRE(classify_variants(inst).agreeable_value);
    double c = 0.0;
    for (const auto& p : inst.packets) c = std::max(c, p.value);
    c += 1.0;
    for (auto& p : inst.packets) p.value = c - p.value;
    CHECK(classify_variants(inst).anti_agreeable_value);
  }
}

TEST_CASE("variant names round-trip") {
  for (Variant v : kAllVariants) {
    auto parsed = parse_variant(to_string(v));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
  CHECK(parse_variant("agreeable-deadline-value") == Variant::agreeable_deadline_value);
  CHECK(parse_variant("anti-agreeable-slack-value") == Variant::anti_agreeable_slack_value);
  CHECK_FALSE(parse_variant("sideways").has_value());
}
