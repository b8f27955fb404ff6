#include <cmath>
#include <set>

#include "doctest.h"
#include "mgsched/error.hpp"
#include "mgsched/generators.hpp"
#include "mgsched/policies.hpp"

using namespace mgsched;

namespace {

bool same_packets(const Instance& a, const Instance& b) {
  if (a.packets.size() != b.packets.size()) return false;
  for (std::size_t i = 0; i < a.packets.size(); ++i) {
    const auto& p = a.packets[i];
    const auto& q = b.packets[i];
    if (p.id != q.id || p.release != q.release || !(p.deadline == q.deadline) || p.value != q.value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generate with n = 0 gives an empty instance with metadata") {
  const auto inst = generate({Variant::general, 0, 8, 1.0, 64.0, 0});
  CHECK(inst.packets.empty());
  CHECK(inst.meta["variant"] == "general");
  CHECK(inst.meta["n"] == 0);
}

TEST_CASE("generate is a pure function of its parameters") {
  for (Variant v : kAllVariants) {
    const GenSpec spec{v, 60, 8, 1.0, 64.0, 42};
    CHECK(same_packets(generate(spec), generate(spec)));
    CHECK(generate(spec).meta == generate(spec).meta);
    GenSpec other = spec;
    other.seed = 43;
    CHECK_FALSE(same_packets(generate(spec), generate(other)));
  }
}

TEST_CASE("generated instances satisfy their variant and the packet invariants") {
  for (Variant v : kAllVariants) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const std::size_t n = 1 + seed % 50;
      const GenSpec spec{v, n, static_cast<Time>(seed % 10), 1.0, 64.0, seed};
      const auto inst = generate(spec);
      INFO(to_string(v) << " seed " << seed);
      REQUIRE(inst.packets.size() == n);
      CHECK(validate_instance(inst).empty());
      CHECK(classify_variants(inst).holds(v));
      for (std::size_t i = 0; i < n; ++i) {
        const auto& p = inst.packets[i];
        CHECK(p.id == static_cast<PacketId>(i));
        CHECK(p.deadline.bounded());
        CHECK(p.value >= 1.0);
        CHECK(p.value <= 64.0);
        CHECK(p.value * 64.0 == std::floor(p.value * 64.0));
      }
    }
  }
}

TEST_CASE("generate examples for two variants") {
  CHECK(classify_variants(generate({Variant::anti_agreeable_value, 50, 8, 1.0, 64.0, 7})).anti_agreeable_value);
  const auto dv = generate({Variant::agreeable_deadline_value, 50, 8, 1.0, 64.0, 7});
  for (const auto& p : dv.packets) {
    for (const auto& q : dv.packets) {
      if (p.deadline <= q.deadline) CHECK(p.value <= q.value);
    }
  }
}

TEST_CASE("generate validates its parameters") {
  CHECK_THROWS_AS(generate({Variant::general, 5, -1, 1.0, 64.0, 0}), Error);
  CHECK_THROWS_AS(generate({Variant::general, 5, 8, 0.0, 64.0, 0}), Error);
  CHECK_THROWS_AS(generate({Variant::general, 5, 8, 4.0, 2.0, 0}), Error);
  try {
    generate({Variant::general, 5, 8, 1.001, 1.002, 0});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_spec);
  }
}

TEST_CASE("lower-bound family: structure and metadata") {
  for (int k = 1; k <= 8; ++k) {
    const auto inst = generate_lower_bound({k, 1e-6});
    INFO("k = " << k);
    CHECK(validate_instance(inst).empty());
    CHECK(inst.meta["generator"] == "lower-bound");
    CHECK(inst.meta["k"] == k);
    CHECK(inst.meta["epsilon"] == 1e-6);
    std::set<PacketId> ids;
    for (const auto& p : inst.packets) ids.insert(p.id);
    CHECK(ids.size() == inst.packets.size());
  }
}

TEST_CASE("lower-bound family: MG(phi, phi) sends only h-packets") {
  for (int k = 1; k <= 8; ++k) {
    const auto inst = generate_lower_bound({k, 1e-6});
    std::set<PacketId> h_ids;
    for (const auto& p : inst.packets) {
      if (!p.deadline.bounded()) h_ids.insert(p.id);
    }
    const auto trace = simulate(inst, PolicyParams::mg(kPhi, kPhi));
    INFO("k = " << k);
    CHECK(trace.sent_count() == h_ids.size());
    for (const auto& step : trace.steps) {
      if (step.sent) CHECK(h_ids.count(*step.sent) == 1);
    }
  }
}

TEST_CASE("lower-bound parameter validation") {
  CHECK_THROWS_AS(generate_lower_bound({0, 1e-6}), Error);
  CHECK_THROWS_AS(generate_lower_bound({3, 0.0}), Error);
  // epsilon must stay below 1 / (10 phi^(k+1))
  CHECK_THROWS_AS(generate_lower_bound({3, 0.1}), Error);
  CHECK_NOTHROW(generate_lower_bound({3, 0.9 / (10.0 * std::pow(kPhi, 4))}));
}

TEST_CASE("lb_ratio_formula") {
  double prev = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double r = lb_ratio_formula(k);
    INFO("k = " << k);
    CHECK(r > 1.0);
    CHECK(r < 2.0);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(std::abs(lb_ratio_formula(60) - 2.0) < 1e-6);
  // k = 1: (4/phi - phi^2/2) / (2/phi - 1/2)
  const double expected = (4.0 / kPhi - kPhiSquared / 2.0) / (2.0 / kPhi - 0.5);
  CHECK(lb_ratio_formula(1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(lb_ratio_formula(0), Error);
}
