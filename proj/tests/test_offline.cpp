#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "mgsched/error.hpp"
#include "mgsched/generators.hpp"
#include "mgsched/offline.hpp"
#include "support.hpp"

using namespace mgsched;
using testing_support::make;
using testing_support::pk;
using testing_support::pku;

namespace {

void check_schedule(const Instance& inst, const OffSchedule& s) {
  std::map<PacketId, Packet> by_id;
  for (const auto& p : inst.packets) by_id[p.id] = p;
  std::set<Time> slots;
  std::set<PacketId> ids;
  double total = 0.0;
  for (std::size_t i = 0; i < s.assignments.size(); ++i) {
    const auto& a = s.assignments[i];
    const Packet& p = by_id.at(a.packet_id);
    CHECK(p.release <= a.slot);
    CHECK(p.deadline.alive_at(a.slot));
    CHECK(slots.insert(a.slot).second);
    CHECK(ids.insert(a.packet_id).second);
    if (i > 0) CHECK(s.assignments[i - 1].slot < a.slot);
    total += p.value;
  }
  CHECK(s.total_value == doctest::Approx(total).epsilon(1e-12));
}

}  // namespace

TEST_CASE("offline_optimal examples") {
  CHECK(offline_optimal(make({pk(0, 1, 1, 4)})).total_value == 4);
  CHECK(offline_optimal(make({pk(0, 1, 1, 1), pk(1, 1, 1, 3)})).total_value == 3);
  // slot 1 -> v=1, slot 2 -> v=10 beats keeping v=2
  const auto inst = make({pk(0, 1, 1, 1), pk(1, 1, 2, 10), pk(2, 2, 2, 2)});
  CHECK(offline_optimal(inst).total_value == 12);
  CHECK(testing_support::dp_optimal(inst, horizon(inst)) == 12);
  CHECK(offline_optimal(Instance{}).total_value == 0);
}

TEST_CASE("brute_force_optimal examples and limit") {
  CHECK(brute_force_optimal(Instance{}).total_value == 0);
  CHECK(brute_force_optimal(make({pku(0, 3, 2.5)})).total_value == 2.5);
  std::vector<Packet> many;
  for (int i = 0; i < 11; ++i) many.push_back(pk(i, 1, 20, 1));
  try {
    brute_force_optimal(make(many));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_limit);
  }
}

TEST_CASE("offline_optimal rejects invalid instances") {
  CHECK_THROWS_AS(offline_optimal(make({pk(0, 1, 1, -1)})), Error);
}

TEST_CASE("offline_optimal agrees with brute force and slot DP") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 1500; ++trial) {
    testing_support::RandomShape shape;
    shape.n = static_cast<int>(testing_support::uniform(rng, 0, 9));
    shape.max_release = testing_support::uniform(rng, 1, 6);
    shape.max_slack = testing_support::uniform(rng, 0, 5);
    shape.value_hi = static_cast<int>(testing_support::uniform(rng, 1, 10));
    shape.unbounded_percent = 15;
    const auto inst = testing_support::random_instance(rng, shape);
    INFO("trial " << trial);
    const auto opt = offline_optimal(inst);
    check_schedule(inst, opt);
    CHECK(opt.total_value == brute_force_optimal(inst).total_value);
    CHECK(opt.total_value == testing_support::dp_optimal(inst, horizon(inst)));
  }
}

TEST_CASE("widening the horizon never increases OPT") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 400; ++trial) {
    testing_support::RandomShape shape;
    shape.n = static_cast<int>(testing_support::uniform(rng, 1, 20));
    shape.unbounded_percent = 40;
    const auto inst = testing_support::random_instance(rng, shape);
    const double base = offline_optimal(inst).total_value;
    OfflineOptions wide;
    wide.horizon = horizon(inst) + 50;
    CHECK(offline_optimal(inst, wide).total_value == base);
  }
}

TEST_CASE("a short horizon cap limits the slots") {
  const auto inst = make({pku(0, 1, 5), pku(1, 1, 4), pku(2, 1, 3)});
  OfflineOptions cap;
  cap.horizon = 2;
  CHECK(offline_optimal(inst, cap).total_value == 9);
  CHECK(offline_optimal(inst).total_value == 12);
}

TEST_CASE("OPT dominates every policy") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto inst = generate({Variant::general, 40, 8, 1.0, 64.0, seed});
    const double opt = offline_optimal(inst).total_value;
    for (auto params : {PolicyParams::mg(kPhi, kPhi), PolicyParams::mg(2.0, 1.0), PolicyParams::edf(kPhi),
                        PolicyParams::greedy(), PolicyParams::mg(std::nullopt, 1.0)}) {
      const auto r = empirical_ratio(inst, params);
      CHECK(r.opt_value == opt);
      CHECK(r.alg_value <= opt);
      CHECK(r.ratio >= 1.0);
    }
  }
}

TEST_CASE("make_ratio conventions") {
  CHECK(make_ratio(0.0, 0.0).ratio == 1.0);
  CHECK(std::isinf(make_ratio(3.0, 0.0).ratio));
  CHECK(make_ratio(3.0, 2.0).ratio == 1.5);
  CHECK(make_ratio(2.0, 2.0).ratio == 1.0);
}

TEST_CASE("empirical_ratio is 1 when the policy is optimal") {
  const auto inst = make({pk(0, 1, 1, 1), pk(1, 1, 2, 10)});
  const auto r = empirical_ratio(inst, PolicyParams::mg(std::nullopt, 1.0));
  CHECK(r.opt_value == 11);
  CHECK(r.alg_value == 11);
  CHECK(r.ratio == 1.0);
}

TEST_CASE("offline_optimal scales to the large lower-bound instances") {
  const auto inst = generate_lower_bound({10, 1e-6});
  const auto opt = offline_optimal(inst);
  check_schedule(inst, opt);
  const auto mg = simulate(inst, PolicyParams::mg(kPhi, kPhi));
  CHECK(opt.total_value > 1.9 * mg.total_value);
}
