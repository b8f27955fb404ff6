#include "mgsched/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mgsched/error.hpp"
#include "mgsched/policies.hpp"

namespace mgsched {

namespace {

// Rejection sampling on the raw engine output; unlike the standard
// distributions this is identical across standard library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::int64_t grid_lo(double lo) { return std::max<std::int64_t>(1, std::ceil(lo / kValueGridStep)); }
std::int64_t grid_hi(double hi) { return static_cast<std::int64_t>(std::floor(hi / kValueGridStep)); }

// Re-pairs one coordinate against another: packets sorted by key receive
// the drawn coordinate values in ascending (agreeable) or descending
// (anti-agreeable) order, and every group of equal keys is flattened to
// its largest received value.
template <class KeyFn, class Get, class Set>
void couple(std::vector<Packet>& packets, bool ascending, KeyFn key, Get get, Set set) {
  std::vector<std::size_t> idx(packets.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return key(packets[a]) < key(packets[b]); });

  using Coord = decltype(get(packets.front()));
  std::vector<Coord> coords;
  coords.reserve(packets.size());
  for (const auto& p : packets) coords.push_back(get(p));
  std::sort(coords.begin(), coords.end());
  if (!ascending) std::reverse(coords.begin(), coords.end());

  for (std::size_t begin = 0; begin < idx.size();) {
    std::size_t end = begin + 1;
    while (end < idx.size() && key(packets[idx[end]]) == key(packets[idx[begin]])) ++end;
    Coord top = *std::max_element(coords.begin() + static_cast<std::ptrdiff_t>(begin),
                                  coords.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t j = begin; j < end; ++j) set(packets[idx[j]], top);
    begin = end;
  }
}

}  // namespace

void GenSpec::validate() const {
  if (max_slack < 0) throw Error(Errc::invalid_argument, "max_slack must be >= 0");
  if (!(value_lo > 0.0) || !std::isfinite(value_hi) || value_hi < value_lo) {
    throw Error(Errc::invalid_argument, "value range must satisfy 0 < lo <= hi < inf");
  }
  if (grid_lo(value_lo) > grid_hi(value_hi)) {
    throw Error(Errc::infeasible_spec, "value range contains no multiple of 1/64");
  }
}

Instance generate(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t release_span = std::max<std::uint64_t>(1, (spec.n + 1) / 2);
  const std::int64_t vlo = grid_lo(spec.value_lo);
  const std::uint64_t vcount = static_cast<std::uint64_t>(grid_hi(spec.value_hi) - vlo + 1);

  std::vector<Packet> packets(spec.n);
  for (auto& p : packets) {
    p.release = 1 + static_cast<Time>(draw_below(rng, release_span));
    p.deadline = Deadline(p.release + static_cast<Time>(draw_below(rng, spec.max_slack + 1)));
    p.value = static_cast<double>(vlo + static_cast<std::int64_t>(draw_below(rng, vcount))) *
              kValueGridStep;
  }
  std::stable_sort(packets.begin(), packets.end(),
                   [](const Packet& a, const Packet& b) { return a.release < b.release; });
  for (std::size_t i = 0; i < packets.size(); ++i) packets[i].id = static_cast<PacketId>(i);

  auto release = [](const Packet& p) { return p.release; };
  auto deadline = [](const Packet& p) { return p.deadline.at(); };
  auto slack = [](const Packet& p) { return p.deadline.at() - p.release; };
  auto value = [](const Packet& p) { return p.value; };
  auto set_deadline = [](Packet& p, Time d) { p.deadline = Deadline(d); };
  auto set_value = [](Packet& p, double v) { p.value = v; };

  if (!packets.empty()) {
    switch (spec.variant) {
      case Variant::general: break;
      case Variant::agreeable_deadline:
        couple(packets, true, release, deadline, set_deadline);
        break;
      case Variant::anti_agreeable_deadline: {
        // Later releases need earlier deadlines, so every deadline sits at or
        // after the last release.
        const Time last = packets.back().release;
        for (auto& p : packets) p.deadline = Deadline(last + (p.deadline.at() - p.release));
        couple(packets, false, release, deadline, set_deadline);
        break;
      }
      case Variant::agreeable_value: couple(packets, true, release, value, set_value); break;
      case Variant::anti_agreeable_value: couple(packets, false, release, value, set_value); break;
      case Variant::agreeable_deadline_value:
        couple(packets, true, deadline, value, set_value);
        break;
      case Variant::anti_agreeable_deadline_value:
        couple(packets, false, deadline, value, set_value);
        break;
      case Variant::agreeable_slack_value: couple(packets, true, slack, value, set_value); break;
      case Variant::anti_agreeable_slack_value:
        couple(packets, false, slack, value, set_value);
        break;
    }
  }

  Instance inst;
  inst.packets = std::move(packets);
  inst.meta = {{"generator", "random"},
               {"variant", std::string(to_string(spec.variant))},
               {"n", spec.n},
               {"seed", spec.seed},
               {"maxSlack", spec.max_slack},
               {"valueLo", spec.value_lo},
               {"valueHi", spec.value_hi}};
  return inst;
}

void LowerBoundSpec::validate() const {
  if (k < 1 || k > 40) throw Error(Errc::invalid_argument, "k must be in 1..40");
  const double cap = 1.0 / (10.0 * std::pow(kPhi, k + 1));
  if (!(epsilon > 0.0) || !(epsilon < cap)) {
    throw Error(Errc::invalid_argument,
                "epsilon must lie in (0, 1 / (10 phi^(k+1))) = (0, " + std::to_string(cap) + ")");
  }
}

namespace {

struct StageDecision {
  double e;           // value at the head of the provisional schedule
  double before_h;    // largest value between e and h
  double h;
};

// MG(phi, phi) must skip e, skip everything before h, and accept h.
void check_margins(const StageDecision& d, double required, int stage) {
  const double floor = d.h / kPhi;
  const double threshold = std::max(floor, kPhi * d.e);
  const double margins[] = {floor - d.e, threshold - d.before_h, d.h - threshold};
  for (double m : margins) {
    if (!(m >= required)) {
      throw Error(Errc::invariant_violation,
                  "lower-bound stage " + std::to_string(stage) + " has a decision margin of " +
                      std::to_string(m));
    }
  }
}

}  // namespace

Instance generate_lower_bound(const LowerBoundSpec& spec) {
  spec.validate();
  const int k = spec.k;
  const double eps = spec.epsilon;
  const double required = eps * (kPhi - 1.0) * (1.0 - 1e-6);

  std::vector<Time> lengths;
  for (int i = 1; i <= k - 1; ++i) lengths.push_back((Time{1} << (k + 1 - i)) + 1);
  const Time final_length = lengths.empty() ? 1 : lengths.back();
  const Time base_deadline = (Time{1} << (k + 1)) + 2;

  Instance inst;
  PacketId next_id = 0;
  Time t = 0;
  auto emit = [&](Deadline d, double v) { inst.packets.push_back({next_id++, t, d, v}); };

  const double e_value = 1.0 - eps;
  double w = kPhi - 3.0 * eps;
  double previous_w = e_value;
  for (int stage = 1; stage <= k - 1; ++stage) {
    if (stage > 1) w = kPhi * w - eps;
    const double h_value = std::pow(kPhi, stage);
    const double head = stage == 1 ? e_value : previous_w;
    check_margins({head, std::max(head, w), h_value}, required, stage);
    for (Time s = 0; s < lengths[static_cast<std::size_t>(stage - 1)]; ++s) {
      ++t;
      if (stage == 1) emit(Deadline(t), e_value);
      emit(Deadline(base_deadline + stage - 1), w);
      emit(Deadline::unbounded(), h_value);
    }
    previous_w = w;
  }

  const double f_final = std::pow(kPhi, k);
  const double h_final = std::pow(kPhi, k + 1) + eps;
  check_margins({f_final, f_final, h_final}, required, k);
  for (Time s = 0; s < final_length; ++s) {
    ++t;
    emit(Deadline(t), f_final);
    emit(Deadline::unbounded(), h_final);
  }

  inst.meta = {{"generator", "lower-bound"},
               {"k", k},
               {"epsilon", eps},
               {"stageLengths", lengths},
               {"finalLength", final_length}};
  return inst;
}

double lb_ratio_formula(int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be >= 1");
  const double g = std::pow(2.0 / kPhi, k);
  return (2.0 * g - kPhiSquared / 2.0) / (g - 0.5);
}

}  // namespace mgsched
