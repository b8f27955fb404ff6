#pragma once

#include <cstddef>
#include <cstdint>

#include "mgsched/model.hpp"

namespace mgsched {

// Values are drawn from multiples of this step so that sums and ratio
// comparisons stay exact in binary floating point.
inline constexpr double kValueGridStep = 1.0 / 64.0;

struct GenSpec {
  Variant variant = Variant::general;
  std::size_t n = 0;
  Time max_slack = 8;
  double value_lo = 1.0;
  double value_hi = 64.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Releases fall in 1..max(1, ceil(n / 2)), slacks in 0..max_slack and values
// on the grid inside [value_lo, value_hi]. The requested variant is then
// imposed by re-pairing the drawn coordinates monotonically, giving packets
// with equal keys equal coupled coordinates.
Instance generate(const GenSpec& spec);

struct LowerBoundSpec {
  int k = 1;
  double epsilon = 1e-6;

  void validate() const;
};

// Adversarial family against MG with alpha = beta = phi, k stages.
//
// Stage i (1 <= i <= k-1) lasts 2^(k+1-i) + 1 steps. Every step of stage i
// releases an f-packet with deadline D + i - 1 (D = 2^(k+1) + 2) and an
// h-packet of value phi^i with unbounded deadline; stage 1 also releases an
// e-packet of value 1 - eps that expires in the step it arrives. f-values
// follow w_1 = phi - 3 eps and w_i = phi * w_(i-1) - eps. A final stage,
// as long as stage k-1 (one step when k = 1), releases f = (phi^k, expires
// on arrival) and h = phi^(k+1) + eps per step.
//
// The lengths keep exactly the f-packets of the previous stage at the head
// of MG's provisional schedule (each step evicts two of them), so MG sends
// the h-packet of every step and lets every e- and f-packet expire while an
// offline schedule delivers each f on arrival and all h-packets later.
// The h-packets are exactly the packets with an unbounded deadline.
//
// With e = 1 + eps, MG's non-strict "v_e >= v_h / alpha" test would send e;
// with e = 1 - eps and f = phi - eps it would send f. The offsets above keep
// every decision margin at least eps * (phi - 1), which generation asserts.
Instance generate_lower_bound(const LowerBoundSpec& spec);

// Epsilon-free closed form (2 (2/phi)^k - phi^2 / 2) / ((2/phi)^k - 1/2).
double lb_ratio_formula(int k);

}  // namespace mgsched
