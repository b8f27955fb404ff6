#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mgsched/generators.hpp"
#include "mgsched/model.hpp"
#include "mgsched/policies.hpp"

namespace mgsched {

// ((2 - 1/alpha) alpha^k - alpha) / (alpha^k - 1). Requires alpha > 1, k >= 1.
double chain_bound(double alpha, int k);

// A chain of k charged steps: the offline side collects q, the online side p.
// Premises: q_i <= alpha p_i and q_i <= p_(i+1) for i < k, and q_k <= p_k.
struct ChainInstance {
  double alpha = kPhiSquared;
  std::vector<double> q;
  std::vector<double> p;

  int k() const { return static_cast<int>(p.size()); }
};

// Throws Error(premise_violation) naming the first broken premise.
void check_premises(const ChainInstance& c);

// sum(q) <= chain_bound(alpha, k) * sum(p), up to a relative 1e-12 for
// rounding. Premises are checked first.
bool check_chain(const ChainInstance& c);

// Premise-satisfying chain of length k: p drawn first (with geometric
// drift so long chains reach the extremes), then each q derived from its
// cap min(alpha p_i, p_(i+1)) (or p_k), hitting the cap half of the time.
ChainInstance random_chain(std::mt19937_64& rng, double alpha, int k);

// p_i = alpha^(i-1), q_i = p_(i+1) for i < k, q_k = p_k: every premise is
// tight and the bound is attained.
ChainInstance extremal_chain(double alpha, int k);

struct ChainCheckResult {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;        // sum(q) > chain_bound * sum(p)
  std::uint64_t limit_violations = 0;  // sum(q) > (2 - 1/alpha) * sum(p)
  double max_tightness = 0.0;          // max sum(q) / (chain_bound * sum(p))
};

ChainCheckResult chaincheck(double alpha, int k_max, std::uint64_t trials, std::uint64_t seed);

// Table-level claim for a (variant, policy) cell, when one exists.
std::optional<double> claimed_upper_bound(Variant v, const PolicyParams& params);

// Policy that the summary grid evaluates for each variant.
PolicyParams table_policy(Variant v);

struct SweepCell {
  Variant variant;
  PolicyParams params;
};

struct SweepConfig {
  std::vector<SweepCell> cells;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t n_min = 1;
  std::size_t n_max = 40;
  Time max_slack = 8;
  double value_lo = 1.0;
  double value_hi = 64.0;
  unsigned jobs = 1;
};

// Seed and size of one trial; with the config's slack and value range they
// reproduce the trial instance through generate().
std::uint64_t trial_seed(std::uint64_t base, Variant v, std::uint64_t trial);
std::size_t trial_size(std::uint64_t trial_seed, std::size_t n_min, std::size_t n_max);
GenSpec trial_spec(const SweepConfig& config, Variant v, std::uint64_t trial);

struct SweepRow {
  Variant variant = Variant::general;
  PolicyParams params;
  std::uint64_t trials = 0;
  double max_ratio = 1.0;
  double mean_ratio = 1.0;
  std::uint64_t argmax_seed = 0;
  std::size_t argmax_n = 0;
  std::optional<double> claimed_bound;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

// Runs trials per cell (generate, simulate, OPT) and aggregates. Instances
// of one variant are shared by all its cells. The result does not depend
// on config.jobs.
SweepReport sweep(const SweepConfig& config);

}  // namespace mgsched
