#include "mgsched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "mgsched/error.hpp"
#include "mgsched/offline.hpp"

namespace mgsched {

double chain_bound(double alpha, int k) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw Error(Errc::domain_error, "chain bound needs a finite alpha > 1");
  }
  if (k < 1) throw Error(Errc::domain_error, "chain bound needs k >= 1");
  const double ak = std::pow(alpha, k);
  if (std::isinf(ak)) return 2.0 - 1.0 / alpha;
  return ((2.0 - 1.0 / alpha) * ak - alpha) / (ak - 1.0);
}

void check_premises(const ChainInstance& c) {
  const std::size_t k = c.p.size();
  if (k == 0 || c.q.size() != k) {
    throw Error(Errc::premise_violation, "chain needs k >= 1 and |q| = |p|");
  }
  auto fail = [](const std::string& what) { throw Error(Errc::premise_violation, what); };
  for (std::size_t i = 0; i < k; ++i) {
    if (!(c.p[i] > 0.0) || !(c.q[i] > 0.0)) fail("chain values must be positive");
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (c.q[i] > c.alpha * c.p[i]) fail("q_" + std::to_string(i + 1) + " > alpha * p_" + std::to_string(i + 1));
    if (c.q[i] > c.p[i + 1]) fail("q_" + std::to_string(i + 1) + " > p_" + std::to_string(i + 2));
  }
  if (c.q[k - 1] > c.p[k - 1]) fail("q_k > p_k");
}

namespace {

double sum(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

bool check_chain(const ChainInstance& c) {
  check_premises(c);
  return sum(c.q) <= chain_bound(c.alpha, c.k()) * sum(c.p) * (1.0 + 1e-12);
}

ChainInstance random_chain(std::mt19937_64& rng, double alpha, int k) {
  ChainInstance c;
  c.alpha = alpha;
  c.p.resize(static_cast<std::size_t>(k));
  c.q.resize(static_cast<std::size_t>(k));
  c.p[0] = std::pow(2.0, 8.0 * uniform01(rng) - 4.0);
  for (std::size_t i = 1; i < c.p.size(); ++i) {
    // Growth factor in [alpha^-1, alpha^1.5]; long alpha-growth runs are the
    // regime that approaches the bound.
    c.p[i] = c.p[i - 1] * std::pow(alpha, 2.5 * uniform01(rng) - 1.0);
  }
  for (std::size_t i = 0; i < c.q.size(); ++i) {
    const double cap = i + 1 < c.p.size() ? std::min(alpha * c.p[i], c.p[i + 1]) : c.p[i];
    const double u = (rng() & 1) ? 1.0 : std::max(uniform01(rng), 1e-3);
    c.q[i] = u * cap;
  }
  return c;
}

ChainInstance extremal_chain(double alpha, int k) {
  ChainInstance c;
  c.alpha = alpha;
  // Repeated multiplication keeps q_i <= alpha * p_i exact in floating point.
  double p = 1.0;
  for (int i = 0; i < k; ++i, p *= alpha) c.p.push_back(p);
  for (int i = 0; i + 1 < k; ++i) c.q.push_back(c.p[static_cast<std::size_t>(i) + 1]);
  c.q.push_back(c.p.back());
  return c;
}

ChainCheckResult chaincheck(double alpha, int k_max, std::uint64_t trials, std::uint64_t seed) {
  if (k_max < 1) throw Error(Errc::invalid_argument, "k_max must be >= 1");
  chain_bound(alpha, 1);  // domain check
  std::mt19937_64 rng(seed);
  ChainCheckResult r;
  r.trials = trials;
  const double limit = 2.0 - 1.0 / alpha;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k_max));
    const ChainInstance c = random_chain(rng, alpha, k);
    if (!check_chain(c)) ++r.violations;
    const double sq = sum(c.q);
    const double sp = sum(c.p);
    if (sq > limit * sp * (1.0 + 1e-12)) ++r.limit_violations;
    r.max_tightness = std::max(r.max_tightness, sq / (chain_bound(alpha, k) * sp));
  }
  return r;
}

namespace {

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

bool mg_with(const PolicyParams& p, double alpha, double beta) {
  return p.kind == PolicyKind::mg && p.alpha && near(*p.alpha, alpha) && near(p.beta, beta);
}

bool mg_unbounded(const PolicyParams& p) { return p.kind == PolicyKind::mg && !p.alpha; }

bool mg_up_to_two(const PolicyParams& p) {
  return p.kind == PolicyKind::mg && p.alpha && *p.alpha <= 2.0 && p.beta <= *p.alpha;
}

}  // namespace

std::optional<double> claimed_upper_bound(Variant v, const PolicyParams& params) {
  switch (v) {
    case Variant::general:
    case Variant::anti_agreeable_deadline:
    case Variant::agreeable_value:
      if (mg_up_to_two(params)) return 2.0;
      break;
    case Variant::agreeable_deadline:
    case Variant::agreeable_slack_value:
      if (mg_with(params, kPhi, kPhi)) return kPhi;
      if (mg_up_to_two(params)) return 2.0;
      break;
    case Variant::agreeable_deadline_value:
      if (mg_with(params, kPhiSquared, kPhiSquared) || mg_with(params, kPhi, kPhi)) return kPhi;
      if (mg_up_to_two(params)) return 2.0;
      break;
    case Variant::anti_agreeable_value:
    case Variant::anti_agreeable_deadline_value:
    case Variant::anti_agreeable_slack_value:
      if (mg_unbounded(params)) return 1.0;
      if (mg_up_to_two(params)) return 2.0;
      break;
  }
  return std::nullopt;
}

PolicyParams table_policy(Variant v) {
  switch (v) {
    case Variant::anti_agreeable_value:
    case Variant::anti_agreeable_deadline_value:
    case Variant::anti_agreeable_slack_value:
      return PolicyParams::mg(std::nullopt, 1.0);
    case Variant::agreeable_deadline_value:
      return PolicyParams::mg(kPhiSquared, kPhiSquared);
    default:
      return PolicyParams::mg(kPhi, kPhi);
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, Variant v, std::uint64_t trial) {
  return splitmix64(splitmix64(base ^ (static_cast<std::uint64_t>(v) << 56)) + trial);
}

std::size_t trial_size(std::uint64_t seed, std::size_t n_min, std::size_t n_max) {
  return n_min + static_cast<std::size_t>(splitmix64(seed) % (n_max - n_min + 1));
}

GenSpec trial_spec(const SweepConfig& config, Variant v, std::uint64_t trial) {
  GenSpec spec;
  spec.variant = v;
  spec.seed = trial_seed(config.seed, v, trial);
  spec.n = trial_size(spec.seed, config.n_min, config.n_max);
  spec.max_slack = config.max_slack;
  spec.value_lo = config.value_lo;
  spec.value_hi = config.value_hi;
  return spec;
}

SweepReport sweep(const SweepConfig& config) {
  if (config.n_min > config.n_max) throw Error(Errc::invalid_argument, "n_min must be <= n_max");
  if (config.trials == 0) throw Error(Errc::invalid_argument, "trials must be >= 1");
  for (const auto& cell : config.cells) cell.params.validate();

  // Cells grouped by variant, keeping first-appearance order.
  std::vector<Variant> variants;
  std::map<Variant, std::vector<std::size_t>> cells_of;
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    const Variant v = config.cells[c].variant;
    if (!cells_of.count(v)) variants.push_back(v);
    cells_of[v].push_back(c);
  }

  const std::uint64_t trials = config.trials;
  std::vector<std::vector<double>> ratios(config.cells.size(), std::vector<double>(trials, 1.0));

  // Work item w covers trial w % trials of variant w / trials; each item
  // writes only its own slots, so the split across threads is immaterial.
  const std::uint64_t work = trials * variants.size();
  const auto& groups = cells_of;
  auto run = [&](unsigned worker, unsigned workers) {
    for (std::uint64_t w = worker; w < work; w += workers) {
      const Variant v = variants[w / trials];
      const std::uint64_t trial = w % trials;
      const Instance inst = generate(trial_spec(config, v, trial));
      const double opt = offline_optimal(inst).total_value;
      for (std::size_t c : groups.at(v)) {
        const double alg = simulate(inst, config.cells[c].params).total_value;
        ratios[c][trial] = make_ratio(opt, alg).ratio;
      }
    }
  };
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    run(0, 1);
  } else {
    std::vector<std::exception_ptr> failures(jobs);
    {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
          try {
            run(j, jobs);
          } catch (...) {
            failures[j] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  SweepReport report;
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    const auto& cell = config.cells[c];
    SweepRow row;
    row.variant = cell.variant;
    row.params = cell.params;
    row.trials = trials;
    double total = 0.0;
    std::uint64_t argmax = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      total += ratios[c][t];
      if (ratios[c][t] > ratios[c][argmax]) argmax = t;
    }
    row.max_ratio = ratios[c][argmax];
    row.mean_ratio = total / static_cast<double>(trials);
    const GenSpec spec = trial_spec(config, cell.variant, argmax);
    row.argmax_seed = spec.seed;
    row.argmax_n = spec.n;
    row.claimed_bound = claimed_upper_bound(cell.variant, cell.params);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace mgsched
