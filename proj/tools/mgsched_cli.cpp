// Command-line frontend over the mgsched C API.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 validation or parse
// error (including chaincheck violations).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgsched/mgsched.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvalid = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(mgs_status status) {
  switch (status) {
    case MGS_OK: return kExitOk;
    case MGS_ERR_INVALID_ARGUMENT:
    case MGS_ERR_DOMAIN:
    case MGS_ERR_SIZE_LIMIT:
    case MGS_ERR_OUT_OF_RANGE: return kExitUsage;
    case MGS_ERR_IO: return kExitIo;
    default: return kExitInvalid;
  }
}

void check(mgs_status status) {
  if (status != MGS_OK) throw Failure{exit_code_for(status), mgs_last_error()};
}

struct InstanceDeleter {
  void operator()(mgs_instance* p) const { mgs_instance_destroy(p); }
};
struct TraceDeleter {
  void operator()(mgs_trace* p) const { mgs_trace_destroy(p); }
};
struct ReportDeleter {
  void operator()(mgs_sweep_report* p) const { mgs_sweep_report_destroy(p); }
};
using InstancePtr = std::unique_ptr<mgs_instance, InstanceDeleter>;
using TracePtr = std::unique_ptr<mgs_trace, TraceDeleter>;
using ReportPtr = std::unique_ptr<mgs_sweep_report, ReportDeleter>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  mgs_string_free(s);
  return out;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Accepts a decimal number or one of the symbols inf, phi, phi2.
double parse_param(const std::string& text, bool allow_inf) {
  if (text == "phi") return std::numbers::phi;
  if (text == "phi2") return std::numbers::phi * std::numbers::phi;
  if (text == "inf" || text == "unbounded") {
    if (!allow_inf) throw Failure{kExitUsage, "beta cannot be unbounded"};
    return HUGE_VAL;
  }
  double x = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(x)) {
    throw Failure{kExitUsage, "not a number: " + text};
  }
  return x;
}

mgs_policy_kind parse_kind(const std::string& text) {
  if (text == "mg") return MGS_POLICY_MG;
  if (text == "edf") return MGS_POLICY_EDF_ALPHA;
  if (text == "greedy") return MGS_POLICY_GREEDY;
  throw Failure{kExitUsage, "unknown policy: " + text};
}

mgs_variant parse_variant_name(const std::string& text) {
  mgs_variant v{};
  check(mgs_variant_from_name(text.c_str(), &v));
  return v;
}

struct PolicyFlags {
  std::string kind = "mg";
  std::string alpha = "1";
  std::string beta = "1";

  void attach(CLI::App* cmd) {
    cmd->add_option("--policy", kind, "mg, edf or greedy")->capture_default_str();
    cmd->add_option("--alpha", alpha, "number, inf, phi or phi2")->capture_default_str();
    cmd->add_option("--beta", beta, "number, phi or phi2")->capture_default_str();
  }

  mgs_policy resolve() const {
    mgs_policy p{parse_kind(kind), parse_param(alpha, true), parse_param(beta, false)};
    check(mgs_policy_validate(&p));
    return p;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitIo, "cannot open " + path + " for writing"};
  out << text;
  out.flush();
  if (!out) throw Failure{kExitIo, "write failed: " + path};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

InstancePtr load(const std::string& path) {
  mgs_instance* raw = nullptr;
  check(mgs_instance_load(path.c_str(), &raw));
  return InstancePtr(raw);
}

std::string variant_flags(const mgs_instance* inst) {
  uint32_t mask = 0;
  check(mgs_instance_classify(inst, &mask));
  std::string out;
  for (int v = 0; v < MGS_VARIANT_COUNT; ++v) {
    if (mask & MGS_VARIANT_BIT(v)) {
      if (!out.empty()) out += ',';
      out += mgs_variant_name(static_cast<mgs_variant>(v));
    }
  }
  return out;
}

// Writes the instance to `out` (or stdout). With a file target a short
// summary goes to stdout instead.
void output_instance(const mgs_instance* inst, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << take([&] {
      char* s = nullptr;
      check(mgs_instance_serialize(inst, &s));
      return s;
    }());
    return;
  }
  check(mgs_instance_save(inst, out_path.c_str()));
  size_t n = 0;
  check(mgs_instance_size(inst, &n));
  std::cout << "packets " << n << "\n";
  std::cout << "variants " << variant_flags(inst) << "\n";
}

// instanceId and variant columns of the ratio CSV.
std::pair<std::string, std::string> describe(const std::string& path, const mgs_instance* inst) {
  char* raw = nullptr;
  check(mgs_instance_meta_json(inst, &raw));
  const auto meta = nlohmann::json::parse(take(raw));
  std::string variant = "unknown";
  if (meta.is_object()) {
    if (meta.contains("variant") && meta["variant"].is_string()) {
      variant = meta["variant"].get<std::string>();
    } else if (meta.contains("generator") && meta["generator"].is_string()) {
      variant = meta["generator"].get<std::string>();
    }
  }
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (auto dot = id.rfind(".jsonl"); dot != std::string::npos && dot + 6 == id.size()) id.resize(dot);
  return {id, variant};
}

std::vector<mgs_variant> parse_variant_list(const std::vector<std::string>& names) {
  std::vector<mgs_variant> out;
  for (const auto& name : names) {
    if (name == "all") {
      for (int v = 0; v < MGS_VARIANT_COUNT; ++v) out.push_back(static_cast<mgs_variant>(v));
    } else {
      out.push_back(parse_variant_name(name));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-delay packet scheduling: MG policy, offline optimum and ratio sweeps"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  std::string gen_variant = "general";
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::int64_t gen_slack = 8;
  double gen_lo = 1.0, gen_hi = 64.0;
  std::string gen_out;
  gen->add_option("--variant", gen_variant, "general or a variant name")->capture_default_str();
  gen->add_option("--n", gen_n, "packet count")->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--max-slack", gen_slack)->capture_default_str();
  gen->add_option("--value-lo", gen_lo)->capture_default_str();
  gen->add_option("--value-hi", gen_hi)->capture_default_str();
  gen->add_option("--out", gen_out, "output JSONL file (stdout if omitted)");

  // lb
  auto* lb = app.add_subcommand("lb", "Generate the adversarial lower-bound instance");
  int lb_k = 1;
  double lb_eps = 1e-6;
  std::string lb_out;
  lb->add_option("--k", lb_k, "number of stages")->capture_default_str();
  lb->add_option("--epsilon", lb_eps)->capture_default_str();
  lb->add_option("--out", lb_out, "output JSONL file (stdout if omitted)");

  // run
  auto* run = app.add_subcommand("run", "Simulate an online policy on an instance");
  std::string run_in, run_trace;
  PolicyFlags run_policy;
  run->add_option("instance,--instance", run_in, "instance JSONL file")->required();
  run_policy.attach(run);
  run->add_option("--trace-out", run_trace, "write the per-step trace as JSONL");

  // opt
  auto* opt = app.add_subcommand("opt", "Compute the offline optimum");
  std::string opt_in, opt_out;
  opt->add_option("instance,--instance", opt_in, "instance JSONL file")->required();
  opt->add_option("--schedule-out", opt_out, "write the optimal slot assignment as JSONL");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "OPT / policy ratio as CSV, one row per instance");
  std::vector<std::string> ratio_in;
  PolicyFlags ratio_policy;
  std::string ratio_out;
  ratio->add_option("instances,--instance", ratio_in, "instance JSONL files")->required();
  ratio_policy.attach(ratio);
  ratio->add_option("--out", ratio_out, "CSV file (stdout if omitted)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Seeded ratio sweep over variants and policies");
  std::vector<std::string> sw_variants{"all"};
  std::uint64_t sw_trials = 1000, sw_seed = 1;
  std::size_t sw_nmin = 1, sw_nmax = 40;
  std::int64_t sw_slack = 8;
  double sw_lo = 1.0, sw_hi = 64.0;
  unsigned sw_jobs = 1;
  bool sw_grid = false;
  double sw_grid_step = 0.25, sw_grid_max = 2.0;
  std::string sw_format = "csv", sw_out;
  PolicyFlags sw_policy;
  sw->add_option("--variants", sw_variants, "variant names or 'all'")->delimiter(',')->capture_default_str();
  sw->add_option("--trials", sw_trials)->capture_default_str();
  sw->add_option("--seed", sw_seed)->capture_default_str();
  sw->add_option("--n-min", sw_nmin)->capture_default_str();
  sw->add_option("--n-max", sw_nmax)->capture_default_str();
  sw->add_option("--max-slack", sw_slack)->capture_default_str();
  sw->add_option("--value-lo", sw_lo)->capture_default_str();
  sw->add_option("--value-hi", sw_hi)->capture_default_str();
  sw->add_option("--jobs", sw_jobs, "worker threads; output does not depend on it")->capture_default_str();
  auto* grid_flag = sw->add_flag("--grid", sw_grid, "MG over all 1 <= beta <= alpha <= grid-max");
  sw->add_option("--grid-step", sw_grid_step)->capture_default_str();
  sw->add_option("--grid-max", sw_grid_max)->capture_default_str();
  auto* sw_kind_opt = sw->add_option("--policy", sw_policy.kind, "fixed policy for every variant");
  auto* sw_alpha_opt = sw->add_option("--alpha", sw_policy.alpha);
  auto* sw_beta_opt = sw->add_option("--beta", sw_policy.beta);
  sw_kind_opt->excludes(grid_flag);
  sw_alpha_opt->excludes(grid_flag);
  sw_beta_opt->excludes(grid_flag);
  sw->add_option("--format", sw_format, "csv or table")->check(CLI::IsMember({"csv", "table"}))->capture_default_str();
  sw->add_option("--out", sw_out, "output file (stdout if omitted)");

  // chaincheck
  auto* cc = app.add_subcommand("chaincheck", "Random-chain check of the chain bound");
  std::string cc_alpha = "phi2";
  int cc_kmax = 12;
  std::uint64_t cc_trials = 100000, cc_seed = 1;
  cc->add_option("--alpha", cc_alpha, "number, phi or phi2")->capture_default_str();
  cc->add_option("--k-max", cc_kmax)->capture_default_str();
  cc->add_option("--trials", cc_trials)->capture_default_str();
  cc->add_option("--seed", cc_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      mgs_gen_spec spec;
      mgs_gen_spec_default(&spec);
      spec.variant = parse_variant_name(gen_variant);
      spec.n = gen_n;
      spec.seed = gen_seed;
      spec.max_slack = gen_slack;
      spec.value_lo = gen_lo;
      spec.value_hi = gen_hi;
      mgs_instance* raw = nullptr;
      check(mgs_generate(&spec, &raw));
      InstancePtr inst(raw);
      output_instance(inst.get(), gen_out);
    } else if (*lb) {
      mgs_instance* raw = nullptr;
      check(mgs_generate_lower_bound(lb_k, lb_eps, &raw));
      InstancePtr inst(raw);
      output_instance(inst.get(), lb_out);
    } else if (*run) {
      const mgs_policy policy = run_policy.resolve();
      auto inst = load(run_in);
      mgs_trace* raw = nullptr;
      check(mgs_simulate(inst.get(), &policy, &raw));
      TracePtr trace(raw);
      double total = 0.0;
      size_t sent = 0, dropped = 0;
      check(mgs_trace_total_value(trace.get(), &total));
      check(mgs_trace_sent_count(trace.get(), &sent));
      check(mgs_trace_dropped_count(trace.get(), &dropped));
      if (!run_trace.empty()) {
        char* s = nullptr;
        check(mgs_trace_serialize(trace.get(), &s));
        write_file(run_trace, take(s));
      }
      std::cout << "totalValue " << fmt(total) << "\n";
      std::cout << "sentCount " << sent << "\n";
      std::cout << "droppedCount " << dropped << "\n";
    } else if (*opt) {
      auto inst = load(opt_in);
      double value = 0.0;
      char* s = nullptr;
      check(mgs_offline_optimal(inst.get(), &value, opt_out.empty() ? nullptr : &s));
      if (!opt_out.empty()) write_file(opt_out, take(s));
      std::cout << "totalValue " << fmt(value) << "\n";
    } else if (*ratio) {
      const mgs_policy policy = ratio_policy.resolve();
      char* h = nullptr;
      check(mgs_ratio_csv_header(&h));
      std::string csv = take(h);
      for (const auto& path : ratio_in) {
        auto inst = load(path);
        mgs_ratio r{};
        check(mgs_empirical_ratio(inst.get(), &policy, &r));
        const auto [id, variant] = describe(path, inst.get());
        char* row = nullptr;
        check(mgs_ratio_csv_row(id.c_str(), variant.c_str(), &policy, &r, &row));
        csv += take(row);
      }
      emit(ratio_out, csv);
    } else if (*sw) {
      const auto variants = parse_variant_list(sw_variants);
      const bool fixed = sw_kind_opt->count() + sw_alpha_opt->count() + sw_beta_opt->count() > 0;
      std::vector<mgs_sweep_cell> cells;
      for (mgs_variant v : variants) {
        if (sw_grid) {
          if (!(sw_grid_step > 0.0) || sw_grid_max < 1.0) throw Failure{kExitUsage, "bad grid"};
          const int steps = static_cast<int>(std::floor((sw_grid_max - 1.0) / sw_grid_step + 1e-9));
          for (int a = 0; a <= steps; ++a) {
            for (int b = 0; b <= a; ++b) {
              cells.push_back({v, {MGS_POLICY_MG, 1.0 + a * sw_grid_step, 1.0 + b * sw_grid_step}});
            }
          }
        } else if (fixed) {
          cells.push_back({v, sw_policy.resolve()});
        } else {
          mgs_policy p{};
          check(mgs_table_policy(v, &p));
          cells.push_back({v, p});
        }
      }
      mgs_sweep_config config;
      mgs_sweep_config_default(&config);
      config.cells = cells.data();
      config.cell_count = cells.size();
      config.trials = sw_trials;
      config.seed = sw_seed;
      config.n_min = sw_nmin;
      config.n_max = sw_nmax;
      config.max_slack = sw_slack;
      config.value_lo = sw_lo;
      config.value_hi = sw_hi;
      config.jobs = sw_jobs;
      mgs_sweep_report* raw = nullptr;
      check(mgs_sweep(&config, &raw));
      ReportPtr report(raw);
      char* s = nullptr;
      check(sw_format == "csv" ? mgs_sweep_report_csv(report.get(), &s)
                               : mgs_sweep_report_table(report.get(), &s));
      emit(sw_out, take(s));
    } else if (*cc) {
      const double alpha = parse_param(cc_alpha, false);
      mgs_chaincheck_result r{};
      check(mgs_chaincheck(alpha, cc_kmax, cc_trials, cc_seed, &r));
      std::cout << "trials " << r.trials << "\n";
      std::cout << "kMax " << cc_kmax << "\n";
      std::cout << "maxTightness " << fmt(r.max_tightness) << "\n";
      std::cout << "limitViolations " << r.limit_violations << "\n";
      std::cout << r.violations << " violations\n";
      if (r.violations > 0 || r.limit_violations > 0) return kExitInvalid;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
