#include "mgsched/mgsched.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "mgsched/analysis.hpp"
#include "mgsched/error.hpp"
#include "mgsched/generators.hpp"
#include "mgsched/io.hpp"
#include "mgsched/model.hpp"
#include "mgsched/offline.hpp"
#include "mgsched/policies.hpp"

struct mgs_instance {
  mgsched::Instance inst;
};

struct mgs_trace {
  mgsched::SimulationTrace trace;
};

struct mgs_sweep_report {
  mgsched::SweepReport report;
};

namespace {

thread_local std::string g_last_error;

mgs_status fail(mgs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

mgs_status to_status(mgsched::Errc code) {
  using mgsched::Errc;
  switch (code) {
    case Errc::invalid_argument: return MGS_ERR_INVALID_ARGUMENT;
    case Errc::invalid_instance: return MGS_ERR_INVALID_INSTANCE;
    case Errc::empty_schedule:
    case Errc::empty_buffer: return MGS_ERR_EMPTY;
    case Errc::size_limit: return MGS_ERR_SIZE_LIMIT;
    case Errc::premise_violation: return MGS_ERR_PREMISE;
    case Errc::domain_error: return MGS_ERR_DOMAIN;
    case Errc::infeasible_spec: return MGS_ERR_INFEASIBLE;
    case Errc::io_error: return MGS_ERR_IO;
    case Errc::parse_error: return MGS_ERR_PARSE;
    case Errc::invariant_violation: return MGS_ERR_INVARIANT;
  }
  return MGS_ERR_INTERNAL;
}

// Runs f and translates any exception into a status code.
template <class F>
mgs_status guarded(F&& f) noexcept {
  try {
    return f();
  } catch (const mgsched::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MGS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MGS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MGS_ERR_INTERNAL, "unknown error");
  }
}

mgs_status null_arg(const char* what) {
  return fail(MGS_ERR_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

bool valid_variant(int v) { return v >= 0 && v < MGS_VARIANT_COUNT; }

mgsched::Variant to_variant(mgs_variant v) {
  if (!valid_variant(v)) {
    throw mgsched::Error(mgsched::Errc::invalid_argument, "unknown variant " + std::to_string(v));
  }
  return mgsched::kAllVariants[v];
}

mgs_variant from_variant(mgsched::Variant v) { return static_cast<mgs_variant>(static_cast<int>(v)); }

mgsched::PolicyParams to_params(const mgs_policy& p) {
  mgsched::PolicyParams params;
  switch (p.kind) {
    case MGS_POLICY_MG: params.kind = mgsched::PolicyKind::mg; break;
    case MGS_POLICY_EDF_ALPHA: params.kind = mgsched::PolicyKind::edf_alpha; break;
    case MGS_POLICY_GREEDY: params.kind = mgsched::PolicyKind::greedy; break;
    default:
      throw mgsched::Error(mgsched::Errc::invalid_argument, "unknown policy kind");
  }
  if (std::isinf(p.alpha) && p.alpha > 0) {
    params.alpha = std::nullopt;
  } else {
    params.alpha = p.alpha;
  }
  params.beta = p.beta;
  return params;
}

mgs_policy from_params(const mgsched::PolicyParams& params) {
  mgs_policy p{};
  switch (params.kind) {
    case mgsched::PolicyKind::mg: p.kind = MGS_POLICY_MG; break;
    case mgsched::PolicyKind::edf_alpha: p.kind = MGS_POLICY_EDF_ALPHA; break;
    case mgsched::PolicyKind::greedy: p.kind = MGS_POLICY_GREEDY; break;
  }
  p.alpha = params.alpha ? *params.alpha : HUGE_VAL;
  p.beta = params.beta;
  return p;
}

mgs_packet from_packet(const mgsched::Packet& p) {
  mgs_packet out{};
  out.id = p.id;
  out.release = p.release;
  out.deadline_bounded = p.deadline.bounded() ? 1 : 0;
  out.deadline = p.deadline.bounded() ? p.deadline.at() : 0;
  out.value = p.value;
  return out;
}

}  // namespace

extern "C" {

const char* mgs_status_string(mgs_status status) {
  switch (status) {
    case MGS_OK: return "ok";
    case MGS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MGS_ERR_INVALID_INSTANCE: return "invalid instance";
    case MGS_ERR_EMPTY: return "empty schedule or buffer";
    case MGS_ERR_SIZE_LIMIT: return "size limit exceeded";
    case MGS_ERR_PREMISE: return "premise violation";
    case MGS_ERR_DOMAIN: return "domain error";
    case MGS_ERR_INFEASIBLE: return "infeasible specification";
    case MGS_ERR_IO: return "i/o error";
    case MGS_ERR_PARSE: return "parse error";
    case MGS_ERR_INVARIANT: return "invariant violation";
    case MGS_ERR_OUT_OF_RANGE: return "index out of range";
    case MGS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mgs_last_error(void) { return g_last_error.c_str(); }

void mgs_string_free(char* s) { std::free(s); }

const char* mgs_variant_name(mgs_variant variant) {
  if (!valid_variant(variant)) return "unknown";
  // to_string returns views of string literals, so data() is terminated.
  return mgsched::to_string(mgsched::kAllVariants[variant]).data();
}

mgs_status mgs_variant_from_name(const char* name, mgs_variant* out) {
  if (name == nullptr) return null_arg("name");
  if (out == nullptr) return null_arg("out");
  auto v = mgsched::parse_variant(name);
  if (!v) return fail(MGS_ERR_INVALID_ARGUMENT, std::string("unknown variant: ") + name);
  *out = from_variant(*v);
  return MGS_OK;
}

mgs_status mgs_instance_create(mgs_instance** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new mgs_instance{};
    return MGS_OK;
  });
}

void mgs_instance_destroy(mgs_instance* inst) { delete inst; }

mgs_status mgs_instance_add_packet(mgs_instance* inst, const mgs_packet* packet) {
  if (inst == nullptr) return null_arg("inst");
  if (packet == nullptr) return null_arg("packet");
  return guarded([&] {
    mgsched::Packet p;
    p.id = packet->id;
    p.release = packet->release;
    p.deadline = packet->deadline_bounded ? mgsched::Deadline(packet->deadline)
                                          : mgsched::Deadline::unbounded();
    p.value = packet->value;
    inst->inst.packets.push_back(p);
    return MGS_OK;
  });
}

mgs_status mgs_instance_size(const mgs_instance* inst, size_t* out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  *out = inst->inst.packets.size();
  return MGS_OK;
}

mgs_status mgs_instance_packet(const mgs_instance* inst, size_t index, mgs_packet* out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  if (index >= inst->inst.packets.size()) {
    return fail(MGS_ERR_OUT_OF_RANGE, "packet index " + std::to_string(index) + " out of range");
  }
  *out = from_packet(inst->inst.packets[index]);
  return MGS_OK;
}

mgs_status mgs_instance_load(const char* path, mgs_instance** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new mgs_instance{mgsched::load_instance(path)};
    return MGS_OK;
  });
}

mgs_status mgs_instance_save(const mgs_instance* inst, const char* path) {
  if (inst == nullptr) return null_arg("inst");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    mgsched::save_instance(path, inst->inst);
    return MGS_OK;
  });
}

mgs_status mgs_instance_parse(const char* jsonl, mgs_instance** out) {
  if (jsonl == nullptr) return null_arg("jsonl");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new mgs_instance{mgsched::instance_from_jsonl(jsonl)};
    return MGS_OK;
  });
}

mgs_status mgs_instance_serialize(const mgs_instance* inst, char** out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(mgsched::instance_to_jsonl(inst->inst));
    return MGS_OK;
  });
}

mgs_status mgs_instance_meta_json(const mgs_instance* inst, char** out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(inst->inst.meta.dump());
    return MGS_OK;
  });
}

mgs_status mgs_instance_validate(const mgs_instance* inst, size_t* count, char** report) {
  if (inst == nullptr) return null_arg("inst");
  if (count == nullptr) return null_arg("count");
  return guarded([&] {
    auto violations = mgsched::validate_instance(inst->inst);
    if (report != nullptr) {
      std::string text;
      for (const auto& v : violations) {
        text += v.message;
        text += '\n';
      }
      *report = dup_string(text);
    }
    *count = violations.size();
    return MGS_OK;
  });
}

mgs_status mgs_instance_classify(const mgs_instance* inst, uint32_t* mask) {
  if (inst == nullptr) return null_arg("inst");
  if (mask == nullptr) return null_arg("mask");
  return guarded([&] {
    auto cls = mgsched::classify_variants(inst->inst);
    uint32_t bits = 0;
    for (int v = 0; v < MGS_VARIANT_COUNT; ++v) {
      if (cls.holds(mgsched::kAllVariants[v])) bits |= MGS_VARIANT_BIT(v);
    }
    *mask = bits;
    return MGS_OK;
  });
}

mgs_status mgs_instance_horizon(const mgs_instance* inst, int64_t* out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = mgsched::horizon(inst->inst);
    return MGS_OK;
  });
}

void mgs_gen_spec_default(mgs_gen_spec* out) {
  if (out == nullptr) return;
  mgsched::GenSpec d;
  out->variant = from_variant(d.variant);
  out->n = d.n;
  out->max_slack = d.max_slack;
  out->value_lo = d.value_lo;
  out->value_hi = d.value_hi;
  out->seed = d.seed;
}

mgs_status mgs_generate(const mgs_gen_spec* spec, mgs_instance** out) {
  if (spec == nullptr) return null_arg("spec");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    mgsched::GenSpec s;
    s.variant = to_variant(spec->variant);
    s.n = spec->n;
    s.max_slack = spec->max_slack;
    s.value_lo = spec->value_lo;
    s.value_hi = spec->value_hi;
    s.seed = spec->seed;
    *out = new mgs_instance{mgsched::generate(s)};
    return MGS_OK;
  });
}

mgs_status mgs_generate_lower_bound(int k, double epsilon, mgs_instance** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new mgs_instance{mgsched::generate_lower_bound({k, epsilon})};
    return MGS_OK;
  });
}

mgs_status mgs_lb_ratio_formula(int k, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = mgsched::lb_ratio_formula(k);
    return MGS_OK;
  });
}

mgs_status mgs_policy_validate(const mgs_policy* policy) {
  if (policy == nullptr) return null_arg("policy");
  return guarded([&] {
    to_params(*policy).validate();
    return MGS_OK;
  });
}

mgs_status mgs_simulate(const mgs_instance* inst, const mgs_policy* policy, mgs_trace** out) {
  if (inst == nullptr) return null_arg("inst");
  if (policy == nullptr) return null_arg("policy");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new mgs_trace{mgsched::simulate(inst->inst, to_params(*policy))};
    return MGS_OK;
  });
}

void mgs_trace_destroy(mgs_trace* trace) { delete trace; }

mgs_status mgs_trace_total_value(const mgs_trace* trace, double* out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  *out = trace->trace.total_value;
  return MGS_OK;
}

mgs_status mgs_trace_step_count(const mgs_trace* trace, size_t* out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  *out = trace->trace.steps.size();
  return MGS_OK;
}

mgs_status mgs_trace_step(const mgs_trace* trace, size_t index, mgs_step* out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  if (index >= trace->trace.steps.size()) {
    return fail(MGS_ERR_OUT_OF_RANGE, "step index " + std::to_string(index) + " out of range");
  }
  const auto& s = trace->trace.steps[index];
  out->t = s.t;
  out->has_sent = s.sent.has_value() ? 1 : 0;
  out->sent_id = s.sent.value_or(-1);
  out->sent_value = s.sent_value;
  out->buffer_size = s.buffer_size;
  out->schedule_value = s.schedule_value;
  return MGS_OK;
}

mgs_status mgs_trace_sent_count(const mgs_trace* trace, size_t* out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  *out = trace->trace.sent_count();
  return MGS_OK;
}

mgs_status mgs_trace_dropped_count(const mgs_trace* trace, size_t* out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  *out = trace->trace.dropped_expired.size();
  return MGS_OK;
}

mgs_status mgs_trace_serialize(const mgs_trace* trace, char** out) {
  if (trace == nullptr) return null_arg("trace");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(mgsched::trace_to_jsonl(trace->trace));
    return MGS_OK;
  });
}

mgs_status mgs_offline_optimal(const mgs_instance* inst, double* value, char** schedule_jsonl) {
  if (inst == nullptr) return null_arg("inst");
  if (value == nullptr) return null_arg("value");
  return guarded([&] {
    auto schedule = mgsched::offline_optimal(inst->inst);
    if (schedule_jsonl != nullptr) *schedule_jsonl = dup_string(mgsched::offschedule_to_jsonl(schedule));
    *value = schedule.total_value;
    return MGS_OK;
  });
}

mgs_status mgs_empirical_ratio(const mgs_instance* inst, const mgs_policy* policy, mgs_ratio* out) {
  if (inst == nullptr) return null_arg("inst");
  if (policy == nullptr) return null_arg("policy");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto r = mgsched::empirical_ratio(inst->inst, to_params(*policy));
    *out = {r.opt_value, r.alg_value, r.ratio};
    return MGS_OK;
  });
}

mgs_status mgs_ratio_csv_header(char** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(mgsched::ratio_csv_header());
    return MGS_OK;
  });
}

mgs_status mgs_ratio_csv_row(const char* instance_id, const char* variant, const mgs_policy* policy,
                             const mgs_ratio* ratio, char** out) {
  if (instance_id == nullptr) return null_arg("instance_id");
  if (variant == nullptr) return null_arg("variant");
  if (policy == nullptr) return null_arg("policy");
  if (ratio == nullptr) return null_arg("ratio");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    mgsched::RatioReport r{ratio->opt_value, ratio->alg_value, ratio->ratio};
    *out = dup_string(mgsched::ratio_csv_row(instance_id, variant, to_params(*policy), r));
    return MGS_OK;
  });
}

mgs_status mgs_chain_bound(double alpha, int k, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = mgsched::chain_bound(alpha, k);
    return MGS_OK;
  });
}

mgs_status mgs_chaincheck(double alpha, int k_max, uint64_t trials, uint64_t seed,
                          mgs_chaincheck_result* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto r = mgsched::chaincheck(alpha, k_max, trials, seed);
    *out = {r.trials, r.violations, r.limit_violations, r.max_tightness};
    return MGS_OK;
  });
}

mgs_status mgs_table_policy(mgs_variant variant, mgs_policy* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = from_params(mgsched::table_policy(to_variant(variant)));
    return MGS_OK;
  });
}

void mgs_sweep_config_default(mgs_sweep_config* out) {
  if (out == nullptr) return;
  mgsched::SweepConfig d;
  out->cells = nullptr;
  out->cell_count = 0;
  out->trials = d.trials;
  out->seed = d.seed;
  out->n_min = d.n_min;
  out->n_max = d.n_max;
  out->max_slack = d.max_slack;
  out->value_lo = d.value_lo;
  out->value_hi = d.value_hi;
  out->jobs = d.jobs;
}

mgs_status mgs_sweep(const mgs_sweep_config* config, mgs_sweep_report** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  if (config->cell_count > 0 && config->cells == nullptr) return null_arg("config->cells");
  return guarded([&] {
    mgsched::SweepConfig c;
    for (size_t i = 0; i < config->cell_count; ++i) {
      const auto& cell = config->cells[i];
      c.cells.push_back({to_variant(cell.variant), to_params(cell.policy)});
    }
    c.trials = config->trials;
    c.seed = config->seed;
    c.n_min = config->n_min;
    c.n_max = config->n_max;
    c.max_slack = config->max_slack;
    c.value_lo = config->value_lo;
    c.value_hi = config->value_hi;
    c.jobs = config->jobs;
    *out = new mgs_sweep_report{mgsched::sweep(c)};
    return MGS_OK;
  });
}

void mgs_sweep_report_destroy(mgs_sweep_report* report) { delete report; }

mgs_status mgs_sweep_report_row_count(const mgs_sweep_report* report, size_t* out) {
  if (report == nullptr) return null_arg("report");
  if (out == nullptr) return null_arg("out");
  *out = report->report.rows.size();
  return MGS_OK;
}

mgs_status mgs_sweep_report_row(const mgs_sweep_report* report, size_t index, mgs_sweep_row* out) {
  if (report == nullptr) return null_arg("report");
  if (out == nullptr) return null_arg("out");
  if (index >= report->report.rows.size()) {
    return fail(MGS_ERR_OUT_OF_RANGE, "row index " + std::to_string(index) + " out of range");
  }
  const auto& r = report->report.rows[index];
  out->variant = from_variant(r.variant);
  out->policy = from_params(r.params);
  out->trials = r.trials;
  out->max_ratio = r.max_ratio;
  out->mean_ratio = r.mean_ratio;
  out->argmax_seed = r.argmax_seed;
  out->argmax_n = r.argmax_n;
  out->has_claimed_bound = r.claimed_bound.has_value() ? 1 : 0;
  out->claimed_bound = r.claimed_bound.value_or(0.0);
  return MGS_OK;
}

mgs_status mgs_sweep_report_csv(const mgs_sweep_report* report, char** out) {
  if (report == nullptr) return null_arg("report");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(mgsched::sweep_csv(report->report));
    return MGS_OK;
  });
}

mgs_status mgs_sweep_report_table(const mgs_sweep_report* report, char** out) {
  if (report == nullptr) return null_arg("report");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(mgsched::sweep_table(report->report));
    return MGS_OK;
  });
}

}  // extern "C"
