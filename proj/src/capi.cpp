#include "rwrers/rwrers.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "rwrers/commands.hpp"
#include "rwrers/config.hpp"
#include "rwrers/errors.hpp"

struct rwrers_config {
  rwrers::ExperimentConfig cfg;
  bool seed_generated = false;
};

struct rwrers_report {
  rwrers::RunReport report;
};

namespace {

thread_local std::string last_error;

rwrers_status fail(rwrers_status status, const std::string& message) {
  last_error = message;
  return status;
}

rwrers_status translate() {
  try {
    throw;
  } catch (const rwrers::Error& e) {
    switch (e.kind()) {
      case rwrers::ErrorKind::Config: return fail(RWRERS_ERR_CONFIG, e.what());
      case rwrers::ErrorKind::Convergence: return fail(RWRERS_ERR_CONVERGENCE, e.what());
      case rwrers::ErrorKind::Resource: return fail(RWRERS_ERR_RESOURCE, e.what());
      case rwrers::ErrorKind::DegenerateWeights: return fail(RWRERS_ERR_DEGENERATE_WEIGHTS, e.what());
      default: return fail(RWRERS_ERR_INVALID_ARGUMENT, e.what());
    }
  } catch (const std::bad_alloc&) {
    return fail(RWRERS_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(RWRERS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RWRERS_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
rwrers_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RWRERS_OK;
  } catch (...) {
    return translate();
  }
}

}  // namespace

extern "C" {

const char* rwrers_version(void) { return "1.0.0"; }

const char* rwrers_last_error(void) { return last_error.c_str(); }

void rwrers_string_free(char* s) { std::free(s); }

rwrers_status rwrers_config_load(const char* json, rwrers_config** out) {
  if (!json || !out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<rwrers_config>();
    handle->cfg = rwrers::load_config_text(json, &handle->seed_generated);
    *out = handle.release();
  });
}

rwrers_status rwrers_config_seed_generated(const rwrers_config* config, int* out) {
  if (!config) return fail(RWRERS_ERR_INVALID_HANDLE, "null config handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = config->seed_generated ? 1 : 0;
  return RWRERS_OK;
}

rwrers_status rwrers_config_seed(const rwrers_config* config, unsigned long long* out) {
  if (!config) return fail(RWRERS_ERR_INVALID_HANDLE, "null config handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = config->cfg.seed;
  return RWRERS_OK;
}

rwrers_status rwrers_config_to_json(const rwrers_config* config, char** out) {
  if (!config) return fail(RWRERS_ERR_INVALID_HANDLE, "null config handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(rwrers::serialize_config(config->cfg).dump()); });
}

void rwrers_config_free(rwrers_config* config) { delete config; }

rwrers_status rwrers_run(const rwrers_config* config, const char* subcommand, rwrers_report** out) {
  if (!config) return fail(RWRERS_ERR_INVALID_HANDLE, "null config handle");
  if (!subcommand || !out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<rwrers_report>();
    handle->report = rwrers::run_command(subcommand, config->cfg);
    *out = handle.release();
  });
}

rwrers_status rwrers_report_passed(const rwrers_report* report, int* out) {
  if (!report) return fail(RWRERS_ERR_INVALID_HANDLE, "null report handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = report->report.passed ? 1 : 0;
  return RWRERS_OK;
}

rwrers_status rwrers_report_record_count(const rwrers_report* report, size_t* out) {
  if (!report) return fail(RWRERS_ERR_INVALID_HANDLE, "null report handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  *out = report->report.records.size();
  return RWRERS_OK;
}

rwrers_status rwrers_report_jsonl(const rwrers_report* report, char** out) {
  if (!report) return fail(RWRERS_ERR_INVALID_HANDLE, "null report handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(rwrers::to_jsonl(report->report)); });
}

rwrers_status rwrers_report_csv(const rwrers_report* report, char** out) {
  if (!report) return fail(RWRERS_ERR_INVALID_HANDLE, "null report handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(rwrers::to_csv(report->report)); });
}

rwrers_status rwrers_report_summary(const rwrers_report* report, char** out) {
  if (!report) return fail(RWRERS_ERR_INVALID_HANDLE, "null report handle");
  if (!out) return fail(RWRERS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(report->report.summary.dump(2)); });
}

void rwrers_report_free(rwrers_report* report) { delete report; }

}  // extern "C"
