#include "gammadyn/gammadyn.h"

#include <new>
#include <string>

#include "parallel.hpp"
#include "reports.hpp"

struct gd_options {
  gammadyn::reports::Options value;
};

struct gd_report {
  gd_status status;
  std::string json;
};

namespace {

gd_status to_status(gammadyn::reports::Status s) { return static_cast<gd_status>(static_cast<int>(s)); }

}  // namespace

extern "C" {

gd_options* gd_options_create(void) { return new (std::nothrow) gd_options{}; }

void gd_options_destroy(gd_options* options) { delete options; }

gd_status gd_options_set_norm_bound(gd_options* options, long norm_bound) {
  if (!options || norm_bound < 1) return GD_BAD_INPUT;
  options->value.norm_bound = norm_bound;
  return GD_OK;
}

gd_status gd_options_set_orbit_cap(gd_options* options, size_t orbit_cap) {
  if (!options || orbit_cap < 1) return GD_BAD_INPUT;
  options->value.orbit_cap = orbit_cap;
  return GD_OK;
}

gd_status gd_options_set_search_depth(gd_options* options, size_t depth) {
  if (!options || depth < 1) return GD_BAD_INPUT;
  options->value.depth = depth;
  return GD_OK;
}

gd_status gd_options_set_epsilon(gd_options* options, const char* epsilon) {
  if (!options || !epsilon) return GD_BAD_INPUT;
  try {
    gammadyn::Rat e = gammadyn::parse_rational(epsilon);
    if (e <= 0) return GD_BAD_INPUT;
    options->value.epsilon = e;
    options->value.epsilon_explicit = true;
    return GD_OK;
  } catch (...) {
    return GD_BAD_INPUT;
  }
}

gd_status gd_run(const char* command, const char* input_json, const gd_options* options, gd_report** report) {
  if (!report) return GD_BAD_INPUT;
  *report = nullptr;
  try {
    gammadyn::reports::Options o = options ? options->value : gammadyn::reports::Options{};
    auto result = gammadyn::reports::run(command ? command : "", input_json ? input_json : "", o);
    *report = new gd_report{to_status(result.status), gammadyn::reports::render(result.report)};
    return (*report)->status;
  } catch (...) {
    *report = new (std::nothrow) gd_report{GD_INTERNAL, "{\"error\":{\"code\":\"internal\",\"message\":\"allocation failure\"}}\n"};
    return GD_INTERNAL;
  }
}

const char* gd_report_json(const gd_report* report) { return report ? report->json.c_str() : nullptr; }

gd_status gd_report_status(const gd_report* report) { return report ? report->status : GD_BAD_INPUT; }

void gd_report_free(gd_report* report) { delete report; }

void gd_set_max_threads(size_t threads) { gammadyn::set_max_threads(threads); }

const char* gd_version(void) { return gammadyn::reports::kVersion; }

const char* gd_status_name(gd_status status) {
  switch (status) {
    case GD_OK:
      return "ok";
    case GD_UNKNOWN:
      return "unknown";
    case GD_BAD_INPUT:
      return "bad_input";
    case GD_INTERNAL:
      return "internal";
  }
  return "invalid";
}

}  // extern "C"
