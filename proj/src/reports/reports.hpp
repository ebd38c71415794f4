#pragma once

// Command dispatch and JSON report assembly shared by the C API and the CLI.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json_io.hpp"

namespace gammadyn::reports {

using io::json;

inline constexpr const char* kVersion = "0.1.0";

struct Options {
  long norm_bound = 20;
  std::size_t orbit_cap = 10000;
  std::size_t depth = 8;
  Rat epsilon{1, 1000000};
  /// When false, an "epsilon" field in the payload takes precedence.
  bool epsilon_explicit = false;
};

enum class Status { Ok = 0, Unknown = 1, BadInput = 2, Internal = 3 };

struct Result {
  Status status = Status::Internal;
  json report;
};

const std::vector<std::string>& commands();

/// Never throws: failures become error reports with status BadInput or Internal.
Result run(const std::string& command, std::string_view input, const Options& options);

/// Pretty-printed, key-sorted, newline-terminated.
std::string render(const json& report);

std::uint64_t fnv1a64(std::string_view bytes);

/// Empty when the report matches the report schema.
std::vector<std::string> schema_violations(const json& report);

}  // namespace gammadyn::reports
