// gammadyn: command-line front end over the C API.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "gammadyn/gammadyn.h"

namespace {

void print_error(const std::string& command, const char* code, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += c;
  }
  std::cout << "{\n  \"command\": \"" << command << "\",\n  \"error\": {\n    \"code\": \"" << code
            << "\",\n    \"message\": \"" << escaped << "\"\n  },\n  \"version\": \"" << gd_version() << "\"\n}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gammadyn: certificates for algebraic group actions.\n"
      "Commands: toral, h1, invert, shift, paper-example.\n"
      "Exit codes: 0 decided, 1 unknown verdict, 2 bad input, 3 internal error.\n"
      "GAMMADYN_THREADS caps internal parallelism (default 1)."};
  app.set_version_flag("--version", std::string(gd_version()));

  std::string command, input_path, output_path, epsilon = "1e-6";
  long norm_bound = 20;
  std::size_t orbit_cap = 10000, depth = 8;
  app.add_option("command", command, "analysis to run")
      ->required()
      ->check(CLI::IsMember({"toral", "h1", "invert", "shift", "paper-example"}));
  app.add_option("--input,-i", input_path, "JSON payload (stdin when absent)");
  app.add_option("--norm-bound", norm_bound, "sup-norm bound of the character search")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--orbit-cap", orbit_cap, "largest orbit enumerated per character")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--depth", depth, "word-ball radius for general expansiveness searches")->capture_default_str()->check(CLI::PositiveNumber);
  auto* eps_opt = app.add_option("--epsilon", epsilon, "l1 accuracy of inverses, rational or decimal")->capture_default_str();
  app.add_option("--output,-o", output_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return GD_BAD_INPUT;
  }

  if (const char* t = std::getenv("GAMMADYN_THREADS")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(t, &end, 10);
    if (end == t || *end != '\0' || n == 0) {
      print_error(command, "bad_input", "GAMMADYN_THREADS must be a positive integer");
      return GD_BAD_INPUT;
    }
    gd_set_max_threads(n);
  }

  std::string input;
  if (command != "paper-example") {
    if (input_path.empty()) {
      input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(input_path, std::ios::binary);
      if (!in) {
        print_error(command, "bad_input", "cannot read input file '" + input_path + "'");
        return GD_BAD_INPUT;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      input = ss.str();
    }
  }

  gd_options* options = gd_options_create();
  if (!options) {
    print_error(command, "internal", "out of memory");
    return GD_INTERNAL;
  }
  gd_options_set_norm_bound(options, norm_bound);
  gd_options_set_orbit_cap(options, orbit_cap);
  gd_options_set_search_depth(options, depth);
  if (eps_opt->count() > 0 && gd_options_set_epsilon(options, epsilon.c_str()) != GD_OK) {
    gd_options_destroy(options);
    print_error(command, "bad_input", "epsilon must be a positive rational");
    return GD_BAD_INPUT;
  }

  gd_report* report = nullptr;
  gd_status status = gd_run(command.c_str(), input.c_str(), options, &report);
  gd_options_destroy(options);
  if (!report) {
    print_error(command, "internal", "no report produced");
    return GD_INTERNAL;
  }

  if (output_path.empty()) {
    std::cout << gd_report_json(report);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    out << gd_report_json(report);
    if (!out) {
      gd_report_free(report);
      std::cerr << "gammadyn: cannot write '" << output_path << "'\n";
      return GD_INTERNAL;
    }
  }
  gd_report_free(report);
  return static_cast<int>(status);
}
