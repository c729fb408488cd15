// Batch front end over the shared-library C interface.
//
//   ulam stabilize <config> [--threads N]
//   ulam verify <config> [--threads N]
//   ulam demo digamma [--tol T] [--points LIST] [--threads N]
//
// CSV certificates go to stdout, the run summary to stderr. Exit codes:
// 0 all rows converged, 1 configuration/usage error, 2 any failed row.
// Environment overrides: ULAM_TOL, ULAM_MAX_ITER.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <ulam.h>

namespace {

struct ConfigDeleter {
  void operator()(ulam_config* c) const { ulam_config_free(c); }
};
using ConfigPtr = std::unique_ptr<ulam_config, ConfigDeleter>;

[[noreturn]] void die(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(1);
}

void check(ulam_status status) {
  if (status != ULAM_OK) die(ulam_last_error());
}

double parse_positive_double(const char* text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0' || !(v > 0.0)) {
    die(std::string(what) + " must be a positive number, got '" + text + "'");
  }
  return v;
}

long long parse_positive_integer(const char* text, const char* what) {
  char* end = nullptr;
  const long long v = std::strtoll(text, &end, 10);
  if (end == text || *end != '\0' || v < 1) {
    die(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_point_list(const std::string& text) {
  std::vector<double> points;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') die("--points: bad number '" + token + "'");
    points.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (points.empty()) die("--points: at least one point is required");
  return points;
}

void apply_environment(ulam_config* config) {
  if (const char* tol = std::getenv("ULAM_TOL")) {
    check(ulam_config_set_tol(config, parse_positive_double(tol, "ULAM_TOL")));
  }
  if (const char* iter = std::getenv("ULAM_MAX_ITER")) {
    check(ulam_config_set_max_iterations(config,
                                         parse_positive_integer(iter, "ULAM_MAX_ITER")));
  }
}

int execute(ulam_config* config, ulam_mode mode) {
  ulam_mode configured = ULAM_MODE_STABILIZE;
  int explicit_mode = 0;
  check(ulam_config_get_mode(config, &configured, &explicit_mode));
  if (explicit_mode && configured != mode) {
    die("config pins a different mode than the requested subcommand");
  }
  check(ulam_config_set_mode(config, mode));

  char* csv = nullptr;
  char* summary = nullptr;
  int exit_code = 0;
  check(ulam_run(config, &csv, &summary, &exit_code));
  std::fputs(csv, stdout);
  std::fputs(summary, stderr);
  ulam_string_free(csv);
  ulam_string_free(summary);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified reconstruction of exact solutions of f(phi(x)) = g(x)·f(x)"};
  app.set_version_flag("--version", ulam_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string demo_name;
  std::string points_text;
  double tol = 0.0;
  int threads = 0;

  CLI::App* cmd_stabilize = app.add_subcommand("stabilize", "reconstruct and certify");
  cmd_stabilize->add_option("config", config_path, "configuration file")->required();
  cmd_stabilize->add_option("--threads", threads, "worker threads");

  CLI::App* cmd_verify = app.add_subcommand("verify", "residual-check the configured f");
  cmd_verify->add_option("config", config_path, "configuration file")->required();
  cmd_verify->add_option("--threads", threads, "worker threads");

  CLI::App* cmd_demo = app.add_subcommand("demo", "run a bundled scenario");
  cmd_demo->add_option("name", demo_name, "demo name (digamma)")->required();
  cmd_demo->add_option("--tol", tol, "target tolerance");
  cmd_demo->add_option("--points", points_text, "comma-separated sample points");
  cmd_demo->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  ConfigPtr config;
  ulam_mode mode = ULAM_MODE_STABILIZE;
  if (cmd_demo->parsed()) {
    ulam_config* raw = nullptr;
    check(ulam_config_demo(demo_name.c_str(), &raw));
    config.reset(raw);
    mode = ULAM_MODE_DEMO;
    apply_environment(config.get());
    if (cmd_demo->count("--tol") > 0) {
      if (!(tol > 0.0)) die("--tol must be positive");
      check(ulam_config_set_tol(config.get(), tol));
    }
    if (cmd_demo->count("--points") > 0) {
      const std::vector<double> points = parse_point_list(points_text);
      check(ulam_config_set_points(config.get(), points.data(), points.size()));
    }
  } else {
    ulam_config* raw = nullptr;
    check(ulam_config_parse_file(config_path.c_str(), &raw));
    config.reset(raw);
    mode = cmd_verify->parsed() ? ULAM_MODE_VERIFY : ULAM_MODE_STABILIZE;
    apply_environment(config.get());
  }
  if (threads > 0) check(ulam_config_set_threads(config.get(), threads));

  return execute(config.get(), mode);
}
