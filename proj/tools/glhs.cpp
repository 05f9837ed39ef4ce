// glhs: moments, curve, density and Monte Carlo validation of the limiting
// spectral distribution of Z*Z for Brownian motion on GL(d, C).
//
// Exit codes: 0 success, 1 validation failure, 2 usage or domain error.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glhs/curve.hpp"
#include "glhs/density.hpp"
#include "glhs/errors.hpp"
#include "glhs/io.hpp"
#include "glhs/moments.hpp"
#include "glhs/simulate.hpp"
#include "glhs/validate.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string format;
  std::string path;  // empty: standard output

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw glhs::DomainError("cannot open output file '" + path + "'");
    file << text;
  }
};

// Subcommands share one Output; an empty format is resolved after parsing.
void add_output(CLI::App* cmd, Output& out, const std::string& default_format) {
  cmd->add_option("--format", out.format, "Output format (default: " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", out.path, "Output file (default: standard output)");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

unsigned threads_from_environment() {
  const char* raw = std::getenv("GLHS_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1) throw glhs::DomainError("GLHS_THREADS must be a positive integer");
  return static_cast<unsigned>(value);
}

// "--t -1" would otherwise read as an unknown short flag.
std::vector<std::string> join_negative_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) == 0 && arg.find('=') == std::string::npos && i + 1 < argc) {
      const std::string next = argv[i + 1];
      if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        args.push_back(arg + "=" + next);
        ++i;
        continue;
      }
    }
    args.push_back(std::move(arg));
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  return args;
}

std::string histogram_path(const std::string& path) {
  std::filesystem::path p(path);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + ".histogram.csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limiting spectral distribution of Z*Z for Brownian motion on GL(d, C), t < 0"};
  app.require_subcommand(1);

  double t = 0;
  int n_max = 8;
  std::string method = "closed-form";
  int samples = 256;
  int points = 400;
  glhs::SimConfig sim;
  std::string integrator = "ito-euler";
  bool timing = false;
  Output out;

  auto* moments = app.add_subcommand("moments", "Moment table m_0..m_{n_max}");
  moments->add_option("--t", t, "Time parameter")->required();
  moments->add_option("--n-max", n_max, "Highest moment order")->capture_default_str();
  moments->add_option("--method", method, "closed-form | contour | density")->capture_default_str();
  add_output(moments, out, "csv");

  auto* support = app.add_subcommand("support", "Support [x_lo, x_hi] and junction value");
  support->add_option("--t", t, "Time parameter (< 0)")->required();
  add_output(support, out, "json");

  auto* curve = app.add_subcommand("curve", "Sampled upper half of the curve gamma_t");
  curve->add_option("--t", t, "Time parameter (< 0)")->required();
  curve->add_option("--samples", samples, "Number of samples on [0, y_t]")->capture_default_str();
  add_output(curve, out, "csv");

  auto* density = app.add_subcommand("density", "Density profile on a grid inside the support");
  density->add_option("--t", t, "Time parameter (< 0)")->required();
  density->add_option("--points", points, "Number of grid points")->capture_default_str();
  add_output(density, out, "csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of (1/d) tr (Z*Z)^n at finite d");
  simulate->add_option("--t", sim.t, "Time parameter (<= 0)")->required();
  simulate->add_option("--dim", sim.dim, "Matrix dimension d")->capture_default_str();
  simulate->add_option("--steps", sim.steps, "Time steps (0: max(16, ceil(-256 t)))")->capture_default_str();
  simulate->add_option("--reps", sim.reps, "Independent replicas")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--n-max", sim.n_max, "Highest moment order")->capture_default_str();
  simulate->add_option("--bins", sim.bins, "Histogram bins")->capture_default_str();
  simulate->add_option("--integrator", integrator, "ito-euler | exponential")->capture_default_str();
  simulate->add_flag("--timing", timing, "Include wall time in the JSON output");
  add_output(simulate, out, "json");

  auto* validate = app.add_subcommand("validate", "Cross-route invariant checks at one t");
  validate->add_option("--t", t, "Time parameter (< 0)")->required();

  try {
    app.parse(join_negative_values(argc, argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (out.format.empty()) out.format = (support->parsed() || simulate->parsed()) ? "json" : "csv";

  try {
    if (moments->parsed()) {
      const auto table = glhs::moment_table(n_max, t, glhs::parse_moment_method(method));
      out.write(out.format == "csv" ? glhs::io::moments_csv(table) : dump(glhs::io::to_json(table)));
    } else if (support->parsed()) {
      const auto s = glhs::support(t);
      if (out.format == "json") {
        out.write(dump(glhs::io::to_json(s)));
      } else {
        out.write("t,x_lo,x_mid,x_hi,y_t,a_t\n" + glhs::io::format_number(s.t) + "," +
                  glhs::io::format_number(s.x_lo) + "," + glhs::io::format_number(s.x_mid) + "," +
                  glhs::io::format_number(s.x_hi) + "," + glhs::io::format_number(s.y_t) + "," +
                  glhs::io::format_number(s.a_t) + "\n");
      }
    } else if (curve->parsed()) {
      const auto model = glhs::build_curve(t, samples);
      out.write(out.format == "csv" ? glhs::io::curve_csv(model) : dump(glhs::io::to_json(model)));
    } else if (density->parsed()) {
      const auto profile = glhs::density_profile(t, points);
      out.write(out.format == "csv" ? glhs::io::density_csv(profile) : dump(glhs::io::to_json(profile)));
    } else if (simulate->parsed()) {
      sim.integrator = glhs::parse_integrator(integrator);
      sim.threads = threads_from_environment();
      const auto result = glhs::simulate(sim);
      const auto report = glhs::empirical_vs_limit(result);
      std::fprintf(stderr, "wall time: %.3f s\n", result.wall_time);
      if (out.format == "json") {
        out.write(dump(glhs::io::to_json(result, report, timing)));
      } else {
        out.write(glhs::io::simulation_moments_csv(report));
        if (out.path.empty()) {
          std::fprintf(stderr, "note: the histogram CSV is written only with --output\n");
        } else {
          Output{"csv", histogram_path(out.path)}.write(glhs::io::histogram_csv(result.histogram));
        }
      }
    } else if (validate->parsed()) {
      const auto checks = glhs::run_validation(t);
      bool all = true;
      std::printf("%-50s %-6s %-12s %s\n", "check", "result", "value", "threshold");
      for (const auto& c : checks) {
        all = all && c.pass;
        std::printf("%-50s %-6s %-12.3e %.1e%s%s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value,
                    c.threshold, c.detail.empty() ? "" : "  ", c.detail.c_str());
      }
      return all ? 0 : kExitValidation;
    }
  } catch (const glhs::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const glhs::Overflow& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
