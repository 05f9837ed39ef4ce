#include "glhs/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace glhs::io {

using nlohmann::json;

namespace {

// JSON has no infinities; they serialize as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string moments_csv(const MomentTable& table) {
  std::ostringstream os;
  os << "n,m\n";
  for (const auto& e : table.values) os << e.n << ',' << format_number(e.m) << '\n';
  return os.str();
}

json to_json(const MomentTable& table) {
  json values = json::array();
  for (const auto& e : table.values) values.push_back({{"n", e.n}, {"m", number(e.m)}});
  return {{"t", table.t}, {"method", std::string(to_string(table.method))}, {"values", values}};
}

std::string curve_csv(const CurveModel& model) {
  std::ostringstream os;
  os << "y,x_minus,x_plus,g_minus,g_plus\n";
  for (const auto& s : model.samples) {
    os << format_number(s.y) << ',' << format_number(s.x_minus) << ',' << format_number(s.x_plus) << ','
       << format_number(s.g_minus) << ',' << format_number(s.g_plus) << '\n';
  }
  return os.str();
}

json to_json(const CurveModel& model) {
  json samples = json::array();
  for (const auto& s : model.samples) {
    samples.push_back({{"y", s.y}, {"x_minus", s.x_minus}, {"x_plus", s.x_plus},
                       {"g_minus", s.g_minus}, {"g_plus", s.g_plus}});
  }
  return {{"t", model.t},
          {"y_t", model.y_t},
          {"a_t", model.a_t},
          {"junction", {{"y", model.junction.y}, {"x", model.junction.x}, {"g_mid", model.junction.g_mid}}},
          {"samples", samples}};
}

json to_json(const SupportInterval& s) {
  return {{"t", s.t}, {"x_lo", s.x_lo}, {"x_mid", s.x_mid}, {"x_hi", s.x_hi}, {"y_t", s.y_t}, {"a_t", s.a_t}};
}

std::string density_csv(const DensityProfile& profile) {
  std::ostringstream os;
  os << "x,rho\n";
  for (const auto& p : profile.points) os << format_number(p.x) << ',' << format_number(p.rho) << '\n';
  return os.str();
}

json to_json(const DensityProfile& profile) {
  json points = json::array();
  for (const auto& p : profile.points) points.push_back({{"x", p.x}, {"rho", p.rho}});
  return {{"t", profile.t},
          {"grid", profile.grid},
          {"trapezoid_mass", profile.trapezoid_mass},
          {"support", to_json(profile.support)},
          {"points", points}};
}

std::string simulation_moments_csv(const LimitReport& report) {
  std::ostringstream os;
  os << "n,mean,std_error,limit,z_score,allowance,within\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << format_number(r.mean) << ',' << format_number(r.std_error) << ','
       << format_number(r.limit) << ',' << format_number(r.z_score) << ',' << format_number(r.allowance)
       << ',' << (r.within ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream os;
  os << "lo,hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    os << format_number(h.edges[b]) << ',' << format_number(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
  }
  return os.str();
}

json to_json(const SimResult& result, const LimitReport& report, bool include_timing) {
  const auto& c = result.config;
  json config = {{"t", c.t},
                 {"dim", c.dim},
                 {"steps", c.steps},
                 {"reps", c.reps},
                 {"seed", c.seed},
                 {"n_max", c.n_max},
                 {"integrator", std::string(to_string(c.integrator))},
                 {"bins", c.bins}};
  json empirical = json::array();
  for (const auto& e : result.empirical) {
    empirical.push_back({{"n", e.n}, {"mean", e.mean}, {"std_error", e.std_error}});
  }
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"mean", r.mean},
                    {"std_error", r.std_error},
                    {"limit", number(r.limit)},
                    {"z_score", number(r.z_score)},
                    {"allowance", r.allowance},
                    {"within", r.within}});
  }
  json out = {{"config", config},
              {"empirical", empirical},
              {"histogram", {{"edges", result.histogram.edges}, {"counts", result.histogram.counts}}},
              {"clamped_negative", result.clamped_negative},
              {"report", {{"moments", rows}, {"cdf_sup_distance", report.cdf_sup_distance}}}};
  if (include_timing) out["wall_time"] = result.wall_time;
  return out;
}

}  // namespace glhs::io
