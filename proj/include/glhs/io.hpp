#pragma once

// CSV and JSON renderings of the library's result types. CSV files carry
// one header row and numbers with 17 significant digits.

#include <string>

#include "json.hpp"

#include "glhs/curve.hpp"
#include "glhs/density.hpp"
#include "glhs/moments.hpp"
#include "glhs/simulate.hpp"

namespace glhs::io {

std::string format_number(double value);

std::string moments_csv(const MomentTable& table);
nlohmann::json to_json(const MomentTable& table);

/// Columns: y, x_minus, x_plus, g_minus, g_plus.
std::string curve_csv(const CurveModel& model);
nlohmann::json to_json(const CurveModel& model);

nlohmann::json to_json(const SupportInterval& support);

/// Columns: x, rho.
std::string density_csv(const DensityProfile& profile);
nlohmann::json to_json(const DensityProfile& profile);

/// Columns: n, mean, std_error, limit, z_score, allowance, within.
std::string simulation_moments_csv(const LimitReport& report);
/// Columns: lo, hi, count.
std::string histogram_csv(const Histogram& histogram);
/// Full result plus comparison report. Wall time is included only on
/// request so that identical runs serialize identically.
nlohmann::json to_json(const SimResult& result, const LimitReport& report, bool include_timing = false);

}  // namespace glhs::io
