#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pantograph/contact.hpp"
#include "pantograph/design.hpp"
#include "pantograph/statics.hpp"

namespace pantograph {

inline constexpr const char* kSweepCsvHeader =
    "height_m,theta1_rad,force_ideal_N,force_lossy_N,force_lossy_gf";
inline constexpr const char* kTimeSeriesCsvHeader = "t_s,gap_m,theta1_rad,force_N,in_band";

/// printf-style %.<digits>g.
std::string format_number(double value, int significant_digits = 12);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

/// theta1 is left empty for steps without contact.
void write_timeseries_csv(std::ostream& out, const std::vector<TimeSample>& samples);

nlohmann::json dwell_report_json(const DwellReport& report);

nlohmann::json design_solution_json(const DesignSolution& solution);

/// Force-vs-height chart with the nominal force line and the 100-300 mm
/// flat region shaded.
std::string sweep_svg(const SweepResult& sweep, double nominal_force);

/// Terminal rendering of the same chart, one row per sweep height.
std::string sweep_ascii(const SweepResult& sweep, double nominal_force, int width = 50);

}  // namespace pantograph
