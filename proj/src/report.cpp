#include "pantograph/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "pantograph/units.hpp"

namespace pantograph {

using nlohmann::json;

namespace {

constexpr double kFlatLow = 0.100;   // m
constexpr double kFlatHigh = 0.300;  // m

}  // namespace

std::string format_number(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : sweep.rows) {
    out << format_number(row.height) << ',' << format_number(row.theta1) << ','
        << format_number(row.force_ideal) << ',' << format_number(row.force_lossy) << ','
        << format_number(gram_force_from_newtons(row.force_lossy), 6) << '\n';
  }
}

void write_timeseries_csv(std::ostream& out, const std::vector<TimeSample>& samples) {
  out << kTimeSeriesCsvHeader << '\n';
  for (const auto& s : samples) {
    out << format_number(s.t) << ',' << format_number(s.gap) << ','
        << (s.theta1 ? format_number(*s.theta1) : std::string()) << ','
        << format_number(s.force) << ',' << (s.in_band ? 1 : 0) << '\n';
  }
}

json dwell_report_json(const DwellReport& report) {
  json events = json::array();
  for (const auto& e : report.events) {
    events.push_back({{"start_s", e.start},
                      {"end_s", e.end},
                      {"min_force_N", e.min_force},
                      {"max_force_N", e.max_force},
                      {"mean_force_N", e.mean_force},
                      {"saturated", e.saturated}});
  }
  return {{"events", events},
          {"longest_in_band_dwell_s", report.longest_in_band_dwell},
          {"in_band_fraction", report.in_band_fraction},
          {"band", {{"low_N", report.band.low}, {"high_N", report.band.high}}},
          {"required_dwell_s", report.required_dwell},
          {"measurement_achieved", report.measurement_achieved}};
}

json design_solution_json(const DesignSolution& solution) {
  json violations = json::array();
  for (auto v : solution.violations) violations.push_back(to_string(v));
  return {{"feasible", solution.feasible},
          {"violations", violations},
          {"l1_m", solution.link},
          {"l2_m", solution.link},
          {"r_m", solution.lever},
          {"spring_tension_N", solution.tension},
          {"achieved_force_N", solution.achieved_force},
          {"achieved_force_gf", gram_force_from_newtons(solution.achieved_force)},
          {"footprint_diameter_m", solution.footprint},
          {"candidates_evaluated", solution.candidates_evaluated}};
}

std::string sweep_svg(const SweepResult& sweep, double nominal_force) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double left = 70.0;
  constexpr double right = 20.0;
  constexpr double top = 30.0;
  constexpr double bottom = 50.0;

  double h_lo = sweep.rows.front().height;
  double h_hi = sweep.rows.back().height;
  if (h_hi <= h_lo) h_hi = h_lo + 0.001;
  double f_hi = gram_force_from_newtons(nominal_force);
  for (const auto& r : sweep.rows) {
    f_hi = std::max({f_hi, gram_force_from_newtons(r.force_ideal),
                     gram_force_from_newtons(r.force_lossy)});
  }
  f_hi = f_hi > 0.0 ? f_hi * 1.2 : 1.0;

  auto px = [&](double h) { return left + (h - h_lo) / (h_hi - h_lo) * (width - left - right); };
  auto py = [&](double gf) { return height - bottom - gf / f_hi * (height - top - bottom); };
  auto polyline = [&](auto value, const char* colour) {
    std::ostringstream out;
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (const auto& r : sweep.rows) {
      out << format_number(px(r.height), 6) << ',' << format_number(py(value(r)), 6) << ' ';
    }
    out << "\"/>\n";
    return out.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double flat_lo = std::max(kFlatLow, h_lo);
  const double flat_hi = std::min(kFlatHigh, h_hi);
  if (flat_hi > flat_lo) {
    svg << "<rect x=\"" << format_number(px(flat_lo), 6) << "\" y=\"" << top << "\" width=\""
        << format_number(px(flat_hi) - px(flat_lo), 6) << "\" height=\""
        << (height - top - bottom) << "\" fill=\"#e8f0ff\"/>\n";
    svg << "<text x=\"" << format_number(px(flat_lo) + 4, 6) << "\" y=\"" << top + 14
        << "\" fill=\"#335\">100-300 mm flat region</text>\n";
  }

  const double nominal_gf = gram_force_from_newtons(nominal_force);
  svg << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\""
      << format_number(py(nominal_gf), 6) << "\" y2=\"" << format_number(py(nominal_gf), 6)
      << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
  svg << "<text x=\"" << width - right - 4 << "\" y=\"" << format_number(py(nominal_gf) - 6, 6)
      << "\" text-anchor=\"end\" fill=\"#555\">nominal " << format_number(nominal_gf, 4)
      << " gf</text>\n";

  svg << polyline([](const SweepRow& r) { return gram_force_from_newtons(r.force_ideal); },
                  "#2a7");
  svg << polyline([](const SweepRow& r) { return gram_force_from_newtons(r.force_lossy); },
                  "#c33");
  for (const auto& r : sweep.rows) {
    svg << "<circle r=\"3\" fill=\"#c33\" cx=\"" << format_number(px(r.height), 6) << "\" cy=\""
        << format_number(py(gram_force_from_newtons(r.force_lossy)), 6) << "\"/>\n";
  }

  // Axes and ticks.
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  for (const auto& r : sweep.rows) {
    svg << "<text x=\"" << format_number(px(r.height), 6) << "\" y=\"" << height - bottom + 16
        << "\" text-anchor=\"middle\">" << format_number(r.height * 1000.0, 4) << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double gf = f_hi * k / 4.0;
    svg << "<text x=\"" << left - 6 << "\" y=\"" << format_number(py(gf) + 4, 6)
        << "\" text-anchor=\"end\">" << format_number(gf, 3) << "</text>\n";
  }
  svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">height (mm)</text>\n";
  svg << "<text x=\"16\" y=\"" << (top + height - bottom) / 2
      << "\" transform=\"rotate(-90 16 " << (top + height - bottom) / 2
      << ")\" text-anchor=\"middle\">endpoint force (gf)</text>\n";
  svg << "<text x=\"" << left << "\" y=\"18\">ideal (green) and " << to_string(sweep.direction)
      << " lossy (red) force</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string sweep_ascii(const SweepResult& sweep, double nominal_force, int width) {
  double f_hi = nominal_force;
  for (const auto& r : sweep.rows) f_hi = std::max({f_hi, r.force_lossy, r.force_ideal});
  f_hi = f_hi > 0.0 ? f_hi * 1.2 : 1.0;
  const int nominal_col = static_cast<int>(std::lround(nominal_force / f_hi * width));

  std::ostringstream out;
  out << " height  force (gf)  '|' = nominal " << format_number(gram_force_from_newtons(nominal_force), 4)
      << " gf, '*' = flat region\n";
  for (const auto& r : sweep.rows) {
    const int bar = static_cast<int>(std::lround(r.force_lossy / f_hi * width));
    std::string line(static_cast<std::size_t>(width) + 1, ' ');
    for (int c = 0; c < bar && c <= width; ++c) line[static_cast<std::size_t>(c)] = '#';
    if (nominal_col >= 0 && nominal_col <= width) line[static_cast<std::size_t>(nominal_col)] = '|';
    const bool flat = r.height >= kFlatLow - 1e-12 && r.height <= kFlatHigh + 1e-12;
    char label[48];
    std::snprintf(label, sizeof label, "%5.0f mm %c %8.2f ", r.height * 1000.0, flat ? '*' : ' ',
                  gram_force_from_newtons(r.force_lossy));
    out << label << line << '\n';
  }
  return out.str();
}

}  // namespace pantograph
