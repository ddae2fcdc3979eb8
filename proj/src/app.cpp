#include "pantograph/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pantograph/config.hpp"
#include "pantograph/contact.hpp"
#include "pantograph/design.hpp"
#include "pantograph/errors.hpp"
#include "pantograph/report.hpp"
#include "pantograph/units.hpp"
#include "pantograph/verify.hpp"

namespace pantograph::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

ScenarioConfig load(const CommonOptions& options) {
  ScenarioConfig cfg =
      options.config_path ? load_scenario(*options.config_path) : default_scenario();
  if (options.seed) {
    cfg.seed = *options.seed;
    cfg.loss.rng_seed = *options.seed;
  }
  return cfg;
}

void make_lossless(ScenarioConfig& cfg) {
  cfg.loss = LossModel::lossless(cfg.seed);
  cfg.spring.degradation_rate = 0.0;
}

fs::path output_dir(const CommonOptions& options, const ScenarioConfig& cfg) {
  fs::path dir;
  if (options.out_dir) {
    dir = *options.out_dir;
  } else if (cfg.output_dir) {
    dir = *cfg.output_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    dir = kDefaultOutDir;
  }
  fs::create_directories(dir);
  return dir;
}

// Files are assembled in memory and written together once all work is done.
struct PendingFile {
  fs::path path;
  std::string contents;
};

void write_all(const std::vector<PendingFile>& files, std::ostream& out) {
  for (const auto& f : files) {
    std::ofstream stream(f.path, std::ios::binary | std::ios::trunc);
    if (!stream) throw IoError("cannot write " + f.path.string());
    stream << f.contents;
    if (!stream.flush()) throw IoError("failed writing " + f.path.string());
    out << "wrote " << f.path.string() << '\n';
  }
}

std::string timeseries_csv(const SimulationResult& r) {
  std::ostringstream s;
  write_timeseries_csv(s, r.samples);
  return s.str();
}

void print_dwell(std::ostream& out, const char* label, const DwellReport& r) {
  out << label << ": events=" << r.events.size() << " in_band_fraction="
      << format_number(r.in_band_fraction, 6)
      << " longest_dwell_s=" << format_number(r.longest_in_band_dwell, 6)
      << " measurement_achieved=" << (r.measurement_achieved ? "true" : "false") << '\n';
}

}  // namespace

int run_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ScenarioConfig cfg = load(options);
    if (options.lossless) make_lossless(cfg);
    const Direction direction = options.direction.value_or(cfg.direction);

    const SweepResult sweep =
        force_height_sweep(cfg.pantograph, cfg.spring, cfg.loss, cfg.sweep_heights, direction);
    const double nominal = cfg.nominal_force();

    std::ostringstream csv;
    write_sweep_csv(csv, sweep);
    const fs::path dir = output_dir(options, cfg);
    write_all({{dir / "sweep.csv", csv.str()}, {dir / "sweep.svg", sweep_svg(sweep, nominal)}},
              out);

    out << "sweep: " << sweep.rows.size() << " rows, " << to_string(direction)
        << ", nominal " << format_number(nominal, 6) << " N ("
        << format_number(gram_force_from_newtons(nominal), 6) << " gf)\n";
    if (options.ascii) out << sweep_ascii(sweep, nominal);
    return kExitOk;
  });
}

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ScenarioConfig cfg = load(options);
    if (!cfg.contact) {
      throw ConfigError("config has no \"contact\" section; simulate needs one");
    }
    if (options.lossless) make_lossless(cfg);
    const PantographProbe pantograph{cfg.pantograph, cfg.spring, cfg.loss};
    const fs::path dir = output_dir(options, cfg);

    if (options.compare_spring_probe) {
      const SpringProbe probe = cfg.spring_probe.value_or(SpringProbe{});
      const ProbeComparison cmp = compare_probes(pantograph, probe, *cfg.contact);
      const json report = {{"pantograph", dwell_report_json(cmp.pantograph.report)},
                           {"spring_probe", dwell_report_json(cmp.spring_probe.report)}};
      write_all({{dir / "timeseries_pantograph.csv", timeseries_csv(cmp.pantograph)},
                 {dir / "timeseries_spring_probe.csv", timeseries_csv(cmp.spring_probe)},
                 {dir / "dwell_report.json", report.dump(2) + "\n"}},
                out);
      print_dwell(out, "pantograph", cmp.pantograph.report);
      print_dwell(out, "spring_probe", cmp.spring_probe.report);
      return kExitOk;
    }

    const SimulationResult result = simulate(pantograph, *cfg.contact);
    write_all({{dir / "timeseries.csv", timeseries_csv(result)},
               {dir / "dwell_report.json", dwell_report_json(result.report).dump(2) + "\n"}},
              out);
    print_dwell(out, "pantograph", result.report);
    return kExitOk;
  });
}

int run_design(const DesignOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = load(options);
    if (!cfg.design) {
      throw ConfigError("config has no \"design\" section; design needs one");
    }
    const DesignSolution solution = solve_design(*cfg.design);
    json report = design_solution_json(solution);
    report["spec"] = design_spec_json(*cfg.design);

    bool agree = true;
    if (options.brute_force_check) {
      const DesignSolution reference = solve_design_reference(*cfg.design);
      agree = reference == solution;
      report["brute_force_check"] = {{"agree", agree},
                                     {"candidates", reference.candidates_evaluated}};
    }
    const fs::path dir = output_dir(options, cfg);
    write_all({{dir / "design_solution.json", report.dump(2) + "\n"}}, out);

    if (solution.feasible) {
      out << "design: feasible l1=l2=" << format_number(solution.link, 6)
          << " m r=" << format_number(solution.lever, 6)
          << " m tension=" << format_number(solution.tension, 6)
          << " N force=" << format_number(solution.achieved_force, 6) << " N ("
          << format_number(gram_force_from_newtons(solution.achieved_force), 6) << " gf)\n";
    } else {
      out << "design: infeasible;";
      for (auto v : solution.violations) out << " [" << to_string(v) << ']';
      out << '\n';
    }
    if (options.brute_force_check) {
      out << "brute-force check: " << (agree ? "agree" : "MISMATCH") << '\n';
      if (!agree) return kExitInvariant;
    }
    return kExitOk;
  });
}

int run_verify(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<CheckResult> results = run_invariant_suite();
    std::size_t failed = 0;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(9) << r.module
          << std::setw(50) << r.name << r.detail << '\n';
      if (!r.passed) ++failed;
    }
    out << results.size() - failed << '/' << results.size() << " invariants hold\n";
    return failed == 0 ? kExitOk : kExitInvariant;
  });
}

}  // namespace pantograph::app
