#include "pantograph/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pantograph/errors.hpp"
#include "pantograph/units.hpp"

namespace pantograph {

using nlohmann::json;

namespace {

// Locates a key path in the raw text so field errors can name a line.
// Best effort: follows the path components in textual order.
std::size_t line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& part : path) {
    const std::size_t found = text.find('"' + part + '"', pos);
    if (found == std::string::npos) break;
    pos = found;
  }
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n')) + 1;
}

struct Document {
  const std::string& text;
  const std::string& source;

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
    std::ostringstream msg;
    msg << source;
    if (!text.empty()) msg << ':' << line_of(text, path);
    msg << ": ";
    for (const auto& p : path) msg << '/' << p;
    msg << ": " << what;
    throw ConfigError(msg.str());
  }
};

class Section {
 public:
  Section(const json& node, std::vector<std::string> path, const Document& doc,
          std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)), doc_(doc) {
    if (!node_.is_object()) doc_.fail(path_, "expected an object");
    for (const auto& [key, value] : node_.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) {
        std::string list;
        for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
        fail(key, "unknown key (allowed: " + list + ")");
      }
    }
  }

  [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key) const {
    if (!has(key)) fail(key, "required key missing");
    const json& v = node_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::string string(const std::string& key) const {
    const json& v = node_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = node_.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::pair<double, double>> pairs(const std::string& key) const {
    const json& v = node_.at(key);
    if (!v.is_array()) fail(key, "expected an array of [a, b] pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(key, "expected an array of [a, b] pairs");
      }
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
  }

  /// Exactly one of two alternative keys, e.g. newtons vs gram-force.
  std::optional<std::string> one_of(const std::string& a, const std::string& b) const {
    if (has(a) && has(b)) fail(b, "give either " + a + " or " + b + ", not both");
    if (has(a)) return a;
    if (has(b)) return b;
    return std::nullopt;
  }

  Section child(const std::string& key, std::initializer_list<const char*> allowed) const {
    auto p = path_;
    p.push_back(key);
    return Section(node_.at(key), p, doc_, allowed);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    auto p = path_;
    p.push_back(key);
    doc_.fail(p, what);
  }

  /// Runs a validate() and re-throws its ConfigError with this section's path.
  template <typename F>
  void validated(F&& f) const {
    try {
      f();
    } catch (const ConfigError& e) {
      doc_.fail(path_, e.what());
    }
  }

 private:
  const json& node_;
  std::vector<std::string> path_;
  const Document& doc_;
};

PantographConfig parse_pantograph(const Section& s) {
  PantographConfig c;
  c.l1 = s.number_or("l1_m", c.l1);
  c.l2 = s.number_or("l2_m", c.l2);
  c.r = s.number_or("r_m", c.r);
  c.tip_offset = s.number_or("tip_offset_m", c.tip_offset);
  c.min_height = s.number_or("min_height_m", c.min_height);
  s.validated([&] { c.validate(); });
  return c;
}

SpringModel parse_spring(const Section& s) {
  SpringModel sp;
  if (s.has("kind")) {
    const std::string kind = s.string("kind");
    if (kind == "constant_force") {
      sp.kind = SpringKind::constant_force;
    } else if (kind == "linear") {
      sp.kind = SpringKind::linear;
      sp.tension = 0.0;
    } else {
      s.fail("kind", "expected \"constant_force\" or \"linear\"");
    }
  }
  if (auto key = s.one_of("tension_N", "tension_gf")) {
    const double v = s.number(*key);
    sp.tension = *key == "tension_gf" ? newtons_from_gram_force(v) : v;
  }
  sp.stiffness = s.number_or("stiffness_N_per_m", sp.stiffness);
  sp.preload = s.number_or("preload_N", sp.preload);
  sp.travel_limit = s.number_or("travel_limit_m", sp.travel_limit);
  sp.degradation_rate = s.number_or("degradation_N_per_m", sp.degradation_rate);
  s.validated([&] { sp.validate(); });
  return sp;
}

LossModel parse_loss(const Section& s) {
  LossModel l;
  l.joint_coulomb = s.number_or("joint_coulomb_Nm", l.joint_coulomb);
  l.pulley_efficiency = s.number_or("pulley_efficiency", l.pulley_efficiency);
  l.measurement_noise_sigma = s.number_or("noise_sigma_N", l.measurement_noise_sigma);
  s.validated([&] { l.validate(); });
  return l;
}

Direction parse_direction(const Section& s, const std::string& key) {
  const std::string d = s.string(key);
  if (d == "extending") return Direction::extending;
  if (d == "compressing") return Direction::compressing;
  s.fail(key, "expected \"extending\" or \"compressing\"");
}

std::vector<double> heights_from_mm(double start, double stop, double step) {
  std::vector<double> out;
  for (double h : height_grid(start, stop, step)) out.push_back(metres_from_mm(h));
  return out;
}

void parse_sweep(const Section& s, ScenarioConfig& cfg) {
  const bool listed = s.has("heights_mm");
  const bool ranged = s.has("start_mm") || s.has("stop_mm") || s.has("step_mm");
  if (listed && ranged) s.fail("heights_mm", "give heights_mm or start/stop/step, not both");
  if (listed) {
    cfg.sweep_heights.clear();
    for (double mm : s.numbers("heights_mm")) cfg.sweep_heights.push_back(metres_from_mm(mm));
  } else if (ranged) {
    const double start = s.number("start_mm");
    const double stop = s.number("stop_mm");
    const double step = s.number("step_mm");
    if (!(step > 0.0) || !(stop >= start)) s.fail("step_mm", "need step > 0 and stop >= start");
    cfg.sweep_heights = heights_from_mm(start, stop, step);
  }
  if (s.has("direction")) cfg.direction = parse_direction(s, "direction");
  if (cfg.sweep_heights.empty()) s.fail("heights_mm", "sweep needs at least one height");
  for (std::size_t k = 1; k < cfg.sweep_heights.size(); ++k) {
    if (!(cfg.sweep_heights[k] > cfg.sweep_heights[k - 1])) {
      s.fail("heights_mm", "heights must be strictly increasing (entry " + std::to_string(k) + ")");
    }
  }
}

HeaveTrajectory parse_heave(const Section& s) {
  HeaveTrajectory h;
  if (s.has("kind")) {
    const std::string kind = s.string("kind");
    if (kind == "constant") {
      h.kind = HeaveKind::constant;
    } else if (kind == "sinusoid") {
      h.kind = HeaveKind::sinusoid;
    } else if (kind == "samples") {
      h.kind = HeaveKind::samples;
    } else {
      s.fail("kind", "expected \"constant\", \"sinusoid\" or \"samples\"");
    }
  }
  h.mean = s.number_or("mean_m", h.mean);
  h.amplitude = s.number_or("amplitude_m", h.amplitude);
  h.period = s.number_or("period_s", h.period);
  h.phase = s.number_or("phase_rad", h.phase);
  h.drift_speed = s.number_or("drift_m_per_s", h.drift_speed);
  if (s.has("samples_t_s_offset_m")) h.samples = s.pairs("samples_t_s_offset_m");
  if (h.kind == HeaveKind::samples && h.samples.empty()) {
    s.fail("samples_t_s_offset_m", "required for kind \"samples\"");
  }
  s.validated([&] { h.validate(); });
  return h;
}

ContactScenario parse_contact(const Section& s, double nominal) {
  ContactScenario c;
  if (s.has("surface_height_m") && s.has("surface_points_m")) {
    s.fail("surface_points_m", "give surface_height_m or surface_points_m, not both");
  }
  if (s.has("surface_height_m")) c.surface = SurfaceProfile::flat(s.number("surface_height_m"));
  if (s.has("surface_points_m")) c.surface.points = s.pairs("surface_points_m");
  if (s.has("heave")) {
    c.heave = parse_heave(s.child("heave", {"kind", "mean_m", "amplitude_m", "period_s",
                                            "phase_rad", "drift_m_per_s",
                                            "samples_t_s_offset_m"}));
  }
  c.start_x = s.number_or("start_x_m", c.start_x);
  c.duration = s.number_or("duration_s", c.duration);
  c.dt = s.number_or("dt_s", c.dt);
  c.required_dwell = s.number_or("required_dwell_s", c.required_dwell);

  const bool explicit_band = s.has("band_low_N") || s.has("band_high_N");
  if (explicit_band && s.has("band_fraction")) {
    s.fail("band_fraction", "give band_low_N/band_high_N or band_fraction, not both");
  }
  if (explicit_band) {
    c.band = {s.number("band_low_N"), s.number("band_high_N")};
  } else {
    const double fraction = s.number_or("band_fraction", 0.1);
    if (!(fraction >= 0.0)) s.fail("band_fraction", "must be non-negative");
    c.band = ForceBand::around(nominal, fraction);
  }
  s.validated([&] { c.validate(); });
  return c;
}

SpringProbe parse_spring_probe(const Section& s) {
  SpringProbe p;
  p.stiffness = s.number_or("stiffness_N_per_m", p.stiffness);
  p.preload = s.number_or("preload_N", p.preload);
  p.mount_extension = s.number_or("mount_extension_m", p.mount_extension);
  s.validated([&] { p.validate(); });
  return p;
}

constexpr std::initializer_list<const char*> kDesignKeys = {
    "target_force_N", "target_force_gf", "stroke_min_m",       "stroke_max_m",
    "envelope_diameter_m", "tensions_N", "link_min_m",         "link_max_m",
    "lever_min_m",    "lever_max_m",     "grid_step_m",        "force_tolerance",
    "clearance_margin_m", "min_height_fraction"};

DesignSpec parse_design(const Section& s) {
  DesignSpec d;
  if (auto key = s.one_of("target_force_N", "target_force_gf")) {
    const double v = s.number(*key);
    d.target_force = *key == "target_force_gf" ? newtons_from_gram_force(v) : v;
  }
  d.stroke_min = s.number_or("stroke_min_m", d.stroke_min);
  d.stroke_max = s.number_or("stroke_max_m", d.stroke_max);
  d.envelope_diameter = s.number_or("envelope_diameter_m", d.envelope_diameter);
  if (s.has("tensions_N")) d.tensions = s.numbers("tensions_N");
  d.link_bounds = {s.number_or("link_min_m", d.link_bounds.lo),
                   s.number_or("link_max_m", d.link_bounds.hi)};
  d.lever_bounds = {s.number_or("lever_min_m", d.lever_bounds.lo),
                    s.number_or("lever_max_m", d.lever_bounds.hi)};
  d.grid_step = s.number_or("grid_step_m", d.grid_step);
  d.force_tolerance = s.number_or("force_tolerance", d.force_tolerance);
  d.clearance_margin = s.number_or("clearance_margin_m", d.clearance_margin);
  d.min_height_fraction = s.number_or("min_height_fraction", d.min_height_fraction);
  s.validated([&] { d.validate(); });
  return d;
}

ScenarioConfig parse_document(const json& root, const Document& doc) {
  Section top(root, {}, doc,
              {"pantograph", "spring", "loss", "sweep", "contact", "spring_probe", "design",
               "rng_seed", "output_dir"});
  ScenarioConfig cfg = default_scenario();
  if (top.has("pantograph")) {
    cfg.pantograph = parse_pantograph(
        top.child("pantograph", {"l1_m", "l2_m", "r_m", "tip_offset_m", "min_height_m"}));
  }
  if (top.has("spring")) {
    cfg.spring = parse_spring(top.child(
        "spring", {"kind", "tension_N", "tension_gf", "stiffness_N_per_m", "preload_N",
                   "travel_limit_m", "degradation_N_per_m"}));
  }
  if (top.has("loss")) {
    cfg.loss = parse_loss(
        top.child("loss", {"joint_coulomb_Nm", "pulley_efficiency", "noise_sigma_N"}));
  }
  if (top.has("rng_seed")) {
    const json& seed = root.at("rng_seed");
    if (!seed.is_number_unsigned()) top.fail("rng_seed", "expected a non-negative integer");
    cfg.seed = seed.get<std::uint64_t>();
  }
  cfg.loss.rng_seed = cfg.seed;
  if (top.has("output_dir")) cfg.output_dir = top.string("output_dir");
  if (top.has("sweep")) {
    parse_sweep(top.child("sweep", {"heights_mm", "start_mm", "stop_mm", "step_mm", "direction"}),
                cfg);
  }
  if (top.has("contact")) {
    cfg.contact = parse_contact(
        top.child("contact", {"surface_height_m", "surface_points_m", "heave", "start_x_m",
                              "duration_s", "dt_s", "band_low_N", "band_high_N",
                              "band_fraction", "required_dwell_s"}),
        cfg.nominal_force());
  }
  if (top.has("spring_probe")) {
    cfg.spring_probe = parse_spring_probe(
        top.child("spring_probe", {"stiffness_N_per_m", "preload_N", "mount_extension_m"}));
  }
  if (top.has("design")) cfg.design = parse_design(top.child("design", kDesignKeys));
  return cfg;
}

}  // namespace

double ScenarioConfig::nominal_force() const {
  const double pull = spring.kind == SpringKind::constant_force ? spring.tension : spring.preload;
  return ideal_output_force(pantograph, pull);
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.sweep_heights = heights_from_mm(100.0, 400.0, 25.0);
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n') + 1;
    std::ostringstream msg;
    msg << source << ':' << line << ": JSON syntax error: " << e.what();
    throw ConfigError(msg.str());
  }
  const Document doc{text, source};
  return parse_document(root, doc);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

json design_spec_json(const DesignSpec& spec) {
  return {{"target_force_N", spec.target_force},
          {"stroke_min_m", spec.stroke_min},
          {"stroke_max_m", spec.stroke_max},
          {"envelope_diameter_m", spec.envelope_diameter},
          {"tensions_N", spec.tensions},
          {"link_min_m", spec.link_bounds.lo},
          {"link_max_m", spec.link_bounds.hi},
          {"lever_min_m", spec.lever_bounds.lo},
          {"lever_max_m", spec.lever_bounds.hi},
          {"grid_step_m", spec.grid_step},
          {"force_tolerance", spec.force_tolerance},
          {"clearance_margin_m", spec.clearance_margin},
          {"min_height_fraction", spec.min_height_fraction}};
}

DesignSpec design_spec_from_json(const json& section) {
  static const std::string kSource = "<design>";
  static const std::string kNoText;
  const Document doc{kNoText, kSource};
  return parse_design(Section(section, {}, doc, kDesignKeys));
}

}  // namespace pantograph
