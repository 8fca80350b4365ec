// droneqc: batch front end for the drone free-space quantum channel models.
// Subcommands sweep the physics modules and emit plot-ready CSV or JSON.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "droneqc/attenuation.hpp"
#include "droneqc/beam_optics.hpp"
#include "droneqc/constants.hpp"
#include "droneqc/elliptic_channel.hpp"
#include "droneqc/errors.hpp"
#include "droneqc/link_budget.hpp"
#include "droneqc/repeater_chain.hpp"
#include "droneqc/turbulence.hpp"

namespace {

using droneqc::kPi;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string fmt5(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5f", value);
  return buf;
}

std::vector<double> linspace(double from, double to, int points) {
  if (points < 1) throw droneqc::ConfigParseError("grid needs >= 1 point");
  if (points == 1) return {from};
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = from + (to - from) * i / (points - 1);
  return grid;
}

// "from:to:count" or a comma-separated list of values.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  try {
    if (spec.find(':') != std::string::npos) {
      double from = 0, to = 0;
      int count = 0;
      char colon1 = 0, colon2 = 0;
      std::istringstream in(spec);
      in >> from >> colon1 >> to >> colon2 >> count;
      if (in.fail() || colon1 != ':' || colon2 != ':')
        throw droneqc::ConfigParseError("bad grid spec '" + spec + "'");
      return linspace(from, to, count);
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty()) values.push_back(std::stod(item));
  } catch (const droneqc::Error&) {
    throw;
  } catch (const std::exception&) {
    throw droneqc::ConfigParseError("bad grid spec '" + spec + "'");
  }
  if (values.empty())
    throw droneqc::ConfigParseError("empty grid spec '" + spec + "'");
  return values;
}

// Output file resolution: "-" or empty writes to stdout, relative paths land
// in $DRONEQC_OUT_DIR when it is set.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    std::string resolved = path;
    const char* dir = std::getenv("DRONEQC_OUT_DIR");
    if (dir && *dir && path.front() != '/')
      resolved = std::string(dir) + "/" + path;
    file_.open(resolved);
    if (!file_) throw droneqc::IoError("cannot open '" + resolved + "'");
    name_ = resolved;
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  std::string name() const { return name_.empty() ? "stdout" : name_; }

 private:
  std::ofstream file_;
  std::string name_;
};

// JSON config loading: values fill any option the user did not pass on the
// command line (precedence: flags > file > defaults). Unknown keys are
// rejected.
json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw droneqc::IoError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw droneqc::ConfigParseError("config '" + path + "': " + e.what());
  }
}

void apply_config(CLI::App* sub, const json& cfg) {
  if (!cfg.is_object())
    throw droneqc::ConfigParseError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt)
      throw droneqc::ConfigParseError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;  // command line wins
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else
      text = value.dump();
    try {
      opt->add_result(text);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw droneqc::ConfigParseError("config key '" + key + "': " + e.what());
    }
  }
}

std::string config_path_from(CLI::App* sub) {
  const CLI::Option* opt = sub->get_option_no_throw("--config");
  if (opt && opt->count() > 0) return opt->as<std::string>();
  return {};
}

void add_config_option(CLI::App* sub) {
  sub->add_option("--config", "JSON file with defaults for this subcommand")
      ->expected(1);
}

void run_with_config(CLI::App* sub, const std::function<void()>& body) {
  sub->callback([sub, body]() {
    const std::string path = config_path_from(sub);
    if (!path.empty()) apply_config(sub, load_config(path));
    body();
  });
}

droneqc::elliptic::Direction parse_direction(const std::string& name) {
  if (name == "uplink" || name == "up")
    return droneqc::elliptic::Direction::kUplink;
  if (name == "downlink" || name == "down")
    return droneqc::elliptic::Direction::kDownlink;
  throw droneqc::ConfigParseError("unknown direction '" + name + "'");
}

void summary(const std::string& text) { std::cerr << text << "\n"; }

// --- subcommand option blocks -------------------------------------------

struct ProfileArgs {
  std::string model = "slcd-day";
  double from = 1.0, to = 20000.0;
  int points = 100;
  double wind_speed = 21.0;
  double ground_cn2 = 1.7e-14;
  double k0 = 1e-13;
  std::string output;
};

struct AttenuationArgs {
  std::string model = "kim";
  std::string kind = "fog";
  double wavelength_nm = 850.0;
  double from = 0.1, to = 10.0;
  int points = 100;
  double distance_km = 1.0;
  std::string output;
};

struct BeamArgs {
  std::string sweep = "distance";  // distance|aperture
  double w0 = 0.05;
  double wavelength_nm = 810.0;
  double curvature = 0.0;  // 0 = collimated
  double aperture = droneqc::link_defaults::kApertureRadius;
  double tx_diameter = 0.05;
  double rx_diameter = 0.05;
  double from = 1.0, to = 5000.0;
  int points = 100;
  double distance = 500.0;  // fixed z for the aperture sweep
  double cn2 = 0.0;  // adds a wander-variance column when positive
  double outer_scale = droneqc::turbulence::kDefaultOuterScaleM;
  std::string output;
};

struct ChannelArgs {
  std::string direction = "downlink";
  bool daytime = true;
  double altitude = 100.0;
  double zenith_deg = 0.0;
  double wavelength_nm = droneqc::link_defaults::kWavelength * 1e9;
  double w_d = droneqc::link_defaults::kBeamSpot;
  double aperture = droneqc::link_defaults::kApertureRadius;
  double beta = droneqc::link_defaults::kExtinctionBeta;
  double alpha_p = droneqc::link_defaults::kPointingError;
  double n0 = -1.0;  // negative = day/night default
  double chi_ext = 0.0;  // 0 = derive from beta
  std::string pointing = "printed";
  std::string family = "lognormal";
  std::int64_t samples = 1000000;
  int bins = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string altitudes = "30:220:10";
  std::string zeniths_deg = "0:85:10";
  std::string output;

  droneqc::elliptic::LinkCondition condition() const {
    auto cond = droneqc::elliptic::LinkCondition::make(
        parse_direction(direction), daytime);
    if (n0 >= 0.0) cond.n0 = n0;
    cond.alpha_p = alpha_p;
    cond.beta = beta;
    if (pointing == "printed")
      cond.pointing = droneqc::elliptic::PointingVariance::kAsPrinted;
    else if (pointing == "squared")
      cond.pointing = droneqc::elliptic::PointingVariance::kSquared;
    else
      throw droneqc::ConfigParseError("pointing must be printed|squared");
    if (family == "lognormal")
      cond.semi_axis_family = droneqc::elliptic::SemiAxisFamily::kLogNormal;
    else if (family == "truncated-normal")
      cond.semi_axis_family =
          droneqc::elliptic::SemiAxisFamily::kTruncatedNormal;
    else
      throw droneqc::ConfigParseError(
          "family must be lognormal|truncated-normal");
    return cond;
  }

  droneqc::ChannelGeometry geometry() const {
    droneqc::ChannelGeometry g;
    g.altitude_m = altitude;
    g.zenith_rad = zenith_deg * kPi / 180.0;
    g.wavelength_m = wavelength_nm * 1e-9;
    g.w_d = w_d;
    g.a_r = aperture;
    if (chi_ext > 0.0) g.chi_ext = chi_ext;
    return g;
  }

  droneqc::elliptic::MonteCarloOptions mc() const {
    droneqc::elliptic::MonteCarloOptions opts;
    opts.n_samples = samples;
    opts.bins = bins;
    opts.seed = seed;
    opts.threads = threads;
    return opts;
  }
};

struct BudgetArgs {
  double pt = 10.0;
  double atx = 1.0;
  double arx = 1.0;
  double theta_div = 1e-3;
  double alpha_fog = 1.0;
  double sr = -40.0;
  std::string ranges = "1:40:20";
  std::string diameters = "0.05,0.1,0.2,0.4";
  std::string output;
};

struct NetsimArgs {
  int repeaters = 10;
  double hop_km = 5.0;
  double signal_speed = droneqc::kSpeedOfLight;
  std::string noise = "ideal";
  double p = 0.0;
  double eta = 1.0;
  double bsm_success = 1.0;
  std::uint64_t seed = 1;
  int repetitions = 1;
  std::string state = "plus";
  bool realtime = false;
  double dephasing_t_ns = 0.0;
  bool log_events = false;
  int sweep_max_n = -1;
  std::string output;

  droneqc::repeater::SwarmTopology topology() const {
    droneqc::repeater::SwarmTopology topo;
    topo.n_repeaters = repeaters;
    topo.hop_length_km = hop_km;
    topo.classical_signal_speed_mps = signal_speed;
    if (noise == "ideal")
      topo.per_hop_noise.model = droneqc::repeater::NoiseSpec::Model::kIdeal;
    else if (noise == "depolarizing")
      topo.per_hop_noise.model =
          droneqc::repeater::NoiseSpec::Model::kDepolarizing;
    else if (noise == "transmittance")
      topo.per_hop_noise.model =
          droneqc::repeater::NoiseSpec::Model::kTransmittanceDriven;
    else
      throw droneqc::ConfigParseError(
          "noise must be ideal|depolarizing|transmittance");
    topo.per_hop_noise.p = p;
    topo.per_hop_noise.mean_eta = eta;
    topo.per_hop_noise.bsm_success = bsm_success;
    return topo;
  }
};

struct VisibilityArgs {
  std::string input;
  double wavelength_nm = 850.0;
  std::string model = "kim";
  double distance_km = 1.0;
  std::string format = "csv";
  std::string output;
};

// --- subcommand bodies ----------------------------------------------------

void run_profile(const ProfileArgs& a) {
  using droneqc::turbulence::TurbulenceProfile;
  TurbulenceProfile profile;
  profile.kind = TurbulenceProfile::kind_from_name(a.model);
  profile.wind_speed_mps = a.wind_speed;
  profile.ground_cn2 = a.ground_cn2;
  profile.k0 = a.k0;
  const auto grid = linspace(a.from, a.to, a.points);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double h : grid)
    values.push_back(droneqc::turbulence::cn2(profile, h));
  Output out(a.output);
  out.stream() << "altitude_m,cn2_m_minus_2_3\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.stream() << fmt(grid[i]) << "," << fmt(values[i]) << "\n";
  summary("profile: " + a.model + ", " + std::to_string(a.points) +
          " points -> " + out.name());
}

void run_attenuation(const AttenuationArgs& a) {
  const auto model = droneqc::attenuation::scattering_model_from_name(a.model);
  const bool rain = a.kind == "rain";
  if (!rain && a.kind != "fog")
    throw droneqc::ConfigParseError("kind must be fog|rain");
  const auto grid = linspace(a.from, a.to, a.points);
  struct Row {
    double v, p, beta, tau;
  };
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    Row row{v, 0.0, 0.0, 0.0};
    if (rain) {
      row.beta = droneqc::attenuation::beta_rain(v);
    } else {
      row.p = droneqc::attenuation::size_distribution_p(model, v);
      row.beta = droneqc::attenuation::beta_fog(v, a.wavelength_nm, row.p);
    }
    row.tau = droneqc::attenuation::path_attenuation_db(row.beta, a.distance_km);
    rows.push_back(row);
  }
  Output out(a.output);
  out.stream() << "visibility_km,p,beta_km_inv,attenuation_db\n";
  for (const Row& row : rows)
    out.stream() << fmt(row.v) << "," << fmt(row.p) << "," << fmt(row.beta)
                 << "," << fmt(row.tau) << "\n";
  summary("attenuation: " + a.kind + "/" + a.model + " -> " + out.name());
}

void run_beam(const BeamArgs& a) {
  using namespace droneqc::beam;
  const double lambda = a.wavelength_nm * 1e-9;
  const GaussianBeam beam = a.curvature == 0.0
                                ? GaussianBeam::collimated(a.w0, lambda)
                                : GaussianBeam::focused(a.w0, lambda, a.curvature);
  const auto grid = linspace(a.from, a.to, a.points);
  std::vector<std::string> lines;
  lines.reserve(grid.size());

  if (a.sweep == "aperture") {
    // Equal transmit/receive optics diameters at a fixed link distance.
    const double w = spot_size(beam, a.distance);
    for (double d : grid) {
      const double area = kPi * d * d / 4.0;
      lines.push_back(fmt(d) + "," + fmt(diffraction_transmissivity(d / 2.0, w)) +
                      "," + fmt(plob_upper_bound(d / 2.0, w).bits_per_use) +
                      "," +
                      fmt(divergence_loss_db(area, area, lambda, a.distance)));
    }
    Output out(a.output);
    out.stream() << "diameter_m,eta_d,plob_bits_per_use,divergence_loss_db\n";
    for (const std::string& line : lines) out.stream() << line << "\n";
    summary("beam: aperture sweep at " + fmt(a.distance) + " m -> " +
            out.name());
    return;
  }
  if (a.sweep != "distance")
    throw droneqc::ConfigParseError("sweep must be distance|aperture");

  const double at = kPi * a.tx_diameter * a.tx_diameter / 4.0;
  const double ar = kPi * a.rx_diameter * a.rx_diameter / 4.0;
  for (double z : grid) {
    const double w = spot_size(beam, z);
    std::string line = fmt(z) + "," + fmt(w) + "," +
                       fmt(diffraction_transmissivity(a.aperture, w)) + "," +
                       fmt(plob_upper_bound(a.aperture, w).bits_per_use) +
                       "," + fmt(divergence_loss_db(at, ar, lambda, z));
    if (a.cn2 > 0.0)
      line += "," + fmt(literature::beam_wander_variance(a.cn2, z, a.w0,
                                                         a.outer_scale));
    lines.push_back(std::move(line));
  }
  Output out(a.output);
  out.stream() << "z_m,spot_m,eta_d,plob_bits_per_use,divergence_loss_db";
  if (a.cn2 > 0.0) out.stream() << ",wander_var_m2";
  out.stream() << "\n";
  for (const std::string& line : lines) out.stream() << line << "\n";
  summary("beam: " + std::to_string(a.points) + " points -> " + out.name());
}

void run_pdt(const ChannelArgs& a) {
  const auto hist = droneqc::elliptic::pdt(a.condition(), a.geometry(), a.mc());
  Output out(a.output);
  out.stream() << "bin_center,probability\n";
  for (std::size_t i = 0; i < hist.probabilities.size(); ++i) {
    const double center =
        0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    out.stream() << fmt5(center) << "," << fmt(hist.probabilities[i]) << "\n";
  }
  summary("pdt: " + std::to_string(a.samples) + " samples, " +
          std::to_string(a.bins) + " bins -> " + out.name());
}

void run_surface(const ChannelArgs& a) {
  std::vector<double> zeniths;
  for (double deg : parse_grid(a.zeniths_deg))
    zeniths.push_back(deg * kPi / 180.0);
  const auto cells = droneqc::elliptic::transmittance_surface(
      a.condition(), parse_grid(a.altitudes), zeniths, a.geometry(), a.mc());
  const bool nominal =
      parse_grid(a.altitudes).front() >= droneqc::link_defaults::kAltitudeMin &&
      parse_grid(a.altitudes).back() <= droneqc::link_defaults::kAltitudeMax;
  if (!nominal)
    summary("surface: altitudes outside the nominal 18.5-240 m validity "
            "range of the low-altitude cn2 laws");
  Output out(a.output);
  out.stream() << "altitude_m,zenith_deg,mean_transmittance,std_error\n";
  for (const auto& cell : cells)
    out.stream() << fmt(cell.altitude_m) << ","
                 << fmt(cell.zenith_rad * 180.0 / kPi) << "," << fmt(cell.mean)
                 << "," << fmt(cell.std_error) << "\n";
  summary("surface: " + std::to_string(cells.size()) + " cells -> " +
          out.name());
}

void run_budget(const BudgetArgs& a) {
  droneqc::budget::LinkBudgetSpec base;
  base.p_t_dbm = a.pt;
  base.a_tx_db = a.atx;
  base.a_rx_db = a.arx;
  base.theta_div_rad = a.theta_div;
  base.alpha_fog_db_per_km = a.alpha_fog;
  base.s_r_dbm = a.sr;
  base.range_km = 1.0;
  base.d_rx_m = 1.0;
  const auto ranges = parse_grid(a.ranges);
  const auto diameters = parse_grid(a.diameters);
  const auto sweep = droneqc::budget::margin_sweep(base, ranges, diameters);
  Output out(a.output);
  out.stream() << "range_km,diameter_m,margin_db,operational\n";
  for (const auto& cell : sweep.cells)
    out.stream() << fmt(cell.range_km) << "," << fmt(cell.diameter_m) << ","
                 << fmt(cell.margin_db) << "," << (cell.operational ? 1 : 0)
                 << "\n";
  for (std::size_t d = 0; d < diameters.size(); ++d) {
    if (sweep.non_operational[d])
      summary("budget: link non-operational at every range for D = " +
              fmt(diameters[d]) + " m");
    else if (sweep.break_even_range_km[d])
      summary("budget: break-even at " + fmt(*sweep.break_even_range_km[d]) +
              " km for D = " + fmt(diameters[d]) + " m");
  }
  summary("budget: " + std::to_string(sweep.cells.size()) + " cells -> " +
          out.name());
}

json run_record(const droneqc::repeater::SimResult& result, bool with_log) {
  json j;
  j["fidelity"] = result.fidelity;
  j["elapsed_ns"] = result.elapsed_ns;
  j["success"] = result.success;
  if (with_log) {
    json events = json::array();
    for (const auto& e : result.event_log)
      events.push_back({{"time_ns", e.time_ns}, {"node", e.node},
                        {"what", e.what}});
    j["event_log"] = std::move(events);
  }
  return j;
}

void run_netsim(const NetsimArgs& a) {
  const auto input = droneqc::repeater::named_qubit(a.state);
  droneqc::repeater::RunOptions opts;
  opts.preshared_entanglement = !a.realtime;
  opts.memory_dephasing_t_ns = a.dephasing_t_ns;
  opts.log_events = a.log_events;
  if (a.repetitions < 1)
    throw droneqc::ConfigParseError("repetitions must be >= 1");
  a.topology().validate();
  Output out(a.output);

  if (a.sweep_max_n >= 0) {
    out.stream() << "n_repeaters,mean_fidelity,mean_elapsed_ns,success_rate\n";
    for (int n = 0; n <= a.sweep_max_n; ++n) {
      auto topo = a.topology();
      topo.n_repeaters = n;
      double fsum = 0.0, tsum = 0.0;
      int ok = 0;
      for (int r = 0; r < a.repetitions; ++r) {
        const auto result = droneqc::repeater::run_teleportation(
            topo, input, a.seed + static_cast<std::uint64_t>(r), opts);
        if (result.success) {
          fsum += result.fidelity;
          tsum += result.elapsed_ns;
          ++ok;
        }
      }
      out.stream() << n << ","
                   << fmt(ok > 0 ? fsum / ok : 0.0) << ","
                   << fmt(ok > 0 ? tsum / ok : 0.0) << ","
                   << fmt(static_cast<double>(ok) / a.repetitions) << "\n";
    }
    summary("netsim sweep: n = 0.." + std::to_string(a.sweep_max_n) + " -> " +
            out.name());
    return;
  }

  json doc;
  doc["topology"] = {{"n_repeaters", a.repeaters},
                     {"hop_length_km", a.hop_km},
                     {"total_span_km", a.topology().total_span_km()},
                     {"noise", a.noise},
                     {"p", a.topology().per_hop_noise.per_hop_depolarizing_p()},
                     {"bsm_success", a.bsm_success}};
  json runs = json::array();
  double fsum = 0.0, tsum = 0.0;
  int ok = 0;
  for (int r = 0; r < a.repetitions; ++r) {
    const auto result = droneqc::repeater::run_teleportation(
        a.topology(), input, a.seed + static_cast<std::uint64_t>(r), opts);
    if (result.success) {
      fsum += result.fidelity;
      tsum += result.elapsed_ns;
      ++ok;
    }
    runs.push_back(run_record(result, a.log_events && a.repetitions == 1));
  }
  doc["repetitions"] = a.repetitions;
  doc["success_rate"] = static_cast<double>(ok) / a.repetitions;
  doc["mean_fidelity"] = ok > 0 ? fsum / ok : 0.0;
  doc["mean_elapsed_ns"] = ok > 0 ? tsum / ok : 0.0;
  doc["runs"] = std::move(runs);
  out.stream() << doc.dump(2) << "\n";
  summary("netsim: n = " + std::to_string(a.repeaters) + ", " +
          std::to_string(a.repetitions) + " runs -> " + out.name());
}

void run_visibility(const VisibilityArgs& a) {
  if (a.input.empty())
    throw droneqc::ConfigParseError("visibility-report needs --input");
  std::ifstream in(a.input);
  if (!in) throw droneqc::IoError("cannot open '" + a.input + "'");
  const auto records = droneqc::attenuation::read_visibility_csv(in);
  const auto rows = droneqc::attenuation::visibility_report(
      records, a.wavelength_nm,
      droneqc::attenuation::scattering_model_from_name(a.model),
      a.distance_km);
  Output out(a.output);
  if (a.format == "json") {
    json doc = json::array();
    for (const auto& row : rows)
      doc.push_back({{"label", row.label},
                     {"p", row.p},
                     {"beta_fog_km_inv", row.beta_fog_km_inv},
                     {"attenuation_db", row.attenuation_db}});
    out.stream() << doc.dump(2) << "\n";
  } else if (a.format == "csv") {
    out.stream() << "label,p,beta_fog_km_inv,attenuation_db\n";
    for (const auto& row : rows)
      out.stream() << row.label << "," << fmt(row.p) << ","
                   << fmt(row.beta_fog_km_inv) << ","
                   << fmt(row.attenuation_db) << "\n";
  } else {
    throw droneqc::ConfigParseError("format must be csv|json");
  }
  summary("visibility-report: " + std::to_string(rows.size()) + " rows -> " +
          out.name());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-space quantum channel toolkit for drone links"};
  app.require_subcommand(1);

  ProfileArgs profile;
  auto* sp = app.add_subcommand("profile", "C_n^2 altitude profile sweep");
  sp->add_option("--model", profile.model,
                 "slcd-day|slcd-night-variant|hvb|fried");
  sp->add_option("--from", profile.from, "start altitude (m)");
  sp->add_option("--to", profile.to, "end altitude (m)");
  sp->add_option("--points", profile.points, "grid points");
  sp->add_option("--wind-speed", profile.wind_speed, "hvb wind speed (m/s)");
  sp->add_option("--ground-cn2", profile.ground_cn2, "hvb ground C_n^2");
  sp->add_option("--k0", profile.k0, "fried strength parameter");
  sp->add_option("--output", profile.output, "output file (default stdout)");
  add_config_option(sp);
  run_with_config(sp, [&]() { run_profile(profile); });

  AttenuationArgs atten;
  auto* sa = app.add_subcommand("attenuation",
                                "visibility-driven attenuation sweep");
  sa->add_option("--model", atten.model, "kim|kruse");
  sa->add_option("--kind", atten.kind, "fog|rain");
  sa->add_option("--wavelength", atten.wavelength_nm, "wavelength (nm)");
  sa->add_option("--from", atten.from, "start visibility (km)");
  sa->add_option("--to", atten.to, "end visibility (km)");
  sa->add_option("--points", atten.points, "grid points");
  sa->add_option("--distance", atten.distance_km, "link distance (km)");
  sa->add_option("--output", atten.output, "output file");
  add_config_option(sa);
  run_with_config(sa, [&]() { run_attenuation(atten); });

  BeamArgs beam;
  auto* sb = app.add_subcommand("beam", "Gaussian beam propagation sweep");
  sb->add_option("--sweep", beam.sweep, "distance|aperture");
  sb->add_option("--distance", beam.distance,
                 "fixed link distance for the aperture sweep (m)");
  sb->add_option("--w0", beam.w0, "initial spot size (m)");
  sb->add_option("--wavelength", beam.wavelength_nm, "wavelength (nm)");
  sb->add_option("--curvature", beam.curvature,
                 "radius of curvature (m, 0 = collimated)");
  sb->add_option("--aperture", beam.aperture, "receiver aperture radius (m)");
  sb->add_option("--tx-diameter", beam.tx_diameter, "transmit optics (m)");
  sb->add_option("--rx-diameter", beam.rx_diameter, "receive optics (m)");
  sb->add_option("--from", beam.from, "start distance (m)");
  sb->add_option("--to", beam.to, "end distance (m)");
  sb->add_option("--points", beam.points, "grid points");
  sb->add_option("--cn2", beam.cn2,
                 "C_n^2 for the wander-variance column (0 = off)");
  sb->add_option("--outer-scale", beam.outer_scale, "outer scale L0 (m)");
  sb->add_option("--output", beam.output, "output file");
  add_config_option(sb);
  run_with_config(sb, [&]() { run_beam(beam); });

  ChannelArgs pdt_args;
  auto* spdt = app.add_subcommand(
      "pdt", "Monte Carlo probability distribution of transmittance");
  auto add_channel_options = [](CLI::App* sub, ChannelArgs& a) {
    sub->add_option("--direction", a.direction, "uplink|downlink");
    sub->add_flag("--daytime,!--night", a.daytime, "day or night condition");
    sub->add_option("--altitude", a.altitude, "drone altitude (m)");
    sub->add_option("--zenith-deg", a.zenith_deg, "zenith angle (deg)");
    sub->add_option("--wavelength", a.wavelength_nm, "wavelength (nm)");
    sub->add_option("--w-d", a.w_d, "beam spot size (m)");
    sub->add_option("--aperture", a.aperture, "receiver aperture radius (m)");
    sub->add_option("--beta", a.beta, "extinction parameter in chi_ext(phi)");
    sub->add_option("--alpha-p", a.alpha_p, "downlink pointing error (rad)");
    sub->add_option("--n0", a.n0,
                    "scattering particle density (m^-3, <0 = default)");
    sub->add_option("--chi-ext", a.chi_ext,
                    "fixed extinction transmissivity (0 = derive from beta)");
    sub->add_option("--pointing", a.pointing, "printed|squared");
    sub->add_option("--family", a.family, "lognormal|truncated-normal");
    sub->add_option("--samples", a.samples, "Monte Carlo samples");
    sub->add_option("--bins", a.bins, "histogram bins");
    sub->add_option("--seed", a.seed, "random seed");
    sub->add_option("--threads", a.threads, "worker threads (0 = auto)");
    sub->add_option("--output", a.output, "output file");
  };
  add_channel_options(spdt, pdt_args);
  add_config_option(spdt);
  run_with_config(spdt, [&]() { run_pdt(pdt_args); });

  ChannelArgs surf_args;
  auto* ssurf = app.add_subcommand(
      "surface", "mean transmittance over altitude x zenith grid");
  add_channel_options(ssurf, surf_args);
  ssurf->add_option("--altitudes", surf_args.altitudes,
                    "altitude grid, from:to:count or comma list (m)");
  ssurf->add_option("--zeniths-deg", surf_args.zeniths_deg,
                    "zenith grid, from:to:count or comma list (deg)");
  add_config_option(ssurf);
  run_with_config(ssurf, [&]() { run_surface(surf_args); });

  BudgetArgs budget;
  auto* sbud = app.add_subcommand("budget", "link margin sweep");
  sbud->add_option("--pt", budget.pt, "transmitted power (dBm)");
  sbud->add_option("--atx", budget.atx, "transmitter coupling loss (dB)");
  sbud->add_option("--arx", budget.arx, "receiver coupling loss (dB)");
  sbud->add_option("--theta-div", budget.theta_div,
                   "half-angle divergence (rad)");
  sbud->add_option("--alpha-fog", budget.alpha_fog, "fog attenuation (dB/km)");
  sbud->add_option("--sr", budget.sr, "receiver sensitivity (dBm)");
  sbud->add_option("--ranges", budget.ranges,
                   "range grid, from:to:count or comma list (km)");
  sbud->add_option("--diameters", budget.diameters,
                   "receiver diameters, comma list (m)");
  sbud->add_option("--output", budget.output, "output file");
  add_config_option(sbud);
  run_with_config(sbud, [&]() { run_budget(budget); });

  NetsimArgs net;
  auto* snet = app.add_subcommand(
      "netsim", "entanglement-swapping teleportation through a drone chain");
  snet->add_option("--repeaters", net.repeaters, "repeater drone count");
  snet->add_option("--hop-km", net.hop_km, "hop length (km)");
  snet->add_option("--signal-speed", net.signal_speed,
                   "classical signal speed (m/s)");
  snet->add_option("--noise", net.noise, "ideal|depolarizing|transmittance");
  snet->add_option("--p", net.p, "depolarizing probability per hop");
  snet->add_option("--eta", net.eta, "mean transmittance for driven noise");
  snet->add_option("--bsm-success", net.bsm_success, "BSM success probability");
  snet->add_option("--seed", net.seed, "random seed");
  snet->add_option("--repetitions", net.repetitions, "independent runs");
  snet->add_option("--state", net.state,
                   "input state: zero|one|plus|minus|plus-i|minus-i");
  snet->add_flag("--realtime", net.realtime,
                 "distribute entanglement in real time instead of memories");
  snet->add_option("--dephasing-t-ns", net.dephasing_t_ns,
                   "memory dephasing time constant (0 = off)");
  snet->add_flag("--log-events", net.log_events, "include the event log");
  snet->add_option("--sweep-max-n", net.sweep_max_n,
                   "emit a CSV sweep for n = 0..N instead of JSON");
  snet->add_option("--output", net.output, "output file");
  add_config_option(snet);
  run_with_config(snet, [&]() { run_netsim(net); });

  VisibilityArgs vis;
  auto* svis = app.add_subcommand("visibility-report",
                                  "site feasibility from monthly visibility");
  svis->add_option("--input", vis.input, "CSV with label,visibility_km");
  svis->add_option("--wavelength", vis.wavelength_nm, "wavelength (nm)");
  svis->add_option("--model", vis.model, "kim|kruse");
  svis->add_option("--distance", vis.distance_km, "link distance (km)");
  svis->add_option("--format", vis.format, "csv|json");
  svis->add_option("--output", vis.output, "output file");
  add_config_option(svis);
  run_with_config(svis, [&]() { run_visibility(vis); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const droneqc::Error& e) {
    switch (e.category()) {
      case droneqc::ErrorCategory::kNumeric:
        std::cerr << "error[numeric]: " << e.what() << "\n";
        return kExitNumeric;
      case droneqc::ErrorCategory::kIo:
        std::cerr << "error[io]: " << e.what() << "\n";
        return kExitIo;
      default:
        std::cerr << "error[config]: " << e.what() << "\n";
        return kExitConfig;
    }
  } catch (const std::exception& e) {
    std::cerr << "error[numeric]: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
