#include "droneqc/attenuation.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "droneqc/errors.hpp"
#include "droneqc/quadrature.hpp"

namespace droneqc::attenuation {

ScatteringModel scattering_model_from_name(const std::string& name) {
  if (name == "kim") return ScatteringModel::kKim;
  if (name == "kruse") return ScatteringModel::kKruse;
  throw InvalidInputError("unknown scattering model '" + name + "'");
}

double size_distribution_p(ScatteringModel model, double visibility_km) {
  if (!(visibility_km > 0.0))
    throw InvalidInputError("visibility must be positive");
  const double v = visibility_km;
  if (v >= 50.0) return 1.6;
  if (v >= 6.0) return 1.3;
  if (model == ScatteringModel::kKruse) return 0.585 * std::cbrt(v);
  if (v >= 1.0) return 0.16 * v + 0.34;
  if (v >= 0.5) return v - 0.5;
  return 0.0;
}

double beta_fog(double visibility_km, double wavelength_nm, double p) {
  if (!(visibility_km > 0.0))
    throw InvalidInputError("visibility must be positive");
  if (!(wavelength_nm > 0.0))
    throw InvalidInputError("wavelength must be positive");
  return (3.91 / visibility_km) * std::pow(wavelength_nm / 550.0, -p);
}

double beta_rain(double visibility_km) {
  if (!(visibility_km > 0.0))
    throw InvalidInputError("visibility must be positive");
  return 2.8 / visibility_km;
}

double path_attenuation_db(double beta_km_inv, double distance_km) {
  if (beta_km_inv < 0.0) throw InvalidInputError("beta must be non-negative");
  if (distance_km < 0.0)
    throw InvalidInputError("distance must be non-negative");
  return 4.3429 * beta_km_inv * distance_km;
}

ExtinctionProfile ExtinctionProfile::constant(double alpha_km_inv) {
  if (alpha_km_inv < 0.0)
    throw InvalidInputError("extinction factor must be non-negative");
  return {[alpha_km_inv](double) { return alpha_km_inv; },
          "constant alpha = " + std::to_string(alpha_km_inv) + " /km"};
}

ExtinctionProfile ExtinctionProfile::exponential(double alpha0_km_inv,
                                                 double scale_m) {
  if (alpha0_km_inv < 0.0 || !(scale_m > 0.0))
    throw InvalidInputError("invalid exponential extinction parameters");
  return {[alpha0_km_inv, scale_m](double h_m) {
            return alpha0_km_inv * std::exp(-h_m / scale_m);
          },
          "exponential alpha0 = " + std::to_string(alpha0_km_inv) + " /km"};
}

double atm_transmissivity(const ExtinctionProfile& profile,
                          const ChannelGeometry& geometry, double rel_tol) {
  geometry.validate();
  if (!profile.alpha_of_h)
    throw InvalidInputError("extinction profile has no alpha(h) function");
  const double cos_phi = std::cos(geometry.zenith_rad);
  const double z_km = geometry.path_length_m() / 1000.0;
  // x is the distance along the ray in km; altitude grows as x cos(phi).
  const double depth = integrate(
      [&](double x_km) {
        const double alpha = profile.alpha_of_h(x_km * 1000.0 * cos_phi);
        if (alpha < 0.0)
          throw InvalidInputError("extinction profile returned negative alpha");
        return alpha;
      },
      0.0, z_km, rel_tol);
  return std::exp(-depth);
}

std::vector<VisibilityRow> visibility_report(
    const std::vector<VisibilityRecord>& records, double wavelength_nm,
    ScatteringModel model, double distance_km) {
  if (records.empty()) throw EmptyInput("no visibility records");
  std::vector<VisibilityRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const VisibilityRecord& rec = records[i];
    if (!(rec.visibility_km > 0.0))
      throw MalformedRecord(i, "visibility must be positive");
    VisibilityRow row;
    row.label = rec.label;
    row.p = size_distribution_p(model, rec.visibility_km);
    row.beta_fog_km_inv = beta_fog(rec.visibility_km, wavelength_nm, row.p);
    row.attenuation_db = path_attenuation_db(row.beta_fog_km_inv, distance_km);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<VisibilityRecord> read_visibility_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw EmptyInput("empty visibility CSV");
  // Tolerate a UTF-8 byte-order mark and trailing carriage return.
  if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0)
    line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "label,visibility_km")
    throw MalformedRecord(0, "expected header 'label,visibility_km'");

  std::vector<VisibilityRecord> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string::npos)
      throw MalformedRecord(row, "missing comma");
    VisibilityRecord rec;
    rec.label = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    std::size_t used = 0;
    try {
      rec.visibility_km = std::stod(value, &used);
    } catch (const std::exception&) {
      throw MalformedRecord(row, "visibility is not a number: '" + value + "'");
    }
    if (used != value.size())
      throw MalformedRecord(row, "trailing characters after visibility");
    if (!(rec.visibility_km > 0.0))
      throw MalformedRecord(row, "visibility must be positive");
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw EmptyInput("visibility CSV has no data rows");
  return records;
}

}  // namespace droneqc::attenuation
