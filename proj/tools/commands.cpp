#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sppkit/classical.hpp"
#include "sppkit/io.hpp"
#include "sppkit/oracle.hpp"
#include "sppkit/paraxial.hpp"
#include "sppkit/quantum.hpp"

namespace sppkit::cli {

namespace {

// Edge dislocation at phi_d: rotate the input by -phi_d, apply the plate with
// its dislocation at 0, rotate the output back.
SpectralDecomposition rotate(SpectralDecomposition d, double angle) {
  if (angle == 0.0) return d;
  for (auto& [idx, c] : d.entries) c *= std::polar(1.0, -idx.l * angle);
  return d;
}

double alpha_magnitude(const RunConfig& cfg) { return cfg.r0 / (std::sqrt(2.0) * cfg.w0); }

SpectralDecomposition restrict_to(const SpectralDecomposition& d, const TruncationPolicy& t) {
  SpectralDecomposition out;
  out.w0 = d.w0;
  out.q = d.q;
  out.truncation = t;
  for (const auto& [idx, c] : d.entries) {
    if (t.contains(idx)) out.set(idx, c);
  }
  out.refresh_power();
  return out;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.w0 > 0.0) || !(cfg.wavelength > 0.0)) throw std::invalid_argument("--w0 and --wavelength must be positive");
  if (!(cfg.r0 >= 0.0)) throw std::invalid_argument("--r0 must be non-negative");
  if (cfg.truncation.p_max < 0 || cfg.truncation.l_max < 0 || cfg.truncation.k_max < 0 || cfg.m_max < 0) {
    throw std::invalid_argument("truncation limits must be non-negative");
  }
  if (!(cfg.truncation.series_tol > 0.0) || !(cfg.tail_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (cfg.grid_n < 2) throw std::invalid_argument("--grid-n must be at least 2");
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out);
  return std::filesystem::path(cfg.out) / name;
}

void write(const RunConfig& cfg, const std::string& name, const std::string& content) {
  io::write_file(out_path(cfg, name).string(), content);
}

void write_table(const RunConfig& cfg, const std::string& stem, const SpectralDecomposition& d) {
  write(cfg, stem + ".json", io::decomposition_to_json(d));
  write(cfg, stem + ".csv", io::decomposition_to_csv(d));
}

paraxial::FieldGrid grid_for(const RunConfig& cfg, const SpectralDecomposition& d, double z) {
  const paraxial::BeamGeometry beam(cfg.w0, cfg.wavelength);
  const double extent = cfg.grid_extent > 0.0 ? cfg.grid_extent : 3.0 * cfg.w0;
  // Tables are basis-relative: rescale coefficients' waist to the beam's.
  SpectralDecomposition scaled = d;
  scaled.w0 = cfg.w0;
  return paraxial::synthesize(scaled, {cfg.grid_n, cfg.grid_n, extent}, z, beam);
}

SpectralDecomposition input_table(const RunConfig& cfg) {
  if (cfg.table.empty()) return classical_decomposition(cfg);
  try {
    return io::decomposition_from_json(io::read_file(cfg.table));
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("unreadable table: ") + e.what());
  }
}

void write_grid(const RunConfig& cfg, const std::string& stem, const paraxial::FieldGrid& g) {
  write(cfg, stem + ".csv", io::grid_to_csv(g));
  write(cfg, stem + "_amplitude.pgm", io::grid_amplitude_pgm(g));
  write(cfg, stem + "_phase.pgm", io::grid_phase_pgm(g));
}

int cmd_decompose(const RunConfig& cfg) {
  SpectralDecomposition classical;
  SpectralDecomposition quantum;
  const bool want_c = cfg.method != Method::Quantum;
  const bool want_q = cfg.method != Method::Classical;
  if (want_c) {
    classical = classical_decomposition(cfg);
    write_table(cfg, "classical", classical);
  }
  if (want_q) {
    quantum = quantum_decomposition(cfg);
    write_table(cfg, "quantum", quantum);
  }
  if (want_c && want_q) {
    const auto report = oracle::compare_decompositions(classical, quantum, IndexWindow{cfg.window, cfg.window});
    write(cfg, "report.json", io::report_to_json(report));
    std::cout << "max_abs_diff " << report.max_abs_diff << "\n";
  }
  return kOk;
}

int cmd_synthesize(const RunConfig& cfg) {
  const SpectralDecomposition d = input_table(cfg);
  write_grid(cfg, "field", grid_for(cfg, d, cfg.z));
  return kOk;
}

int cmd_propagate(const RunConfig& cfg) {
  const SpectralDecomposition d = input_table(cfg);
  const paraxial::BeamGeometry beam(cfg.w0, cfg.wavelength);
  const paraxial::FieldGrid waist = grid_for(cfg, d, 0.0);
  const paraxial::FieldGrid far = grid_for(cfg, d, cfg.z);
  write_grid(cfg, "field_z", far);
  const nlohmann::json summary = {{"z", cfg.z},
                                  {"rayleigh_range", beam.rayleigh_range()},
                                  {"waist", beam.waist(cfg.z)},
                                  {"inverse_radius", beam.inverse_radius(cfg.z)},
                                  {"gouy", beam.gouy(cfg.z)},
                                  {"grid_power_waist", waist.power()},
                                  {"grid_power_z", far.power()}};
  write(cfg, "propagation.json", summary.dump(2) + "\n");
  return kOk;
}

int cmd_compare(const RunConfig& cfg) {
  const SpectralDecomposition classical = classical_decomposition(cfg);
  const SpectralDecomposition quantum = quantum_decomposition(cfg);
  const auto report = oracle::compare_decompositions(classical, quantum, IndexWindow{cfg.window, cfg.window});
  write(cfg, "report.json", io::report_to_json(report));
  std::cout << "max_abs_diff " << report.max_abs_diff << " power_diff " << report.power_diff << "\n";
  return report.max_abs_diff < cfg.tol ? kOk : kDisagree;
}

int cmd_charge_map(const RunConfig& cfg) {
  const SpectralDecomposition d = input_table(cfg);
  const paraxial::FieldGrid g = grid_for(cfg, d, cfg.z);
  const Eigen::MatrixXi charges = paraxial::residue_charges(g);
  std::ostringstream csv;
  csv.precision(17);
  csv << "row,col,x,y,charge\n";
  nlohmann::json vortices = nlohmann::json::array();
  for (int r = 0; r < charges.rows(); ++r) {
    for (int c = 0; c < charges.cols(); ++c) {
      if (charges(r, c) == 0) continue;
      const double x = g.x(c) + 0.5 * g.dx();
      const double y = g.y(r) + 0.5 * g.dy();
      csv << r << ',' << c << ',' << x << ',' << y << ',' << charges(r, c) << '\n';
      vortices.push_back({{"x", x}, {"y", y}, {"charge", charges(r, c)}});
    }
  }
  write(cfg, "charge_map.csv", csv.str());
  const double radius = cfg.loop_radius > 0.0 ? cfg.loop_radius : 0.5 * cfg.w0;
  nlohmann::json summary = {{"loop_radius", radius}, {"vortices", vortices}};
  try {
    summary["charge"] = paraxial::topological_charge(g, radius);
  } catch (const paraxial::DegenerateLoop& e) {
    summary["charge"] = nullptr;
    summary["error"] = e.what();
  }
  write(cfg, "charge.json", summary.dump(2) + "\n");
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q, "plate topological charge");
  sub->add_option("--w0", cfg.w0, "beam waist [m]");
  sub->add_option("--wavelength", cfg.wavelength, "wavelength [m]");
  sub->add_option("--r0", cfg.r0, "beam displacement [m]");
  sub->add_option("--phi0", cfg.phi0, "displacement azimuth [rad]");
  sub->add_option("--dislocation", cfg.dislocation_angle, "plate edge-dislocation azimuth [rad]");
  sub->add_option("--z", cfg.z, "propagation distance [m]");
  sub->add_option("--pmax", cfg.truncation.p_max, "largest radial index kept");
  sub->add_option("--lmax", cfg.truncation.l_max, "largest |l| kept");
  sub->add_option("--kmax", cfg.truncation.k_max, "largest plate harmonic |k|");
  sub->add_option("--mmax", cfg.m_max, "occupation cap of the operator series");
  sub->add_option("--series-tol", cfg.truncation.series_tol, "input amplitude floor of the coupling sum");
  sub->add_option("--tail-tol", cfg.tail_tol, "largest tolerated truncation power loss");
  sub->add_option("--tol", cfg.tol, "agreement tolerance for compare");
  sub->add_option("--method", cfg.method, "classical, quantum or both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Method>{{"classical", Method::Classical}, {"quantum", Method::Quantum}, {"both", Method::Both}},
          CLI::ignore_case));
  sub->add_option("--grid-n", cfg.grid_n, "samples per grid axis");
  sub->add_option("--grid-extent", cfg.grid_extent, "grid half extent [m] (default 3 w0)");
  sub->add_option("--window", cfg.window, "comparison window: p <= N and |l| <= N");
  sub->add_option("--loop-radius", cfg.loop_radius, "circulation loop radius [m] (default w0/2)");
  sub->add_option("--table", cfg.table, "coefficient table (JSON) to synthesize");
  sub->add_option("--out", cfg.out, "output directory");
}

}  // namespace

SpectralDecomposition classical_decomposition(const RunConfig& cfg) {
  validate(cfg);
  const double phi_in = cfg.phi0 - cfg.dislocation_angle;
  SpectralDecomposition d;
  if (cfg.r0 == 0.0) {
    d = classical::gaussian_spp_coeffs(cfg.q, cfg.truncation, cfg.w0, cfg.dislocation_angle);
    return d;
  }
  if (cfg.q == 0.0) return classical::displaced_gaussian_coeffs(cfg.r0, cfg.phi0, cfg.w0, cfg.truncation);
  d = classical::displaced_spp_coeffs(cfg.q, cfg.r0, phi_in, cfg.w0, cfg.truncation);
  d = rotate(d, cfg.dislocation_angle);
  d.refresh_power();
  return d;
}

SpectralDecomposition quantum_decomposition(const RunConfig& cfg) {
  validate(cfg);
  const double phi_in = cfg.phi0 - cfg.dislocation_angle;
  quantum::TwoModeState state;
  if (cfg.q == 0.0) {
    state = quantum::displace_vacuum(alpha_magnitude(cfg), cfg.phi0);
    SpectralDecomposition d = restrict_to(quantum::state_to_lg_coeffs(state, cfg.w0), cfg.truncation);
    return d;
  }
  state = quantum::displaced_spp_quantum(cfg.q, alpha_magnitude(cfg), phi_in, cfg.operator_truncation());
  SpectralDecomposition d = rotate(quantum::state_to_lg_coeffs(state, cfg.w0), cfg.dislocation_angle);
  d.q = cfg.q;
  return restrict_to(d, cfg.truncation);
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Spiral phase plate diffraction: LG decompositions, field synthesis and classical-quantum comparison"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::map<std::string, int (*)(const RunConfig&)> handlers = {
      {"decompose", cmd_decompose}, {"synthesize", cmd_synthesize}, {"propagate", cmd_propagate},
      {"compare", cmd_compare},     {"charge-map", cmd_charge_map}};
  const std::map<std::string, std::string> help = {
      {"decompose", "write LG coefficient tables (JSON and CSV)"},
      {"synthesize", "write the field grid (CSV) and amplitude/phase images (PGM)"},
      {"propagate", "synthesize at z and report beam parameters and grid power"},
      {"compare", "run both pipelines; exit 0 iff they agree within --tol"},
      {"charge-map", "locate phase vortices and measure the circulation on a loop"}};
  for (const auto& [name, fn] : handlers) add_common(app.add_subcommand(name, help.at(name)), cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }
  for (const auto& [name, fn] : handlers) {
    if (!app.got_subcommand(name)) continue;
    cfg.command = name;
    try {
      return fn(cfg);
    } catch (const quantum::TruncationOverflow& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kTruncation;
    } catch (const oracle::NotConverged& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kTruncation;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBadInput;
    }
  }
  return kBadInput;
}

}  // namespace sppkit::cli
