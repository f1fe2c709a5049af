#pragma once

#include <string>

#include "sppkit/quantum.hpp"
#include "sppkit/types.hpp"

namespace sppkit::cli {

enum class Method { Classical, Quantum, Both };

/// Everything a subcommand needs. Lengths in metres, angles in radians.
struct RunConfig {
  std::string command;
  double w0 = 100e-6;
  double wavelength = 632.8e-9;
  double r0 = 0.0;
  double phi0 = 0.0;
  double q = 0.0;
  double dislocation_angle = 0.0;
  double z = 0.0;
  TruncationPolicy truncation;
  int m_max = 60;
  double tail_tol = 0.1;
  double tol = 1e-6;
  Method method = Method::Classical;
  int grid_n = 512;
  double grid_extent = 0.0;  // 0 means 3 w0
  int window = 10;
  double loop_radius = 0.0;  // 0 means 0.5 w0
  std::string table;
  std::string out = ".";

  quantum::OperatorTruncation operator_truncation() const { return {truncation.k_max, m_max, tail_tol}; }
};

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDisagree = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kTruncation = 3;

/// Scenario from the config: on-axis plate when r0 = 0, bare displaced beam
/// when q = 0, displaced beam through the plate otherwise.
SpectralDecomposition classical_decomposition(const RunConfig& cfg);

/// The same scenario through the two-mode operator expansion, restricted to
/// the config's (p, l) truncation window.
SpectralDecomposition quantum_decomposition(const RunConfig& cfg);

/// Parses argv and runs the selected subcommand.
int run(int argc, const char* const* argv);

}  // namespace sppkit::cli
