#pragma once

#include <stdexcept>
#include <string>

#include "sppkit/oracle.hpp"
#include "sppkit/paraxial.hpp"
#include "sppkit/quantum.hpp"
#include "sppkit/types.hpp"

/// File formats. Output is deterministic: entries in index order, doubles
/// printed with round-trip precision.
namespace sppkit::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"w0", "q", "entries": [{"p", "l", "re", "im"}], "captured_power",
//  "truncation": {"p_max", "l_max", "series_tol", "k_max"}}
std::string decomposition_to_json(const SpectralDecomposition& d);
SpectralDecomposition decomposition_from_json(const std::string& text);

/// Header "p,l,re,im", one row per entry.
std::string decomposition_to_csv(const SpectralDecomposition& d);

// {"entries": [{"n_plus", "n_minus", "re", "im"}], "norm"}
std::string state_to_json(const quantum::TwoModeState& s);
quantum::TwoModeState state_from_json(const std::string& text);

// {"max_abs_diff", "power_diff", "worst_index": {"p", "l"}, "n_compared"}
std::string report_to_json(const oracle::EquivalenceReport& r);

/// Header "x,y,re,im", rows in (row, col) order.
std::string grid_to_csv(const paraxial::FieldGrid& g);

/// Binary 16-bit PGM (P5, maxval 65535, big-endian), top row = largest y.
/// Amplitude is |V| scaled to the grid maximum; phase maps [0, 2 pi) linearly onto [0, 65535].
std::string grid_amplitude_pgm(const paraxial::FieldGrid& g);
std::string grid_phase_pgm(const paraxial::FieldGrid& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sppkit::io
