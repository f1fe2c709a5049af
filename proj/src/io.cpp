#include "sppkit/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sppkit::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("unexpected JSON layout: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void put_u16(std::string& out, unsigned v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

template <typename F>
std::string pgm(const paraxial::FieldGrid& g, F&& level) {
  std::string out = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n65535\n";
  out.reserve(out.size() + 2 * static_cast<std::size_t>(g.nx) * g.ny);
  for (int row = g.ny - 1; row >= 0; --row) {
    for (int col = 0; col < g.nx; ++col) put_u16(out, level(g.samples(row, col)));
  }
  return out;
}

}  // namespace

std::string decomposition_to_json(const SpectralDecomposition& d) {
  json entries = json::array();
  for (const auto& [idx, c] : d.entries) {
    entries.push_back({{"p", idx.p}, {"l", idx.l}, {"re", c.real()}, {"im", c.imag()}});
  }
  json j = {{"w0", d.w0},
            {"q", d.q},
            {"entries", entries},
            {"captured_power", d.captured_power},
            {"truncation",
             {{"p_max", d.truncation.p_max},
              {"l_max", d.truncation.l_max},
              {"series_tol", d.truncation.series_tol},
              {"k_max", d.truncation.k_max}}}};
  return dump(j);
}

SpectralDecomposition decomposition_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    SpectralDecomposition d;
    d.w0 = j.at("w0").get<double>();
    d.q = j.value("q", 0.0);
    for (const auto& e : j.at("entries")) {
      const ModeIndex idx{e.at("p").get<int>(), e.at("l").get<int>()};
      if (idx.p < 0) throw FormatError("negative radial index in table");
      d.set(idx, {e.at("re").get<double>(), e.at("im").get<double>()});
    }
    if (j.contains("truncation")) {
      const json& t = j.at("truncation");
      d.truncation.p_max = t.value("p_max", d.truncation.p_max);
      d.truncation.l_max = t.value("l_max", d.truncation.l_max);
      d.truncation.series_tol = t.value("series_tol", d.truncation.series_tol);
      d.truncation.k_max = t.value("k_max", d.truncation.k_max);
    }
    d.refresh_power();
    return d;
  });
}

std::string decomposition_to_csv(const SpectralDecomposition& d) {
  std::ostringstream out;
  out << std::setprecision(17) << "p,l,re,im\n";
  for (const auto& [idx, c] : d.entries) out << idx.p << ',' << idx.l << ',' << c.real() << ',' << c.imag() << '\n';
  return out.str();
}

std::string state_to_json(const quantum::TwoModeState& s) {
  json entries = json::array();
  for (const auto& [occ, a] : s.amplitudes) {
    entries.push_back({{"n_plus", occ.n_plus}, {"n_minus", occ.n_minus}, {"re", a.real()}, {"im", a.imag()}});
  }
  return dump({{"entries", entries}, {"norm", s.norm()}});
}

quantum::TwoModeState state_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    quantum::TwoModeState s;
    for (const auto& e : j.at("entries")) {
      const quantum::CircularOccupation occ{e.at("n_plus").get<int>(), e.at("n_minus").get<int>()};
      if (occ.n_plus < 0 || occ.n_minus < 0) throw FormatError("negative occupation in state");
      s.add(occ, {e.at("re").get<double>(), e.at("im").get<double>()});
    }
    return s;
  });
}

std::string report_to_json(const oracle::EquivalenceReport& r) {
  return dump({{"max_abs_diff", r.max_abs_diff},
               {"power_diff", r.power_diff},
               {"worst_index", {{"p", r.worst_index.p}, {"l", r.worst_index.l}}},
               {"n_compared", r.n_compared}});
}

std::string grid_to_csv(const paraxial::FieldGrid& g) {
  std::ostringstream out;
  out << std::setprecision(17) << "x,y,re,im\n";
  for (int row = 0; row < g.ny; ++row) {
    for (int col = 0; col < g.nx; ++col) {
      const Complex v = g.samples(row, col);
      out << g.x(col) << ',' << g.y(row) << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  return out.str();
}

std::string grid_amplitude_pgm(const paraxial::FieldGrid& g) {
  const double peak = g.max_abs();
  return pgm(g, [peak](Complex v) -> unsigned {
    if (peak == 0.0) return 0;
    return static_cast<unsigned>(std::lround(std::abs(v) / peak * 65535.0));
  });
}

std::string grid_phase_pgm(const paraxial::FieldGrid& g) {
  return pgm(g, [](Complex v) -> unsigned {
    double phi = std::arg(v);
    if (phi < 0.0) phi += 2.0 * kPi;
    return static_cast<unsigned>(std::min(65535.0, std::floor(phi * 65536.0 / (2.0 * kPi))));
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace sppkit::io
