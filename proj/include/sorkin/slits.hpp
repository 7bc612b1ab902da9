#pragma once

// Far-field (Fraunhofer) n-slit single-particle simulator.
//
// Each open slit s contributes the path amplitude
//
//     t_s * sinc(pi w x / (lambda L)) * exp(i 2 pi (x^2 / 2L - c_s x / L) / lambda)
//
// at detector position x, where the exponent is the small-angle path length in
// excess of the screen distance L. Amplitudes of disjoint apertures add, so
// the seven-pattern Sorkin combination of a three-slit setup vanishes for an
// ideal detector.

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sorkin::slits {

struct SlitGeometry {
  std::vector<double> centers;  // strictly increasing
  double width = 0.0;
  double wavelength = 0.0;
  double distance = 0.0;
  std::vector<double> detectors;  // strictly increasing
  /// Per-slit amplitude transmission; empty means every slit transmits 1.
  std::vector<double> transmission;

  std::size_t slit_count() const { return centers.size(); }
  double transmission_of(std::size_t slit) const {
    return transmission.empty() ? 1.0 : transmission[slit];
  }
  /// kInvalidArgument on any violated invariant.
  void validate() const;
};

std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Three slits with wavelength, width, spacing (with jitter) and screen
/// distance drawn from laboratory ranges; 1001 detectors spanning the central
/// diffraction lobe.
SlitGeometry random_geometry(std::mt19937_64& rng);

/// Three slits 100 um apart, 30 um wide, 810 nm light, screen at 0.18 m,
/// 1001 detectors over +-5 mm.
SlitGeometry default_geometry();

/// Bit i set means slit i is open.
using Aperture = std::uint32_t;

struct DetectorResponse {
  enum class Mode { kIdeal, kSaturating };
  Mode mode = Mode::kIdeal;
  double epsilon = 0.0;

  static DetectorResponse ideal() { return {}; }
  /// Records p - eps p^2; eps must lie in [0, 1).
  static DetectorResponse saturating(double eps);

  double apply(double p) const {
    return mode == Mode::kIdeal ? p : p - epsilon * p * p;
  }
  std::string_view mode_name() const { return mode == Mode::kIdeal ? "ideal" : "saturating"; }
};

std::complex<double> amplitude(const SlitGeometry& geometry, Aperture aperture, double x);

/// |amplitude|^2 over the detectors, scaled by the normalization that makes
/// the fully-open pattern integrate (trapezoid rule) to 1 over the detector
/// window with the screen coordinate rescaled to unit length, then passed
/// through the detector response.
std::vector<double> pattern(const SlitGeometry& geometry, Aperture aperture,
                            const DetectorResponse& response);

/// Column order of the three-slit patterns: P123, P12, P13, P23, P1, P2, P3.
inline constexpr std::array<Aperture, 7> kSorkinApertures{0b111, 0b011, 0b101, 0b110,
                                                          0b001, 0b010, 0b100};
inline constexpr std::array<std::string_view, 7> kSorkinColumns{"P123", "P12", "P13", "P23",
                                                               "P1",   "P2",  "P3"};

struct SorkinResult {
  std::vector<double> x;
  std::array<std::vector<double>, 7> patterns;
  /// P123 - P12 - P13 - P23 + P1 + P2 + P3 per detector.
  std::vector<double> residual;
  /// max |residual| over the peak of the ideal fully-open pattern.
  double max_relative_residual = 0.0;
};

/// Requires exactly three slits.
SorkinResult sorkin_residual(const SlitGeometry& geometry, const DetectorResponse& response);

struct SlitConfig {
  SlitGeometry geometry;
  DetectorResponse response;
};

SlitConfig default_config();

/// TOML-style `key = value` lines. Keys: wavelength, slit_width, slit_centers,
/// screen_distance, detector_min, detector_max, detector_count, response,
/// epsilon, and optionally slit_transmission. Errors are kConfig with a
/// `line N:` prefix where a line is at fault.
SlitConfig parse_config(std::string_view text);
SlitConfig load_config(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// `#` geometry comment lines, header `x,P123,P12,P13,P23,P1,P2,P3,residual`,
/// one row per detector.
std::string to_csv(const SorkinResult& result, const SlitConfig& config);
void export_pattern(const SorkinResult& result, const SlitConfig& config,
                    const std::filesystem::path& path);

/// Parses the numeric rows of a file written by to_csv: 9 columns per row.
std::vector<std::array<double, 9>> read_csv_rows(std::string_view text);

}  // namespace sorkin::slits
