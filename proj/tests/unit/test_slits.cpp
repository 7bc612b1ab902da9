#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sorkin/core.hpp"
#include "sorkin/slits.hpp"

using namespace sorkin;
using namespace sorkin::slits;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SlitGeometry two_slits(double separation) {
  SlitGeometry g = default_geometry();
  g.centers = {-separation / 2, separation / 2};
  return g;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("amplitude hand values") {
  SlitGeometry g = default_geometry();
  g.centers = {0.0, 1e-4};
  const auto a = amplitude(g, 0b01, 0.0);
  CHECK(a.real() == 1.0);
  CHECK(a.imag() == 0.0);

  const double d = 1e-4;
  const SlitGeometry sym = two_slits(d);
  CHECK(std::abs(amplitude(sym, 0b11, 0.0) - 2.0 * amplitude(sym, 0b01, 0.0)) <= 1e-15);
  const double null = sym.wavelength * sym.distance / (2 * d);
  CHECK(std::abs(amplitude(sym, 0b11, null)) <= 1e-10 * std::abs(amplitude(sym, 0b11, 0.0)));
  CHECK_THROWS_AS(amplitude(sym, 0, 0.0), Error);
  CHECK_THROWS_AS(amplitude(sym, 0b100, 0.0), Error);
}

TEST_CASE("amplitudes add over disjoint apertures") {
  std::mt19937_64 rng(1);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const SlitGeometry g = random_geometry(rng);
    for (std::size_t i = 0; i < g.detectors.size(); i += 50) {
      const double x = g.detectors[i];
      for (Aperture s : {0b001u, 0b010u, 0b011u}) {
        const Aperture t = 0b111u & ~s;
        worst = std::max(worst, std::abs(amplitude(g, s | t, x) - amplitude(g, s, x) -
                                         amplitude(g, t, x)));
      }
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("one-slit pattern is a monotone envelope") {
  const SlitGeometry g = default_geometry();
  const auto p = pattern(g, 0b010, DetectorResponse::ideal());
  // Monotone on each side of the centre out to the first envelope zero at
  // lambda L / w = 4.86 mm, which lies inside the 5 mm window.
  const double zero = g.wavelength * g.distance / g.width;
  const std::size_t mid = p.size() / 2;
  for (std::size_t i = mid; i + 1 < p.size() && g.detectors[i + 1] < zero; ++i) CHECK(p[i + 1] <= p[i]);
  for (std::size_t i = mid; i > 0 && g.detectors[i - 1] > -zero; --i) CHECK(p[i - 1] <= p[i]);
  for (double v : p) CHECK(v >= 0.0);
}

TEST_CASE("two-slit pattern follows the closed-form fringe formula") {
  const double d = 1e-4;
  const SlitGeometry g = two_slits(d);
  const auto p = pattern(g, 0b11, DetectorResponse::ideal());
  const double k = M_PI / (g.wavelength * g.distance);
  std::vector<double> ref(g.detectors.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double x = g.detectors[i];
    const double beta = k * g.width * x;
    const double envelope = beta == 0 ? 1.0 : std::sin(beta) / beta;
    ref[i] = 4 * envelope * envelope * std::pow(std::cos(k * d * x), 2);
  }
  double integral = 0;
  for (std::size_t i = 1; i < ref.size(); ++i) {
    integral += 0.5 * (ref[i] + ref[i - 1]) * (g.detectors[i] - g.detectors[i - 1]);
  }
  integral /= g.detectors.back() - g.detectors.front();
  double worst = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(p[i] - ref[i] / integral));
  CHECK(worst <= 1e-12 * max_abs(p));
}

TEST_CASE("fully-open pattern has unit mean over the window") {
  const SlitGeometry g = default_geometry();
  const auto p = pattern(g, 0b111, DetectorResponse::ideal());
  double integral = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    integral += 0.5 * (p[i] + p[i - 1]) * (g.detectors[i] - g.detectors[i - 1]);
  }
  CHECK(integral / (g.detectors.back() - g.detectors.front()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("responses") {
  const SlitGeometry g = default_geometry();
  CHECK(pattern(g, 0b101, DetectorResponse::ideal()) ==
        pattern(g, 0b101, DetectorResponse::saturating(0.0)));
  CHECK_THROWS_AS(DetectorResponse::saturating(1.0), Error);
  CHECK_THROWS_AS(DetectorResponse::saturating(-0.1), Error);
  const auto sat = DetectorResponse::saturating(0.3);
  CHECK(sat.apply(0.5) == doctest::Approx(0.5 - 0.3 * 0.25));
  for (double p = 0; p < 1.0; p += 0.01) CHECK(sat.apply(p + 0.01) > sat.apply(p));
}

TEST_CASE("second-order interference is visible with two slits") {
  const SlitGeometry g = default_geometry();
  const auto ideal = DetectorResponse::ideal();
  const auto p12 = pattern(g, 0b011, ideal);
  const auto p1 = pattern(g, 0b001, ideal);
  const auto p2 = pattern(g, 0b010, ideal);
  double dev = 0;
  for (std::size_t i = 0; i < p12.size(); ++i) dev = std::max(dev, std::abs(p12[i] - p1[i] - p2[i]));
  CHECK(dev > 0.1 * max_abs(p12));
}

TEST_CASE("Sorkin residual") {
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    worst = std::max(worst,
                     sorkin_residual(random_geometry(rng), DetectorResponse::ideal()).max_relative_residual);
  }
  CHECK(worst <= 1e-12);

  const SlitGeometry g = default_geometry();
  const auto r = sorkin_residual(g, DetectorResponse::saturating(0.1));
  CHECK(r.max_relative_residual > 1e-3);
  CHECK(r.x.size() == g.detectors.size());
  CHECK(r.patterns[0] == pattern(g, 0b111, DetectorResponse::saturating(0.1)));

  const double r1 = sorkin_residual(g, DetectorResponse::saturating(0.01)).max_relative_residual;
  const double r2 = sorkin_residual(g, DetectorResponse::saturating(0.02)).max_relative_residual;
  CHECK(r2 / r1 >= 1.8);
  CHECK(r2 / r1 <= 2.2);

  SlitGeometry two = g;
  two.centers = {-1e-4, 1e-4};
  CHECK_THROWS_AS(sorkin_residual(two, DetectorResponse::ideal()), Error);
}

TEST_CASE("dimming one slit collapses the saturating residual") {
  SlitGeometry g = default_geometry();
  const auto sat = DetectorResponse::saturating(0.1);
  const double full = sorkin_residual(g, sat).max_relative_residual;
  double previous = full;
  for (double t : {0.3, 0.1, 1e-2, 1e-3}) {
    g.transmission = {1.0, 1.0, t};
    const double r = sorkin_residual(g, sat).max_relative_residual;
    CHECK(r < previous);
    previous = r;
  }
  CHECK(previous <= 1e-2 * full);
  g.transmission = {1.0, 1.0, 0.0};
  CHECK(sorkin_residual(g, sat).max_relative_residual <= 1e-15);
}

TEST_CASE("geometry validation") {
  SlitGeometry g = default_geometry();
  g.centers = {0.0, 0.0, 1e-4};
  CHECK_THROWS_AS(g.validate(), Error);
  g = default_geometry();
  g.width = 0;
  CHECK_THROWS_AS(g.validate(), Error);
  g = default_geometry();
  g.centers = {0.0};
  CHECK_THROWS_AS(g.validate(), Error);
  g = default_geometry();
  g.transmission = {1.0};
  CHECK_THROWS_AS(g.validate(), Error);
  CHECK_NOTHROW(default_geometry().validate());
}

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0, 5e-324}) {
    const std::string s = format_double(v);
    double back = 1.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(100.0) == "100");
}

TEST_CASE("CSV export round trips bit-exactly") {
  const SlitConfig cfg = default_config();
  const auto r = sorkin_residual(cfg.geometry, DetectorResponse::saturating(0.05));
  const std::string csv = to_csv(r, cfg);
  CHECK(csv.find("\nx,P123,P12,P13,P23,P1,P2,P3,residual\n") != std::string::npos);
  const auto rows = read_csv_rows(csv);
  REQUIRE(rows.size() == cfg.geometry.detectors.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][0] == r.x[i]);
    for (int k = 0; k < 7; ++k) CHECK(rows[i][k + 1] == r.patterns[k][i]);
    CHECK(rows[i][8] == r.residual[i]);
  }

  const auto path = std::filesystem::temp_directory_path() / "sorkin_export_test.csv";
  export_pattern(r, cfg, path);
  CHECK(read_file(path) == csv);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(export_pattern(r, cfg, "/nonexistent-dir/x.csv"), Error);
}

TEST_CASE("empty detector list gives a header-only file") {
  SlitConfig cfg = default_config();
  cfg.geometry.detectors.clear();
  const auto r = sorkin_residual(cfg.geometry, cfg.response);
  const std::string csv = to_csv(r, cfg);
  CHECK(read_csv_rows(csv).empty());
  CHECK(csv.ends_with("\nx,P123,P12,P13,P23,P1,P2,P3,residual\n"));
}

TEST_CASE("default CSV matches the frozen fixture") {
  const SlitConfig cfg = default_config();
  const auto r = sorkin_residual(cfg.geometry, cfg.response);
  CHECK(to_csv(r, cfg) == read_file(SORKIN_FIXTURE_DIR "/default_slits.csv"));
}

TEST_CASE("config parsing") {
  const SlitConfig shipped = load_config(SORKIN_SOURCE_DIR "/tools/configs/default.toml");
  const SlitConfig builtin = default_config();
  CHECK(shipped.geometry.centers == builtin.geometry.centers);
  CHECK(shipped.geometry.detectors == builtin.geometry.detectors);
  CHECK(shipped.geometry.wavelength == builtin.geometry.wavelength);
  CHECK(shipped.response.mode == DetectorResponse::Mode::kIdeal);

  const SlitConfig sat = load_config(SORKIN_SOURCE_DIR "/tools/configs/saturating.toml");
  CHECK(sat.response.mode == DetectorResponse::Mode::kSaturating);
  CHECK(sat.response.epsilon == 0.1);

  const std::string base =
      "wavelength = 5e-7\nslit_width = 1e-5\nslit_centers = [-5e-5, 0, 5e-5]\n"
      "screen_distance = 1\ndetector_min = -0.01\ndetector_max = 0.01\ndetector_count = 11\n";
  const SlitConfig ok = parse_config(base + "slit_transmission = [1, 0.5, 1]  # dim\n");
  CHECK(ok.geometry.detectors.size() == 11);
  CHECK(ok.geometry.transmission_of(1) == 0.5);

  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConfig);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(base.substr(base.find('\n') + 1)) == "missing required key 'wavelength'");
  CHECK(message(base + "colour = red\n") == "line 8: unknown key 'colour'");
  CHECK(message(base + "wavelength = 1\n") == "line 8: duplicate key 'wavelength'");
  CHECK(message(base + "garbage\n") == "line 8: expected 'key = value'");
  CHECK(message("wavelength = abc\n") == "line 1: key 'wavelength' expects a number, got 'abc'");
  CHECK(message(base + "response = fuzzy\n").rfind("line 8:", 0) == 0);
  CHECK(message(base + "response = \"saturating\"\nepsilon = 1.5\n").rfind("line 9:", 0) == 0);
  CHECK(message(base + "slit_centers = 1\n").find("duplicate") != std::string::npos);

  std::string one = base;
  one.replace(one.find("detector_count = 11"), 19, "detector_count = 1");
  CHECK(message(one).rfind("line 7:", 0) == 0);
  std::string unordered = base;
  unordered.replace(unordered.find("[-5e-5, 0, 5e-5]"), 16, "[0, -5e-5, 5e-5]");
  CHECK(message(unordered).find("strictly increasing") != std::string::npos);

  try {
    load_config("/nonexistent/sorkin.toml");
    FAIL("expected I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
