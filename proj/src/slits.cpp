#include "sorkin/slits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "sorkin/core.hpp"

namespace sorkin::slits {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "slit geometry: " + what);
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

Aperture all_open(const SlitGeometry& g) {
  return static_cast<Aperture>((std::uint64_t{1} << g.slit_count()) - 1);
}

std::vector<double> intensity(const SlitGeometry& g, Aperture aperture) {
  std::vector<double> out(g.detectors.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(amplitude(g, aperture, g.detectors[i]));
  return out;
}

// Trapezoid integral of `y` over the detector coordinate rescaled to [0, 1].
double unit_window_integral(const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) total += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return total / (x.back() - x.front());
}

double normalization(const SlitGeometry& g) {
  if (g.detectors.empty()) return 1.0;
  if (g.detectors.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "pattern normalization needs at least two detectors");
  }
  const double z = unit_window_integral(g.detectors, intensity(g, all_open(g)));
  if (!(z > 0.0)) throw Error(ErrorCode::kNumeric, "fully-open pattern integrates to zero");
  return z;
}

}  // namespace

void SlitGeometry::validate() const {
  require(centers.size() >= 2, "need at least two slits");
  require(centers.size() <= 16, "at most 16 slits");
  require(strictly_increasing(centers), "slit centers must be strictly increasing");
  require(width > 0.0 && std::isfinite(width), "slit width must be positive");
  require(wavelength > 0.0 && std::isfinite(wavelength), "wavelength must be positive");
  require(distance > 0.0 && std::isfinite(distance), "screen distance must be positive");
  require(strictly_increasing(detectors), "detector positions must be strictly increasing");
  require(transmission.empty() || transmission.size() == centers.size(),
          "slit_transmission needs one entry per slit");
  for (double t : transmission) require(t >= 0.0 && std::isfinite(t), "transmission must be >= 0");
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

SlitGeometry default_geometry() {
  SlitGeometry g;
  g.centers = {-100e-6, 0.0, 100e-6};
  g.width = 30e-6;
  g.wavelength = 810e-9;
  g.distance = 0.18;
  g.detectors = linspace(-5e-3, 5e-3, 1001);
  return g;
}

SlitGeometry random_geometry(std::mt19937_64& rng) {
  auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  SlitGeometry g;
  g.wavelength = uniform(400e-9, 1000e-9);
  g.width = uniform(10e-6, 50e-6);
  g.distance = uniform(0.1, 1.0);
  const double spacing = uniform(2.0, 8.0) * g.width;
  const double jitter = 0.2 * spacing;
  g.centers = {-spacing + uniform(-jitter, jitter), uniform(-jitter, jitter),
               spacing + uniform(-jitter, jitter)};
  const double lobe = g.wavelength * g.distance / g.width;
  g.detectors = linspace(-uniform(0.8, 1.2) * lobe, uniform(0.8, 1.2) * lobe, 1001);
  return g;
}

DetectorResponse DetectorResponse::saturating(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "saturation epsilon must lie in [0, 1)");
  }
  return {Mode::kSaturating, eps};
}

std::complex<double> amplitude(const SlitGeometry& g, Aperture aperture, double x) {
  if (aperture == 0) throw Error(ErrorCode::kInvalidArgument, "empty aperture");
  if (g.slit_count() < 32 && (aperture >> g.slit_count()) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "aperture names a slit that does not exist");
  }
  const double envelope = sinc(kPi * g.width * x / (g.wavelength * g.distance));
  const double common = x * x / (2.0 * g.distance);
  std::complex<double> total{0.0, 0.0};
  for (std::size_t s = 0; s < g.slit_count(); ++s) {
    if (((aperture >> s) & 1U) == 0) continue;
    const double path = common - g.centers[s] * x / g.distance;
    total += g.transmission_of(s) * envelope * std::polar(1.0, 2.0 * kPi * path / g.wavelength);
  }
  return total;
}

std::vector<double> pattern(const SlitGeometry& g, Aperture aperture,
                            const DetectorResponse& response) {
  g.validate();
  const double z = normalization(g);
  std::vector<double> p = intensity(g, aperture);
  for (double& v : p) v = response.apply(v / z);
  return p;
}

SorkinResult sorkin_residual(const SlitGeometry& g, const DetectorResponse& response) {
  g.validate();
  if (g.slit_count() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "the Sorkin residual needs exactly 3 slits, got " + std::to_string(g.slit_count()));
  }
  const double z = normalization(g);
  SorkinResult r;
  r.x = g.detectors;
  double ideal_peak = 0.0;
  for (std::size_t k = 0; k < kSorkinApertures.size(); ++k) {
    std::vector<double> p = intensity(g, kSorkinApertures[k]);
    for (double& v : p) {
      v /= z;
      if (k == 0) ideal_peak = std::max(ideal_peak, v);
      v = response.apply(v);
    }
    r.patterns[k] = std::move(p);
  }
  r.residual.resize(r.x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const auto& P = r.patterns;
    r.residual[i] = P[0][i] - P[1][i] - P[2][i] - P[3][i] + P[4][i] + P[5][i] + P[6][i];
    worst = std::max(worst, std::abs(r.residual[i]));
  }
  r.max_relative_residual = ideal_peak > 0.0 ? worst / ideal_peak : 0.0;
  return r;
}

// --- Configuration ----------------------------------------------------------

SlitConfig default_config() { return {default_geometry(), DetectorResponse::ideal()}; }

namespace {

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kConfig, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    config_error(line, "key '" + std::string(key) + "' expects a number, got '" +
                           std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_array(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    config_error(line, "key '" + std::string(key) + "' expects an array like [a, b, c]");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma), line, key));
    if (comma == std::string_view::npos) break;
    text = trim(text.substr(comma + 1));
  }
  return out;
}

std::string parse_word(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
  return std::string(text);
}

}  // namespace

SlitConfig parse_config(std::string_view text) {
  static const std::array<std::string_view, 10> kKnown{
      "wavelength",   "slit_width",   "slit_centers",   "screen_distance", "detector_min",
      "detector_max", "detector_count", "response",     "epsilon",         "slit_transmission"};
  static const std::array<std::string_view, 7> kRequired{
      "wavelength",   "slit_width",   "slit_centers",  "screen_distance",
      "detector_min", "detector_max", "detector_count"};

  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      config_error(line_no, "unknown key '" + key + "'");
    }
    if (entries.count(key)) config_error(line_no, "duplicate key '" + key + "'");
    entries[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  // Syntax errors on present keys take precedence over missing keys.
  for (const auto& [key, e] : entries) {
    if (key == "slit_centers" || key == "slit_transmission") {
      parse_array(e.value, e.line, key);
    } else if (key != "response") {
      parse_number(e.value, e.line, key);
    }
  }
  for (std::string_view key : kRequired) {
    if (!entries.count(key)) {
      throw Error(ErrorCode::kConfig, "missing required key '" + std::string(key) + "'");
    }
  }
  auto number = [&](std::string_view key) {
    const auto& e = entries.find(key)->second;
    return parse_number(e.value, e.line, key);
  };

  SlitConfig cfg;
  SlitGeometry& g = cfg.geometry;
  g.wavelength = number("wavelength");
  g.width = number("slit_width");
  g.distance = number("screen_distance");
  {
    const auto& e = entries.find("slit_centers")->second;
    g.centers = parse_array(e.value, e.line, "slit_centers");
  }
  if (auto it = entries.find("slit_transmission"); it != entries.end()) {
    g.transmission = parse_array(it->second.value, it->second.line, "slit_transmission");
  }
  const double lo = number("detector_min");
  const double hi = number("detector_max");
  const double count = number("detector_count");
  const auto& count_line = entries.find("detector_count")->second.line;
  if (count < 0 || count != std::floor(count) || count > 1e7) {
    config_error(count_line, "detector_count must be a nonnegative integer");
  }
  if (count == 1) config_error(count_line, "detector_count must be 0 or at least 2");
  if (count >= 2 && !(hi > lo)) {
    config_error(entries.find("detector_max")->second.line, "detector_max must exceed detector_min");
  }
  g.detectors = linspace(lo, hi, static_cast<std::size_t>(count));

  std::string mode = "ideal";
  std::size_t mode_line = 0;
  if (auto it = entries.find("response"); it != entries.end()) {
    mode = parse_word(it->second.value);
    mode_line = it->second.line;
  }
  double eps = 0.0;
  if (entries.count("epsilon")) eps = number("epsilon");
  if (mode == "ideal") {
    cfg.response = DetectorResponse::ideal();
  } else if (mode == "saturating") {
    if (!(eps >= 0.0 && eps < 1.0)) {
      config_error(entries.count("epsilon") ? entries.find("epsilon")->second.line : mode_line,
                   "epsilon must lie in [0, 1)");
    }
    cfg.response = DetectorResponse::saturating(eps);
  } else {
    config_error(mode_line, "response must be 'ideal' or 'saturating', got '" + mode + "'");
  }

  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return cfg;
}

SlitConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// --- CSV --------------------------------------------------------------------

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error(ErrorCode::kNumeric, "cannot format double");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const SorkinResult& r, const SlitConfig& cfg) {
  const SlitGeometry& g = cfg.geometry;
  std::string out;
  auto comment = [&](std::string_view key, const std::string& value) {
    out += "# ";
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
  };
  comment("units", "\"m\"");
  comment("wavelength", format_double(g.wavelength));
  comment("slit_width", format_double(g.width));
  comment("slit_centers", list(g.centers));
  if (!g.transmission.empty()) comment("slit_transmission", list(g.transmission));
  comment("screen_distance", format_double(g.distance));
  comment("detector_min", g.detectors.empty() ? "0" : format_double(g.detectors.front()));
  comment("detector_max", g.detectors.empty() ? "0" : format_double(g.detectors.back()));
  comment("detector_count", std::to_string(g.detectors.size()));
  comment("response", std::string(cfg.response.mode_name()));
  comment("epsilon", format_double(cfg.response.epsilon));

  out += "x";
  for (auto name : kSorkinColumns) {
    out += ',';
    out += name;
  }
  out += ",residual\n";
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    out += format_double(r.x[i]);
    for (const auto& col : r.patterns) out += ',' + format_double(col[i]);
    out += ',' + format_double(r.residual[i]);
    out += '\n';
  }
  return out;
}

void export_pattern(const SorkinResult& result, const SlitConfig& config,
                    const std::filesystem::path& path) {
  for (const auto& col : result.patterns) {
    if (col.size() != result.x.size()) {
      throw Error(ErrorCode::kInvalidArgument, "pattern columns differ in length");
    }
  }
  if (result.residual.size() != result.x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "residual length differs from detector count");
  }
  const std::string csv = to_csv(result, config);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << csv;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<std::array<double, 9>> read_csv_rows(std::string_view text) {
  std::vector<std::array<double, 9>> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::array<double, 9> row{};
    std::size_t col = 0;
    for (;;) {
      const auto comma = line.find(',');
      const std::string_view cell = line.substr(0, comma);
      if (col >= row.size()) config_error(line_no, "too many columns");
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[col]);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) config_error(line_no, "bad number");
      ++col;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (col != row.size()) config_error(line_no, "expected 9 columns");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sorkin::slits
