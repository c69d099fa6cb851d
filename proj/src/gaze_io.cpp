#include "gazeid/gaze_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gazeid/util.hpp"

namespace gazeid {

namespace {

constexpr const char* kCsvHeader =
    "t_ms,theta_x_deg,theta_y_deg,stim_x_deg,stim_y_deg,valid";

// Symmetric padding: the edge sample is mirrored (… s1 s0 | s0 s1 …).
double sym_at(const std::vector<double>& s, long i) {
  const long n = static_cast<long>(s.size());
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return s[static_cast<std::size_t>(i)];
}

// Linear-phase low-pass for 4:1 decimation: 49-tap Hamming-windowed sinc,
// cutoff 0.8 x the new Nyquist (100 Hz at a 1000 Hz input), taps normalized
// to unit DC gain so constants pass through exactly.
const std::vector<double>& decimation_taps() {
  static const std::vector<double> taps = [] {
    constexpr int n_taps = 49;
    constexpr double fc = 0.8 * (125.0 / 1000.0);  // cycles per input sample
    const int mid = (n_taps - 1) / 2;
    std::vector<double> h(n_taps);
    double sum = 0.0;
    for (int i = 0; i < n_taps; ++i) {
      const double m = i - mid;
      const double x = 2.0 * fc * m;
      const double sinc = m == 0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
      const double window =
          0.54 - 0.46 * std::cos(2.0 * kPi * i / (n_taps - 1));
      h[i] = 2.0 * fc * sinc * window;
      sum += h[i];
    }
    for (double& v : h) v /= sum;
    return h;
  }();
  return taps;
}

double filtered_at(const std::vector<double>& s, long center) {
  const std::vector<double>& h = decimation_taps();
  const long mid = static_cast<long>(h.size() - 1) / 2;
  double acc = 0.0;
  for (long j = 0; j < static_cast<long>(h.size()); ++j)
    acc += h[static_cast<std::size_t>(j)] * sym_at(s, center + j - mid);
  return acc;
}

}  // namespace

RecordingId recording_id_from_stem(const std::string& stem) {
  std::size_t pos = stem.rfind("_s");
  if (pos != std::string::npos && pos + 2 < stem.size()) {
    std::string tail = stem.substr(pos + 2);
    if (std::all_of(tail.begin(), tail.end(),
                    [](unsigned char c) { return std::isdigit(c); }))
      return {stem.substr(0, pos), tail};
  }
  return {stem, "1"};
}

AcquisitionGeometry parse_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open geometry file " + path.string());
  std::map<std::string, double> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::replace(t.begin(), t.end(), '=', ' ');
    std::istringstream ss(t);
    std::string key, value;
    if (!(ss >> key >> value))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'key value'");
    kv[key] = util::parse_double(value, key);
  }
  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error(path.string() + ": missing key '" + key + "'");
    return it->second;
  };
  AcquisitionGeometry g;
  g.head_distance_mm = need("head_distance_mm");
  g.screen_width_mm = need("screen_width_mm");
  g.screen_height_mm = need("screen_height_mm");
  g.screen_width_px = static_cast<int>(need("screen_width_px"));
  g.screen_height_px = static_cast<int>(need("screen_height_px"));
  g.sample_rate_hz = need("sample_rate_hz");
  g.validate();
  return g;
}

void write_geometry(const std::filesystem::path& path,
                    const AcquisitionGeometry& g) {
  std::ostringstream out;
  out << "head_distance_mm " << util::format_double(g.head_distance_mm) << "\n"
      << "screen_width_mm " << util::format_double(g.screen_width_mm) << "\n"
      << "screen_height_mm " << util::format_double(g.screen_height_mm) << "\n"
      << "screen_width_px " << g.screen_width_px << "\n"
      << "screen_height_px " << g.screen_height_px << "\n"
      << "sample_rate_hz " << util::format_double(g.sample_rate_hz) << "\n";
  util::write_file_atomic(path, out.str());
}

GazeRecording parse_recording_stream(std::istream& in, const std::string& name,
                                     const AcquisitionGeometry& geometry,
                                     StimulusKind stimulus) {
  geometry.validate();
  GazeRecording rec;
  RecordingId id = recording_id_from_stem(name);
  rec.subject_id = id.subject;
  rec.session_id = id.session;
  rec.stimulus = stimulus;
  rec.geometry = geometry;

  std::string line;
  int line_no = 0;
  if (!std::getline(in, line))
    throw std::runtime_error(name + ": empty file");
  ++line_no;
  if (util::trim(line) != kCsvHeader)
    throw std::runtime_error(name + ":1: bad header, expected '" +
                             std::string(kCsvHeader) + "'");

  while (std::getline(in, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    std::vector<std::string> cols = util::split(line, ',');
    if (cols.size() != 6)
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": expected 6 columns, got " +
                               std::to_string(cols.size()));
    const std::string where = name + ":" + std::to_string(line_no);
    GazeSample s;
    try {
      s.t_ms = util::parse_double(cols[0], "t_ms");
      s.theta_x = util::parse_double(cols[1], "theta_x_deg") * kRadPerDeg;
      s.theta_y = util::parse_double(cols[2], "theta_y_deg") * kRadPerDeg;
      s.stim_x = util::parse_double(cols[3], "stim_x_deg") * kRadPerDeg;
      s.stim_y = util::parse_double(cols[4], "stim_y_deg") * kRadPerDeg;
      long v = util::parse_long(cols[5], "valid");
      if (v != 0 && v != 1) throw std::invalid_argument("valid must be 0 or 1");
      s.valid = v == 1;
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    if (!rec.samples.empty() && s.t_ms <= rec.samples.back().t_ms)
      throw std::invalid_argument(where + ": timestamps must be strictly increasing");
    rec.samples.push_back(s);
  }
  rec.validate();
  return rec;
}

GazeRecording parse_recording(const std::filesystem::path& path,
                              const AcquisitionGeometry& geometry,
                              StimulusKind stimulus) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open recording " + path.string());
  return parse_recording_stream(in, path.stem().string(), geometry, stimulus);
}

void write_recording_csv(const std::filesystem::path& path,
                         const GazeRecording& rec) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  char buf[256];
  for (const GazeSample& s : rec.samples) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.9f,%.9f,%.9f,%.9f,%d\n", s.t_ms,
                  s.theta_x * kDegPerRad, s.theta_y * kDegPerRad,
                  s.stim_x * kDegPerRad, s.stim_y * kDegPerRad,
                  s.valid ? 1 : 0);
    out << buf;
  }
  util::write_file_atomic(path, out.str());
}

GazeRecording decimate_to_250(const GazeRecording& rec) {
  rec.validate();
  if (rec.geometry.sample_rate_hz == 250.0) return rec;
  if (rec.geometry.sample_rate_hz != 1000.0)
    throw std::invalid_argument("decimate_to_250: unsupported input rate " +
                                std::to_string(rec.geometry.sample_rate_hz));

  const std::size_t n = rec.samples.size();
  std::vector<double> tx(n), ty(n), sx(n), sy(n);
  for (std::size_t i = 0; i < n; ++i) {
    tx[i] = rec.samples[i].theta_x;
    ty[i] = rec.samples[i].theta_y;
    sx[i] = rec.samples[i].stim_x;
    sy[i] = rec.samples[i].stim_y;
  }

  GazeRecording out;
  out.subject_id = rec.subject_id;
  out.session_id = rec.session_id;
  out.stimulus = rec.stimulus;
  out.geometry = rec.geometry;
  out.geometry.sample_rate_hz = 250.0;
  const std::size_t m = (n + 3) / 4;
  out.samples.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t src = 4 * i;
    GazeSample s;
    s.t_ms = rec.samples[src].t_ms;
    s.theta_x = filtered_at(tx, static_cast<long>(src));
    s.theta_y = filtered_at(ty, static_cast<long>(src));
    s.stim_x = filtered_at(sx, static_cast<long>(src));
    s.stim_y = filtered_at(sy, static_cast<long>(src));
    bool valid = true;
    for (std::size_t j = src; j < std::min(src + 4, n); ++j)
      valid = valid && rec.samples[j].valid;
    s.valid = valid;
    out.samples[i] = s;
  }
  return out;
}

ScreenTrace to_screen(const GazeRecording& rec) {
  rec.geometry.validate();
  const AcquisitionGeometry& g = rec.geometry;
  const double gain_x = g.head_distance_mm * g.screen_width_px / g.screen_width_mm;
  const double gain_y = g.head_distance_mm * g.screen_height_px / g.screen_height_mm;

  ScreenTrace trace;
  trace.t_ms.reserve(rec.samples.size());
  trace.x.reserve(rec.samples.size());
  trace.y.reserve(rec.samples.size());
  trace.valid.reserve(rec.samples.size());
  for (std::size_t i = 0; i < rec.samples.size(); ++i) {
    const GazeSample& s = rec.samples[i];
    if (std::abs(s.theta_x) >= kPi / 2 || std::abs(s.theta_y) >= kPi / 2)
      throw std::domain_error("to_screen: |theta| >= pi/2 at sample " +
                              std::to_string(i));
    trace.t_ms.push_back(s.t_ms);
    trace.x.push_back(gain_x * std::tan(s.theta_x) + g.screen_width_px / 2.0);
    trace.y.push_back(gain_y * std::tan(s.theta_y) + g.screen_height_px / 2.0);
    trace.valid.push_back(s.valid ? 1 : 0);
  }
  return trace;
}

double screen_to_theta_x(double x, const AcquisitionGeometry& g) {
  const double gain = g.head_distance_mm * g.screen_width_px / g.screen_width_mm;
  return std::atan((x - g.screen_width_px / 2.0) / gain);
}

double screen_to_theta_y(double y, const AcquisitionGeometry& g) {
  const double gain = g.head_distance_mm * g.screen_height_px / g.screen_height_mm;
  return std::atan((y - g.screen_height_px / 2.0) / gain);
}

}  // namespace gazeid
