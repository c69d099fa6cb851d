#include "gazeid/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string_view>

namespace gazeid {

namespace {

// Literal inclusion columns of the published feature tables, one char per
// feature, index-aligned with the name lists below. Reviewed against the
// tables; the unit test checks these strings verbatim.
constexpr std::string_view kFixationMaskTex = "NNYYYYYYNYYY";
constexpr std::string_view kFixationMaskRan = "YNNYYYYYNYYY";
constexpr std::string_view kSaccadeMaskTex =
    "NY"
    "NYYYYY"    // M3S2K angular velocity
    "YYYYYN"    // M3S2K angular acceleration
    "YYYYYYYY"  // stdX..amplitude
    "YYYYYY"    // M3S2K vel X
    "YYYYYY"    // M3S2K vel Y
    "YYYYYY"    // M3S2K acc X
    "YYYYYY";   // M3S2K acc Y
constexpr std::string_view kSaccadeMaskRan =
    "NY"
    "NNNYYY"
    "YYYYYY"
    "YYYYYYYY"
    "YYYYYY"
    "YYYYNY"
    "YYYYYY"
    "YYNYYY";

std::vector<char> mask_from_string(std::string_view s) {
  std::vector<char> mask(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) mask[i] = s[i] == 'Y' ? 1 : 0;
  return mask;
}

const char* kM3s2kSuffix[6] = {"mean", "median", "max", "std", "skew", "kurt"};

std::vector<std::string> build_saccade_names() {
  std::vector<std::string> names;
  names.reserve(kSaccadeFeatureCount);
  names.emplace_back("duration_ms");
  names.emplace_back("dispersion");
  auto group = [&](const char* prefix) {
    for (const char* s : kM3s2kSuffix)
      names.emplace_back(std::string(prefix) + "_" + s);
  };
  group("ang_vel");
  group("ang_acc");
  names.emplace_back("std_x");
  names.emplace_back("std_y");
  names.emplace_back("path_length");
  names.emplace_back("angle_with_prev_saccade");
  names.emplace_back("distance_from_prev_saccade");
  names.emplace_back("saccadic_ratio");
  names.emplace_back("saccade_angle");
  names.emplace_back("saccade_amplitude");
  group("vel_x");
  group("vel_y");
  group("acc_x");
  group("acc_y");
  return names;
}

std::vector<double> slice(const std::vector<double>& series,
                          const Segment& seg) {
  return std::vector<double>(series.begin() + static_cast<long>(seg.start_index),
                             series.begin() + static_cast<long>(seg.end_index) + 1);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Population moments; skew and kurtosis of a zero-variance series are 0.
void moments(const std::vector<double>& v, double* std_out, double* skew_out,
             double* kurt_out) {
  const double m = mean_of(v);
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(v.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  *std_out = std::sqrt(m2);
  if (m2 > 0) {
    *skew_out = m3 / (m2 * std::sqrt(m2));
    *kurt_out = m4 / (m2 * m2);
  } else {
    *skew_out = 0.0;
    *kurt_out = 0.0;
  }
}

double std_of(const std::vector<double>& v) {
  double s, sk, ku;
  moments(v, &s, &sk, &ku);
  return s;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double path_length_of(const std::vector<double>& x,
                      const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    acc += std::hypot(x[i + 1] - x[i], y[i + 1] - y[i]);
  return acc;
}

double dispersion_of(const std::vector<double>& x,
                     const std::vector<double>& y) {
  auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  return (*xmax - *xmin) + (*ymax - *ymin);
}

struct Point {
  double x, y;
};

Point centroid_of(const KinematicProfiles& p, const Segment& seg) {
  return {mean_of(slice(p.pos_x, seg)), mean_of(slice(p.pos_y, seg))};
}

double saccade_angle_of(const KinematicProfiles& p, const Segment& seg) {
  return std::atan2(p.pos_y[seg.end_index] - p.pos_y[seg.start_index],
                    p.pos_x[seg.end_index] - p.pos_x[seg.start_index]);
}

double wrap_angle(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

void require_segment(const Segment& seg, const KinematicProfiles& profiles,
                     SegmentKind kind, const char* op) {
  if (seg.kind != kind)
    throw std::invalid_argument(std::string(op) + ": wrong segment kind");
  if (seg.sample_count() < 2)
    throw std::invalid_argument(std::string(op) +
                                ": degenerate segment (fewer than 2 samples)");
  if (seg.end_index >= profiles.size())
    throw std::invalid_argument(std::string(op) + ": segment exceeds profiles");
}

}  // namespace

M3s2k m3s2k(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("m3s2k: empty series");
  M3s2k r{};
  r.mean = mean_of(values);
  r.median = median_of(values);
  r.max = *std::max_element(values.begin(), values.end());
  moments(values, &r.std, &r.skewness, &r.kurtosis);
  return r;
}

const std::vector<std::string>& fixation_feature_names() {
  static const std::vector<std::string> names = {
      "duration_ms",
      "std_x",
      "std_y",
      "path_length",
      "angle_with_prev_fixation",
      "distance_from_prev_fixation",
      "skew_x",
      "skew_y",
      "kurtosis_x",
      "kurtosis_y",
      "dispersion",
      "average_velocity"};
  return names;
}

const std::vector<std::string>& saccade_feature_names() {
  static const std::vector<std::string> names = build_saccade_names();
  return names;
}

std::vector<char> default_fixation_mask(StimulusKind stimulus) {
  return mask_from_string(stimulus == StimulusKind::Tex ? kFixationMaskTex
                                                        : kFixationMaskRan);
}

std::vector<char> default_saccade_mask(StimulusKind stimulus) {
  return mask_from_string(stimulus == StimulusKind::Tex ? kSaccadeMaskTex
                                                        : kSaccadeMaskRan);
}

std::size_t FeatureSchema::active_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

void FeatureSchema::validate() const {
  const std::size_t expect = kind == SegmentKind::Fixation
                                 ? kFixationFeatureCount
                                 : kSaccadeFeatureCount;
  if (names.size() != expect)
    throw std::invalid_argument("schema: wrong feature count");
  if (mask.size() != names.size())
    throw std::invalid_argument("schema: mask length differs from names");
}

FeatureSchema fixation_schema(StimulusKind stimulus) {
  FeatureSchema s;
  s.kind = SegmentKind::Fixation;
  s.stimulus = stimulus;
  s.names = fixation_feature_names();
  s.mask = default_fixation_mask(stimulus);
  return s;
}

FeatureSchema saccade_schema(StimulusKind stimulus) {
  FeatureSchema s;
  s.kind = SegmentKind::Saccade;
  s.stimulus = stimulus;
  s.names = saccade_feature_names();
  s.mask = default_saccade_mask(stimulus);
  return s;
}

FeatureVector fixation_features(const Segment& seg,
                                const KinematicProfiles& profiles,
                                const Segment* prev,
                                const FeatureSchema& schema) {
  require_segment(seg, profiles, SegmentKind::Fixation, "fixation_features");
  const std::vector<double> x = slice(profiles.pos_x, seg);
  const std::vector<double> y = slice(profiles.pos_y, seg);

  double std_x, skew_x, kurt_x, std_y, skew_y, kurt_y;
  moments(x, &std_x, &skew_x, &kurt_x);
  moments(y, &std_y, &skew_y, &kurt_y);
  const double path = path_length_of(x, y);

  double angle_prev = 0.0, dist_prev = 0.0;
  if (prev != nullptr) {
    const Point c = centroid_of(profiles, seg);
    const Point pc = centroid_of(profiles, *prev);
    angle_prev = std::atan2(c.y - pc.y, c.x - pc.x);
    dist_prev = std::hypot(c.x - pc.x, c.y - pc.y);
  }

  FeatureVector v;
  v.schema = &schema;
  v.values = {seg.duration_ms,
              std_x,
              std_y,
              path,
              angle_prev,
              dist_prev,
              skew_x,
              skew_y,
              kurt_x,
              kurt_y,
              dispersion_of(x, y),
              path / seg.duration_ms * 1000.0};  // px/s
  return v;
}

FeatureVector saccade_features(const Segment& seg,
                               const KinematicProfiles& profiles,
                               const Segment* prev,
                               const FeatureSchema& schema) {
  require_segment(seg, profiles, SegmentKind::Saccade, "saccade_features");
  const std::vector<double> x = slice(profiles.pos_x, seg);
  const std::vector<double> y = slice(profiles.pos_y, seg);
  const std::vector<double> w = slice(profiles.ang_vel, seg);

  const M3s2k ang_vel = m3s2k(w);
  const M3s2k ang_acc = m3s2k(slice(profiles.ang_acc, seg));
  const M3s2k vel_x = m3s2k(slice(profiles.vel_x, seg));
  const M3s2k vel_y = m3s2k(slice(profiles.vel_y, seg));
  const M3s2k acc_x = m3s2k(slice(profiles.acc_x, seg));
  const M3s2k acc_y = m3s2k(slice(profiles.acc_y, seg));

  const double angle = saccade_angle_of(profiles, seg);
  double angle_prev = 0.0, dist_prev = 0.0;
  if (prev != nullptr) {
    angle_prev = wrap_angle(angle - saccade_angle_of(profiles, *prev));
    const Point c = centroid_of(profiles, seg);
    const Point pc = centroid_of(profiles, *prev);
    dist_prev = std::hypot(c.x - pc.x, c.y - pc.y);
  }

  FeatureVector v;
  v.schema = &schema;
  v.values.reserve(kSaccadeFeatureCount);
  auto push_group = [&](const M3s2k& g) {
    v.values.insert(v.values.end(),
                    {g.mean, g.median, g.max, g.std, g.skewness, g.kurtosis});
  };
  v.values.push_back(seg.duration_ms);
  v.values.push_back(dispersion_of(x, y));
  push_group(ang_vel);
  push_group(ang_acc);
  v.values.push_back(std_of(x));
  v.values.push_back(std_of(y));
  v.values.push_back(path_length_of(x, y));
  v.values.push_back(angle_prev);
  v.values.push_back(dist_prev);
  v.values.push_back(*std::max_element(w.begin(), w.end()) / seg.duration_ms);
  v.values.push_back(angle);
  v.values.push_back(std::hypot(x.back() - x.front(), y.back() - y.front()));
  push_group(vel_x);
  push_group(vel_y);
  push_group(acc_x);
  push_group(acc_y);
  return v;
}

FeatureVector apply_mask(const FeatureVector& v, const FeatureSchema& schema) {
  schema.validate();
  if (v.values.size() != schema.mask.size())
    throw std::invalid_argument("apply_mask: value/mask length mismatch");
  if (schema.active_count() == 0)
    throw std::invalid_argument("apply_mask: mask excludes every feature");
  FeatureVector out;
  out.schema = &schema;
  out.values.reserve(schema.active_count());
  for (std::size_t i = 0; i < v.values.size(); ++i)
    if (schema.mask[i]) out.values.push_back(v.values[i]);
  return out;
}

NormalizationStats fit_normalizer(
    const std::vector<std::vector<double>>& vectors) {
  if (vectors.size() < 2)
    throw std::invalid_argument("fit_normalizer: need at least 2 vectors");
  const std::size_t dim = vectors.front().size();
  NormalizationStats stats;
  stats.min.assign(dim, std::numeric_limits<double>::infinity());
  stats.max.assign(dim, -std::numeric_limits<double>::infinity());
  for (const auto& v : vectors) {
    if (v.size() != dim)
      throw std::invalid_argument("fit_normalizer: inconsistent dimensions");
    for (std::size_t i = 0; i < dim; ++i) {
      stats.min[i] = std::min(stats.min[i], v[i]);
      stats.max[i] = std::max(stats.max[i], v[i]);
    }
  }
  return stats;
}

std::vector<double> normalize(const std::vector<double>& values,
                              const NormalizationStats& stats) {
  if (values.size() != stats.min.size())
    throw std::invalid_argument("normalize: dimension mismatch");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double range = stats.max[i] - stats.min[i];
    if (range <= 0) {
      out[i] = 0.5;  // constant training feature
    } else {
      out[i] = std::clamp((values[i] - stats.min[i]) / range, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace gazeid
