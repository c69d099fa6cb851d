#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gazeid/preprocess.hpp"
#include "gazeid/segmentation.hpp"
#include "gazeid/types.hpp"

namespace gazeid {

inline constexpr int kFixationFeatureCount = 12;
inline constexpr int kSaccadeFeatureCount = 46;

/// Named feature layout for one segment kind plus the per-stimulus
/// inclusion mask. Default masks encode the published selection tables;
/// custom masks (e.g. from a selection run) may replace them.
struct FeatureSchema {
  SegmentKind kind = SegmentKind::Fixation;
  StimulusKind stimulus = StimulusKind::Ran;
  std::vector<std::string> names;
  std::vector<char> mask;  // 1 = active

  std::size_t active_count() const;
  void validate() const;
};

FeatureSchema fixation_schema(StimulusKind stimulus);
FeatureSchema saccade_schema(StimulusKind stimulus);

const std::vector<std::string>& fixation_feature_names();
const std::vector<std::string>& saccade_feature_names();

/// Literal inclusion masks from the published feature tables,
/// index-aligned with the name lists above.
std::vector<char> default_fixation_mask(StimulusKind stimulus);
std::vector<char> default_saccade_mask(StimulusKind stimulus);

struct FeatureVector {
  const FeatureSchema* schema = nullptr;
  std::vector<double> values;
};

/// Raw (unmasked, unnormalized) fixation features in schema order:
/// duration, std X, std Y, path length, angle with previous fixation
/// centroid, distance from previous fixation centroid, skew X, skew Y,
/// kurtosis X, kurtosis Y, dispersion, average velocity (px/s).
/// Position statistics come from the smoothed screen profiles. `prev` is
/// the previous fixation of the same trace or nullptr for the first one
/// (angle and distance default to 0). Segments of fewer than 2 samples
/// raise std::invalid_argument.
FeatureVector fixation_features(const Segment& seg,
                                const KinematicProfiles& profiles,
                                const Segment* prev,
                                const FeatureSchema& schema);

/// Raw saccade features in schema order: duration, dispersion,
/// M3S2K(angular velocity), M3S2K(angular acceleration), std X, std Y,
/// path length, angle with previous saccade (difference of saccadic
/// angles), distance from previous saccade centroid, saccadic ratio
/// (peak angular velocity in deg/s divided by duration in ms), saccade
/// angle (atan2 of last-minus-first displacement, radians), saccade
/// amplitude, then M3S2K of vel X, vel Y, acc X, acc Y. M3S2K is
/// (mean, median, max, std, skewness, kurtosis) in that order.
FeatureVector saccade_features(const Segment& seg,
                               const KinematicProfiles& profiles,
                               const Segment* prev,
                               const FeatureSchema& schema);

/// Drops inactive features. An all-inactive mask raises
/// std::invalid_argument (degenerate configuration).
FeatureVector apply_mask(const FeatureVector& v, const FeatureSchema& schema);

/// Per-feature min/max over the training set, full (unmasked) length.
struct NormalizationStats {
  std::vector<double> min;
  std::vector<double> max;
};

/// Fits min-max statistics; needs at least 2 vectors. Constant features
/// are flagged via `constant_features` on the result by the caller's
/// inspection (min == max) and normalize to 0.5.
NormalizationStats fit_normalizer(const std::vector<std::vector<double>>& vectors);

/// Scales into [0,1] with training extremes; out-of-range values clamp.
std::vector<double> normalize(const std::vector<double>& values,
                              const NormalizationStats& stats);

/// Descriptive statistics used by the M3S2K groups. Population moments,
/// non-excess kurtosis (Gaussian -> 3); skew and kurtosis of a constant
/// series are defined as 0. Median of an even-length series is the
/// midpoint average.
struct M3s2k {
  double mean, median, max, std, skewness, kurtosis;
};
M3s2k m3s2k(const std::vector<double>& values);

}  // namespace gazeid
