#pragma once

#include <cstdint>
#include <vector>

#include "gazeid/types.hpp"

namespace gazeid {

struct IvtConfig {
  double velocity_threshold = 50.0;  // deg/s
  double min_fixation_ms = 100.0;
  double min_saccade_ms = 12.0;

  void validate() const;  // all strictly positive
};

/// I-VT sample classification. A sample is a fixation candidate when its
/// angular velocity is below the threshold; when a fixation run ends, its
/// duration t[first_saccade_sample] - t[run_start] is checked against
/// min_fixation_ms and the whole run is relabeled saccade if too short.
/// The trailing run is never duration-checked (it has no closing
/// transition). Empty input raises std::invalid_argument.
std::vector<SegmentKind> ivt_classify(const std::vector<double>& ang_vel,
                                      const std::vector<double>& t_ms,
                                      const IvtConfig& cfg);

struct Segment {
  SegmentKind kind = SegmentKind::Fixation;
  std::size_t start_index = 0;
  std::size_t end_index = 0;  // inclusive
  double duration_ms = 0.0;

  std::size_t sample_count() const { return end_index - start_index + 1; }
};

/// Turns maximal label runs into segments and deletes saccade segments
/// shorter than min_saccade_ms (removed, not merged: neighbors stay apart).
/// Runs of invalid samples terminate segments on both sides and belong to
/// no segment. Durations follow the classifier's convention: the time span
/// up to the sample after the run (t[end+1] - t[start]), closing the final
/// run at the last timestamp.
std::vector<Segment> build_segments(const std::vector<SegmentKind>& labels,
                                    const std::vector<double>& t_ms,
                                    const IvtConfig& cfg);
std::vector<Segment> build_segments(const std::vector<SegmentKind>& labels,
                                    const std::vector<double>& t_ms,
                                    const std::vector<std::uint8_t>& valid,
                                    const IvtConfig& cfg);

}  // namespace gazeid
