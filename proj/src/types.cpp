#include "gazeid/types.hpp"

namespace gazeid {

std::string to_string(StimulusKind kind) {
  return kind == StimulusKind::Ran ? "RAN" : "TEX";
}

std::string to_string(SegmentKind kind) {
  return kind == SegmentKind::Fixation ? "fixation" : "saccade";
}

StimulusKind parse_stimulus(const std::string& text) {
  if (text == "RAN" || text == "ran") return StimulusKind::Ran;
  if (text == "TEX" || text == "tex") return StimulusKind::Tex;
  throw std::invalid_argument("unknown stimulus kind '" + text +
                              "' (expected RAN or TEX)");
}

void AcquisitionGeometry::validate() const {
  if (head_distance_mm <= 0 || screen_width_mm <= 0 || screen_height_mm <= 0)
    throw std::invalid_argument("geometry: physical dimensions must be positive");
  if (screen_width_px <= 0 || screen_height_px <= 0)
    throw std::invalid_argument("geometry: screen resolution must be positive");
  if (sample_rate_hz != 250.0 && sample_rate_hz != 1000.0)
    throw std::invalid_argument("geometry: sample_rate_hz must be 250 or 1000");
}

void GazeRecording::validate() const {
  geometry.validate();
  if (samples.empty())
    throw std::invalid_argument("recording '" + subject_id + "' has no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const GazeSample& s = samples[i];
    if (i > 0 && s.t_ms <= samples[i - 1].t_ms)
      throw std::invalid_argument(
          "recording '" + subject_id + "': timestamps not strictly increasing at sample " +
          std::to_string(i));
    if (std::abs(s.theta_x) >= kPi / 2 || std::abs(s.theta_y) >= kPi / 2)
      throw std::invalid_argument(
          "recording '" + subject_id + "': visual angle out of range at sample " +
          std::to_string(i));
  }
}

}  // namespace gazeid
