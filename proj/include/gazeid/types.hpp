#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gazeid {

enum class StimulusKind { Ran, Tex };
enum class SegmentKind { Fixation, Saccade };

std::string to_string(StimulusKind kind);
std::string to_string(SegmentKind kind);
StimulusKind parse_stimulus(const std::string& text);

/// Physical setup of the recording rig. Lengths in mm, resolution in px.
struct AcquisitionGeometry {
  double head_distance_mm = 0.0;
  double screen_width_mm = 0.0;
  double screen_height_mm = 0.0;
  int screen_width_px = 0;
  int screen_height_px = 0;
  double sample_rate_hz = 0.0;

  /// Throws std::invalid_argument on non-positive fields or an
  /// unsupported sample rate (ingestion accepts 250 or 1000 Hz).
  void validate() const;
};

/// One gaze sample. Angles are visual angles in radians; |theta| must stay
/// below pi/2 so the screen projection is finite.
struct GazeSample {
  double t_ms = 0.0;
  double theta_x = 0.0;
  double theta_y = 0.0;
  double stim_x = 0.0;
  double stim_y = 0.0;
  bool valid = true;
};

struct GazeRecording {
  std::string subject_id;
  std::string session_id;
  StimulusKind stimulus = StimulusKind::Ran;
  AcquisitionGeometry geometry;
  std::vector<GazeSample> samples;

  double dt_ms() const { return 1000.0 / geometry.sample_rate_hz; }
  double dt_s() const { return 1.0 / geometry.sample_rate_hz; }

  /// Throws std::invalid_argument if empty, timestamps are not strictly
  /// increasing, or any sample violates the |theta| < pi/2 invariant.
  void validate() const;
};

/// Gaze positions projected onto the screen, parallel arrays.
struct ScreenTrace {
  std::vector<double> t_ms;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::uint8_t> valid;

  std::size_t size() const { return t_ms.size(); }
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRadPerDeg = kPi / 180.0;

}  // namespace gazeid
