#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gazeid/types.hpp"

namespace gazeid {

/// Reads a geometry sidecar: one `key value` (or `key = value`) pair per
/// line, keys head_distance_mm, screen_width_mm, screen_height_mm,
/// screen_width_px, screen_height_px, sample_rate_hz.
AcquisitionGeometry parse_geometry(const std::filesystem::path& path);

/// Parses a recording CSV with header
///   t_ms,theta_x_deg,theta_y_deg,stim_x_deg,stim_y_deg,valid
/// Angles are carried in degrees on disk and converted to radians here.
/// Subject and session ids are taken from the filename stem, expected as
/// `<subject>_s<session>`; anything else becomes subject=<stem>, session=1.
/// Malformed rows raise std::runtime_error with the 1-based line number;
/// non-monotonic timestamps raise std::invalid_argument.
GazeRecording parse_recording(const std::filesystem::path& path,
                              const AcquisitionGeometry& geometry,
                              StimulusKind stimulus = StimulusKind::Ran);

GazeRecording parse_recording_stream(std::istream& in,
                                     const std::string& name,
                                     const AcquisitionGeometry& geometry,
                                     StimulusKind stimulus = StimulusKind::Ran);

void write_recording_csv(const std::filesystem::path& path,
                         const GazeRecording& rec);
void write_geometry(const std::filesystem::path& path,
                    const AcquisitionGeometry& geometry);

/// Splits a filename stem `<subject>_s<session>` into its parts.
struct RecordingId {
  std::string subject;
  std::string session;
};
RecordingId recording_id_from_stem(const std::string& stem);

/// 1000 Hz -> 250 Hz: angle channels are low-pass filtered (linear-phase
/// FIR, 49 taps, cutoff 0.8x the new Nyquist, symmetric edge padding) and
/// every 4th sample is kept. An output sample is valid only if all samples
/// of its source group of 4 are valid. A 250 Hz recording passes through
/// unchanged; any other rate raises std::invalid_argument.
GazeRecording decimate_to_250(const GazeRecording& rec);

/// Projects visual angles onto the screen:
///   x = (d * w_px / w) * tan(theta_x) + w_px / 2, y analogous.
/// Raises std::domain_error naming the sample index if |theta| >= pi/2.
ScreenTrace to_screen(const GazeRecording& rec);

/// Inverse of to_screen for one coordinate (test and tooling helper).
double screen_to_theta_x(double x, const AcquisitionGeometry& g);
double screen_to_theta_y(double y, const AcquisitionGeometry& g);

}  // namespace gazeid
