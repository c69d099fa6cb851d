#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gazeid/evaluation.hpp"
#include "gazeid/features.hpp"
#include "gazeid/gaze_io.hpp"
#include "gazeid/preprocess.hpp"
#include "gazeid/rbfn.hpp"
#include "gazeid/segmentation.hpp"

namespace gazeid {

/// The paper-published constants are the defaults throughout.
struct PipelineConfig {
  IvtConfig ivt;
  SmoothingConfig smoothing;
  int k_per_subject = 32;
  double lambda = 0.5;
  std::uint64_t seed = 12345;

  void validate() const;
};

/// key-value text round-trip (one `key value` pair per line).
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
std::string pipeline_config_text(const PipelineConfig& cfg);

/// Decimated recording, screen trace, smoothed series and profiles for one
/// recording: the shared front half of every subcommand.
struct PreprocessedRecording {
  GazeRecording recording;  // after decimation
  ScreenTrace trace;
  KinematicProfiles profiles;
};

PreprocessedRecording preprocess_recording(const GazeRecording& rec,
                                           const SmoothingConfig& smoothing);

std::vector<Segment> segment_recording(const PreprocessedRecording& pre,
                                       const IvtConfig& ivt);

/// Raw per-segment features of one recording.
struct RecordingFeatures {
  std::string subject_id;
  std::string session_id;
  std::vector<std::vector<double>> fixations;  // raw, full 12 columns
  std::vector<std::vector<double>> saccades;   // raw, full 46 columns
};

RecordingFeatures extract_recording_features(
    const PreprocessedRecording& pre, const std::vector<Segment>& segments,
    StimulusKind stimulus);

/// Convenience: parse + preprocess + segment + extract in one call.
RecordingFeatures extract_features_from_file(
    const std::filesystem::path& csv_path,
    const AcquisitionGeometry& geometry, StimulusKind stimulus,
    const PipelineConfig& cfg);

using FeatureDataset = std::vector<RecordingFeatures>;

/// Feature CSV pair written by `extract` and read back by `train`,
/// `select-features` and `evaluate`: features_fix.csv / features_sacc.csv
/// with header subject,session,kind,<names...>, plus schema.json carrying
/// names and masks.
void write_feature_dataset(const std::filesystem::path& dir,
                           const FeatureDataset& dataset,
                           StimulusKind stimulus);
FeatureDataset load_feature_dataset(const std::filesystem::path& dir);

/// Groups a dataset into per-subject training data, keeping only rows of
/// `session` (empty = all sessions). Subject order is sorted and stable.
std::vector<SubjectTrainingData> collect_training_data(
    const FeatureDataset& dataset, const std::string& session);

std::vector<ProbeFeatures> collect_probes(const FeatureDataset& dataset,
                                          const std::string& session);

/// Discovers `<subject>_s<session>.csv` recordings (each with a `.geom`
/// sidecar or a shared `geometry.txt`) under a directory and extracts
/// features for all of them.
FeatureDataset extract_directory(const std::filesystem::path& dir,
                                 StimulusKind stimulus,
                                 const PipelineConfig& cfg);

}  // namespace gazeid
