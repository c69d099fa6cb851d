#pragma once

#include <cstdint>
#include <vector>

#include "gazeid/types.hpp"

namespace gazeid {

/// Controls of the synthetic oculomotor style of one simulated subject.
/// Deliberately exaggerated relative to real inter-subject variation: the
/// generator exists to exercise the pipeline, not to model physiology.
struct SubjectProfile {
  double peak_velocity_gain = 400.0;    // deg/s, saccade peak velocity
  double fixation_tremor_std_deg = 0.1; // fixation jitter amplitude
  double saccade_duration_bias_ms = 0.0;
  double skew_tendency = 0.0;           // asymmetry of the velocity profile
  std::uint64_t seed = 1;

  void validate() const;  // positive gain, non-negative tremor
};

/// Ground-truth saccade window emitted by the generator.
struct SynthEvent {
  double saccade_start_ms = 0.0;
  double saccade_end_ms = 0.0;
  double target_x = 0.0;  // radians
  double target_y = 0.0;
};

AcquisitionGeometry default_synth_geometry(double rate_hz = 250.0);

/// Synthesizes one recording. RAN mode jumps the stimulus to a uniform
/// random on-screen target every second and the gaze follows with a
/// latency, a minimum-jerk saccade and tremor around the target. TEX mode
/// walks fixations left to right, line by line, with profile-dependent
/// saccade lengths and return sweeps. Deterministic given the profile
/// seed. Duration below 5 s raises std::invalid_argument.
GazeRecording generate_recording(const SubjectProfile& profile,
                                 StimulusKind stimulus, double duration_s,
                                 double rate_hz = 250.0,
                                 std::vector<SynthEvent>* schedule = nullptr);

/// Well-separated cohort: profiles spread across the parameter ranges so a
/// trained model can tell every subject apart.
std::vector<SubjectProfile> cohort_profiles(int n_subjects,
                                            std::uint64_t seed);

/// Hard-mode cohort: n_archetypes clearly distinct base profiles, subjects
/// within an archetype nearly identical. archetype_of[i] = i % n_archetypes.
std::vector<SubjectProfile> archetype_profiles(int n_subjects,
                                               int n_archetypes,
                                               std::uint64_t seed);

}  // namespace gazeid
