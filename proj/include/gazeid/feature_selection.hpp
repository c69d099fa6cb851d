#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gazeid/pipeline.hpp"
#include "gazeid/rbfn.hpp"

namespace gazeid {

struct SelectionConfig {
  StimulusKind stimulus = StimulusKind::Ran;
  int iterations = 10;
  double subset_fraction = 0.5;
  std::uint64_t seed = 1;
  int k_per_subject = 32;
  double lambda = 0.5;
};

/// One evaluated step of the backward pass.
struct SelectionStep {
  int iteration = 0;
  int feature_index = 0;  // 0..11 fixation, 12..57 saccade
  double eer_excluded = 0.0;
  double eer_included = 0.0;
  bool kept = false;
};

struct SelectionResult {
  std::vector<char> fix_mask;   // final, majority vote across iterations
  std::vector<char> sacc_mask;
  std::vector<std::vector<char>> per_iteration_fix_masks;
  std::vector<std::vector<char>> per_iteration_sacc_masks;
  std::vector<SelectionStep> trace;
  std::vector<double> iteration_final_eer;
};

/// Train/eval split used inside one selection iteration.
struct SelectionSplit {
  std::vector<SubjectTrainingData> train;
  std::vector<ProbeFeatures> eval;
};

/// Trains the fusion model under the candidate masks on the train side,
/// scores the eval side and returns the EER percent. Deterministic given
/// `seed`. A mask emptying one kind falls back to the other via the
/// missing-kind rule of the fusion stage; both kinds empty is a
/// configuration error.
double eer_objective(const SelectionSplit& split,
                     const std::vector<char>& fix_mask,
                     const std::vector<char>& sacc_mask,
                     const SelectionConfig& cfg, std::uint64_t seed);

/// Wrapper-based backward selection: starts from all features included and,
/// feature by feature, keeps whichever of {excluded, included} gives the
/// lower EER (evaluated in that order, so an exact tie drops the feature).
/// One full pass per iteration; every iteration draws a fresh random subset
/// of subjects (fraction of the cohort) and splits it into sessions (first
/// session trains, second evaluates; single-session data splits segments
/// 50/50). The final mask is the per-feature majority vote across
/// iterations, ties resolving to include. Needs at least 2 subjects.
SelectionResult backward_select(const FeatureDataset& dataset,
                                const SelectionConfig& cfg);

}  // namespace gazeid
