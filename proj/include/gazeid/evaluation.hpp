#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "gazeid/rbfn.hpp"

namespace gazeid {

struct EerResult {
  double eer_percent = 0.0;
  double threshold = 0.0;
};

/// Equal error rate with acceptance rule score >= threshold. The sweep
/// covers every distinct observed score plus the midpoints between
/// neighbors; the FAR = FRR crossing is linearly interpolated between
/// adjacent sweep points. Empty inputs raise std::invalid_argument.
EerResult compute_eer(const std::vector<double>& genuine,
                      const std::vector<double>& impostor);

struct DetPoint {
  double threshold, far, frr;
};

/// Full threshold sweep (same candidate set as compute_eer).
std::vector<DetPoint> det_curve(const std::vector<double>& genuine,
                                const std::vector<double>& impostor);

/// Similarity matrix: one row per enrolled subject, one column per probe.
/// truth[j] is the enrolled row of probe j's real identity, or -1 when
/// unknown.
struct ScoreMatrix {
  Eigen::MatrixXd d;
  std::vector<std::string> labeled_ids;
  std::vector<std::string> probe_ids;
  std::vector<int> truth;

  bool has_truth() const;
};

/// Fraction (percent) of probes whose true subject ranks within the top n.
/// Ties are pessimistic: an equal competitor counts as ranked above.
double rank_accuracy(const ScoreMatrix& scores, int n);

/// rank -> cumulative accuracy percent for ranks 1..m.
std::vector<double> cmc_curve(const ScoreMatrix& scores);

/// Greedy one-to-one assignment: repeatedly take the global maximum entry,
/// record the (row, column) pair and eliminate both. Deliberately greedy,
/// not an optimal assignment. Ties resolve to the lowest row, then lowest
/// column. Requires a square matrix.
std::vector<std::pair<int, int>> one_to_one_match(const Eigen::MatrixXd& d);

/// Probe-side features of one recording, raw as extracted.
struct ProbeFeatures {
  std::string subject_id;
  std::string session_id;
  std::vector<std::vector<double>> fixations;
  std::vector<std::vector<double>> saccades;
};

/// Scores every probe against the enrolled subjects and min-max normalizes
/// the matrix globally. Truth rows are resolved by matching probe subject
/// ids against the model's enrollment.
ScoreMatrix build_score_matrix(const FusionModel& model,
                               const std::vector<ProbeFeatures>& probes);

/// Genuine/impostor score split of a matrix with ground truth.
void split_scores(const ScoreMatrix& scores, std::vector<double>* genuine,
                  std::vector<double>* impostor);

}  // namespace gazeid
