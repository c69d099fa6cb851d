#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gazeid/features.hpp"
#include "gazeid/types.hpp"

namespace gazeid {

struct KmeansResult {
  Eigen::MatrixXd centers;      // k x p
  std::vector<int> assignment;  // per point
  int k = 0;
  bool k_reduced = false;  // requested k exceeded the point count
  int iterations = 0;
};

/// Lloyd's iterations with squared Euclidean assignment. Initial centers
/// are k distinct points drawn with the seeded generator; empty clusters
/// are re-seeded from the point farthest from its current center. Stops on
/// unchanged assignments or after max_iter sweeps. k > n is reduced to n.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int max_iter,
                    std::uint64_t seed);

/// One subject's prototypes for one segment kind. beta = 1/(2 sigma^2)
/// with sigma the mean member distance to the cluster center; degenerate
/// clusters (sigma = 0, including singletons) take the median beta of the
/// subject's sound clusters, or 1.0 if there is none.
struct SubjectModel {
  std::string subject_id;
  Eigen::MatrixXd prototypes;  // k x p
  Eigen::VectorXd betas;       // k
};

SubjectModel fit_subject(const std::string& subject_id,
                         const Eigen::MatrixXd& points, int k,
                         std::uint64_t seed);

struct RbfNetwork {
  SegmentKind kind = SegmentKind::Fixation;
  std::vector<SubjectModel> subject_models;
  Eigen::MatrixXd weights;  // neuron_count x subject_count

  Eigen::Index neuron_count() const;
  Eigen::Index subject_count() const {
    return static_cast<Eigen::Index>(subject_models.size());
  }
  Eigen::Index input_dim() const;
};

/// Gaussian activations exp(-beta_j ||x - mu_j||^2) over every neuron of
/// every subject, in enrollment order. Dimension mismatches raise
/// std::invalid_argument.
Eigen::VectorXd activations(const RbfNetwork& net, const Eigen::VectorXd& x);
Eigen::MatrixXd activation_matrix(const RbfNetwork& net,
                                  const Eigen::MatrixXd& rows);

/// Least-squares output weights for A w = Y with Y the one-hot label
/// matrix. SVD-based pseudoinverse; singular values below 1e-10 x the
/// largest are treated as zero (minimum-norm solution on rank deficiency).
Eigen::MatrixXd solve_output_weights(const Eigen::MatrixXd& activations,
                                     const std::vector<int>& labels,
                                     int subject_count);

/// Raw pseudoinverse solve, exposed for reuse and testing: returns the
/// minimum-norm least-squares solution of A X = Y.
Eigen::MatrixXd pinv_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& y,
                           double rel_tol = 1e-10);

/// Everything needed to score probes: both networks, the fusion weight,
/// the normalization statistics and schemas the features were trained
/// under, and the enrolled subject order.
struct FusionModel {
  StimulusKind stimulus = StimulusKind::Ran;
  double lambda = 0.5;
  FeatureSchema fix_schema, sacc_schema;
  NormalizationStats fix_norm, sacc_norm;
  RbfNetwork fix_net, sacc_net;
  std::vector<std::string> subjects;

  void save(const std::filesystem::path& path) const;
  static FusionModel load(const std::filesystem::path& path);
};

/// Per-subject training features for one kind of segment: raw, unmasked
/// vectors as produced by the extractors.
struct SubjectTrainingData {
  std::string subject_id;
  std::vector<std::vector<double>> fixations;
  std::vector<std::vector<double>> saccades;
};

struct TrainConfig {
  StimulusKind stimulus = StimulusKind::Ran;
  int k_per_subject = 32;
  int kmeans_max_iter = 100;
  double lambda = 0.5;
  std::uint64_t seed = 1;
  // Optional mask overrides; empty means the published defaults.
  std::vector<char> fix_mask;
  std::vector<char> sacc_mask;
};

/// Two-phase training: per-subject K-means prototypes and widths, then one
/// least-squares solve per network over all subjects' segments. Subjects
/// are enrolled in the given order. A subject with no segments of either
/// kind raises std::invalid_argument naming the subject.
FusionModel train_fusion_model(const std::vector<SubjectTrainingData>& data,
                               const TrainConfig& cfg);

/// Combined per-subject score of one probe recording:
///   lambda * mean fixation network output + (1-lambda) * mean saccade
/// network output. A missing kind hands its weight to the present one;
/// both kinds empty raises std::invalid_argument. Inputs are raw vectors;
/// normalization and masking are applied here.
Eigen::VectorXd fused_score(const FusionModel& model,
                            const std::vector<std::vector<double>>& fixations,
                            const std::vector<std::vector<double>>& saccades);

/// Index of the maximal score; ties resolve to the lowest index.
int identify(const Eigen::VectorXd& score);

}  // namespace gazeid
