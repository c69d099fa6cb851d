#include "gazeid/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gazeid {

namespace {

// Every distinct observed score, the midpoints between neighbors, and one
// candidate beyond each end.
std::vector<double> sweep_thresholds(const std::vector<double>& genuine,
                                     const std::vector<double>& impostor) {
  std::vector<double> all;
  all.reserve(genuine.size() + impostor.size());
  all.insert(all.end(), genuine.begin(), genuine.end());
  all.insert(all.end(), impostor.begin(), impostor.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<double> thresholds;
  thresholds.push_back(all.front() - 1.0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    thresholds.push_back(all[i]);
    if (i + 1 < all.size()) thresholds.push_back(0.5 * (all[i] + all[i + 1]));
  }
  thresholds.push_back(all.back() + 1.0);
  return thresholds;
}

double far_at(const std::vector<double>& impostor, double threshold) {
  std::size_t accepted = 0;
  for (double s : impostor)
    if (s >= threshold) ++accepted;
  return static_cast<double>(accepted) / static_cast<double>(impostor.size());
}

double frr_at(const std::vector<double>& genuine, double threshold) {
  std::size_t rejected = 0;
  for (double s : genuine)
    if (s < threshold) ++rejected;
  return static_cast<double>(rejected) / static_cast<double>(genuine.size());
}

}  // namespace

std::vector<DetPoint> det_curve(const std::vector<double>& genuine,
                                const std::vector<double>& impostor) {
  if (genuine.empty() || impostor.empty())
    throw std::invalid_argument("det_curve: empty score set");
  std::vector<DetPoint> points;
  for (double t : sweep_thresholds(genuine, impostor))
    points.push_back({t, far_at(impostor, t), frr_at(genuine, t)});
  return points;
}

EerResult compute_eer(const std::vector<double>& genuine,
                      const std::vector<double>& impostor) {
  const std::vector<DetPoint> det = det_curve(genuine, impostor);
  // FAR falls and FRR rises with the threshold, so FAR - FRR crosses zero
  // exactly once; interpolate linearly inside the crossing interval.
  for (std::size_t i = 0; i + 1 < det.size(); ++i) {
    const double g0 = det[i].far - det[i].frr;
    const double g1 = det[i + 1].far - det[i + 1].frr;
    if (g0 >= 0.0 && g1 <= 0.0) {
      if (g0 == g1) {
        return {100.0 * det[i].far, det[i].threshold};
      }
      const double t = g0 / (g0 - g1);
      const double eer = det[i].far + t * (det[i + 1].far - det[i].far);
      const double thr =
          det[i].threshold + t * (det[i + 1].threshold - det[i].threshold);
      return {100.0 * eer, thr};
    }
  }
  throw std::logic_error("compute_eer: no FAR/FRR crossing found");
}

bool ScoreMatrix::has_truth() const {
  if (truth.size() != probe_ids.size()) return false;
  return std::all_of(truth.begin(), truth.end(), [](int t) { return t >= 0; });
}

namespace {

// Pessimistic rank of the true row within its column: 1 + the number of
// competitors scoring greater than or equal.
int rank_of_truth(const Eigen::MatrixXd& d, int true_row, int col) {
  int above = 0;
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    if (static_cast<int>(r) == true_row) continue;
    if (d(r, col) >= d(true_row, col)) ++above;
  }
  return 1 + above;
}

}  // namespace

double rank_accuracy(const ScoreMatrix& scores, int n) {
  if (!scores.has_truth())
    throw std::invalid_argument("rank_accuracy: ground truth missing");
  if (scores.probe_ids.empty()) return 0.0;
  int correct = 0;
  for (std::size_t j = 0; j < scores.probe_ids.size(); ++j)
    if (rank_of_truth(scores.d, scores.truth[j], static_cast<int>(j)) <= n)
      ++correct;
  return 100.0 * correct / static_cast<double>(scores.probe_ids.size());
}

std::vector<double> cmc_curve(const ScoreMatrix& scores) {
  if (!scores.has_truth())
    throw std::invalid_argument("cmc_curve: ground truth missing");
  const int m = static_cast<int>(scores.d.rows());
  std::vector<int> hits(static_cast<std::size_t>(m) + 1, 0);
  for (std::size_t j = 0; j < scores.probe_ids.size(); ++j) {
    const int r = rank_of_truth(scores.d, scores.truth[j], static_cast<int>(j));
    if (r <= m) ++hits[static_cast<std::size_t>(r)];
  }
  std::vector<double> cmc(static_cast<std::size_t>(m));
  int cum = 0;
  for (int r = 1; r <= m; ++r) {
    cum += hits[static_cast<std::size_t>(r)];
    cmc[static_cast<std::size_t>(r - 1)] =
        100.0 * cum / static_cast<double>(scores.probe_ids.size());
  }
  return cmc;
}

std::vector<std::pair<int, int>> one_to_one_match(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols())
    throw std::invalid_argument("one_to_one_match: matrix must be square");
  const int n = static_cast<int>(d.rows());
  Eigen::MatrixXd work = d;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> matches;
  matches.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int best_r = -1, best_c = -1;
    double best = neg_inf;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (work(r, c) > best) {
          best = work(r, c);
          best_r = r;
          best_c = c;
        }
    matches.emplace_back(best_r, best_c);
    work.row(best_r).setConstant(neg_inf);
    work.col(best_c).setConstant(neg_inf);
  }
  return matches;
}

ScoreMatrix build_score_matrix(const FusionModel& model,
                               const std::vector<ProbeFeatures>& probes) {
  ScoreMatrix scores;
  scores.labeled_ids = model.subjects;
  const Eigen::Index m = static_cast<Eigen::Index>(model.subjects.size());
  scores.d.resize(m, static_cast<Eigen::Index>(probes.size()));
  for (std::size_t j = 0; j < probes.size(); ++j) {
    scores.probe_ids.push_back(probes[j].subject_id + ":" +
                               probes[j].session_id);
    scores.d.col(static_cast<Eigen::Index>(j)) =
        fused_score(model, probes[j].fixations, probes[j].saccades);
    auto it = std::find(model.subjects.begin(), model.subjects.end(),
                        probes[j].subject_id);
    scores.truth.push_back(
        it == model.subjects.end()
            ? -1
            : static_cast<int>(it - model.subjects.begin()));
  }

  if (scores.d.size() > 0) {
    const double lo = scores.d.minCoeff();
    const double hi = scores.d.maxCoeff();
    if (hi > lo)
      scores.d = (scores.d.array() - lo) / (hi - lo);
    else
      scores.d.setConstant(0.5);
  }
  return scores;
}

void split_scores(const ScoreMatrix& scores, std::vector<double>* genuine,
                  std::vector<double>* impostor) {
  if (!scores.has_truth())
    throw std::invalid_argument("split_scores: ground truth missing");
  genuine->clear();
  impostor->clear();
  for (std::size_t j = 0; j < scores.probe_ids.size(); ++j)
    for (Eigen::Index r = 0; r < scores.d.rows(); ++r) {
      const double s = scores.d(r, static_cast<Eigen::Index>(j));
      if (static_cast<int>(r) == scores.truth[j])
        genuine->push_back(s);
      else
        impostor->push_back(s);
    }
}

}  // namespace gazeid
