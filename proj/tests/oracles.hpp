#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. These deliberately avoid the library's code paths: the filter
// oracle fits each window from scratch, the classifier oracle is a direct
// transliteration of the published pseudocode, and the metric oracles
// enumerate exhaustively.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "gazeid/segmentation.hpp"

namespace oracles {

// Mirror padding with the edge sample repeated, same convention the
// library documents (numpy 'symmetric').
inline double sym_at(const std::vector<double>& s, long i) {
  const long n = static_cast<long>(s.size());
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return s[static_cast<std::size_t>(i)];
}

// Per-window least-squares polynomial fit evaluated at the window center,
// solved independently for every output sample.
inline std::vector<double> savgol_bruteforce(const std::vector<double>& series,
                                             int poly_order, int frame_len) {
  const long h = frame_len / 2;
  std::vector<double> out(series.size());
  for (long i = 0; i < static_cast<long>(series.size()); ++i) {
    Eigen::MatrixXd v(frame_len, poly_order + 1);
    Eigen::VectorXd y(frame_len);
    for (long r = 0; r < frame_len; ++r) {
      const double z = static_cast<double>(r - h);
      double p = 1.0;
      for (int c = 0; c <= poly_order; ++c) {
        v(r, c) = p;
        p *= z;
      }
      y(r) = sym_at(series, i + r - h);
    }
    const Eigen::VectorXd coeff = v.colPivHouseholderQr().solve(y);
    out[static_cast<std::size_t>(i)] = coeff(0);  // value at window center
  }
  return out;
}

// Direct transliteration of the published fixation/saccade classification
// pseudocode (velocity threshold VT, minimum fixation duration MDF).
inline std::vector<gazeid::SegmentKind> ivt_pseudocode(
    const std::vector<double>& velocity, const std::vector<double>& t_ms,
    double vt, double mdf_ms) {
  using gazeid::SegmentKind;
  const std::size_t n = velocity.size();
  std::vector<SegmentKind> res(n, SegmentKind::Saccade);
  SegmentKind last_state = SegmentKind::Saccade;
  SegmentKind current_state = SegmentKind::Saccade;
  std::size_t fixation_start = 0;
  for (std::size_t index = 0; index < n; ++index) {
    if (velocity[index] < vt) {
      current_state = SegmentKind::Fixation;
      if (last_state != current_state) fixation_start = index;
    } else {
      if (last_state == SegmentKind::Fixation) {
        const double duration = t_ms[index] - t_ms[fixation_start];
        if (duration < mdf_ms)
          for (std::size_t i = fixation_start; i <= index; ++i)
            res[i] = SegmentKind::Saccade;
      }
      current_state = SegmentKind::Saccade;
    }
    last_state = current_state;
    res[index] = current_state;
  }
  return res;
}

// Maximal label runs with the post-processing removal of short saccades,
// stated directly over runs rather than via the library's builder.
struct OracleSegment {
  gazeid::SegmentKind kind;
  std::size_t start, end;
  double duration_ms;
};

inline std::vector<OracleSegment> runs_with_saccade_removal(
    const std::vector<gazeid::SegmentKind>& labels,
    const std::vector<double>& t_ms, double min_saccade_ms) {
  std::vector<OracleSegment> out;
  const std::size_t n = labels.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && labels[j + 1] == labels[i]) ++j;
    const std::size_t bound = j + 1 < n ? j + 1 : j;
    const double duration = t_ms[bound] - t_ms[i];
    if (!(labels[i] == gazeid::SegmentKind::Saccade &&
          duration < min_saccade_ms))
      out.push_back({labels[i], i, j, duration});
    i = j + 1;
  }
  return out;
}

// Threshold enumeration for the equal error rate: evaluates FAR and FRR on
// every candidate and reports the |FAR-FRR| minimizer, interpolating only
// by averaging the two rates there.
inline double eer_bruteforce_percent(const std::vector<double>& genuine,
                                     const std::vector<double>& impostor) {
  std::vector<double> all = genuine;
  all.insert(all.end(), impostor.begin(), impostor.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<double> candidates;
  candidates.push_back(all.front() - 1.0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    candidates.push_back(all[i]);
    if (i + 1 < all.size())
      candidates.push_back(0.5 * (all[i] + all[i + 1]));
  }
  candidates.push_back(all.back() + 1.0);

  double best_gap = std::numeric_limits<double>::infinity();
  double best_eer = 50.0;
  for (double thr : candidates) {
    double far = 0.0, frr = 0.0;
    for (double s : impostor) far += s >= thr ? 1.0 : 0.0;
    for (double s : genuine) frr += s < thr ? 1.0 : 0.0;
    far /= static_cast<double>(impostor.size());
    frr /= static_cast<double>(genuine.size());
    const double gap = std::abs(far - frr);
    if (gap < best_gap) {
      best_gap = gap;
      best_eer = 50.0 * (far + frr);
    }
  }
  return best_eer;
}

// Greedy one-to-one matching simulated with explicit visited sets instead
// of matrix mutation.
inline std::vector<std::pair<int, int>> greedy_match_simulation(
    const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  std::vector<bool> row_used(static_cast<std::size_t>(n), false);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  std::vector<std::pair<int, int>> out;
  for (int step = 0; step < n; ++step) {
    int br = -1, bc = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      for (int c = 0; c < n; ++c) {
        if (col_used[static_cast<std::size_t>(c)]) continue;
        if (d(r, c) > best) {
          best = d(r, c);
          br = r;
          bc = c;
        }
      }
    }
    row_used[static_cast<std::size_t>(br)] = true;
    col_used[static_cast<std::size_t>(bc)] = true;
    out.emplace_back(br, bc);
  }
  return out;
}

}  // namespace oracles
