#include "gazeid/feature_selection.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <map>
#include <set>

#include "gazeid/evaluation.hpp"
#include "gazeid/rng.hpp"

namespace gazeid {

namespace {

constexpr int kTotalFeatures = kFixationFeatureCount + kSaccadeFeatureCount;

std::vector<char> fix_part(const std::vector<char>& joint) {
  return std::vector<char>(joint.begin(),
                           joint.begin() + kFixationFeatureCount);
}

std::vector<char> sacc_part(const std::vector<char>& joint) {
  return std::vector<char>(joint.begin() + kFixationFeatureCount, joint.end());
}

std::string mask_key(const std::vector<char>& mask) {
  std::string key(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i) key[i] = mask[i] ? '1' : '0';
  return key;
}

// Draws the per-iteration subject subset and assembles its train/eval
// split. Subjects with two or more sessions train on the first and
// evaluate on the second; single-session subjects get a random 50/50
// segment split. Subjects lacking a segment kind on the train side are
// dropped with a warning (the kind's network could not enroll them).
SelectionSplit make_split(const FeatureDataset& dataset,
                          const SelectionConfig& cfg, std::mt19937_64& gen) {
  std::map<std::string, std::map<std::string, RecordingFeatures>> by_subject;
  for (const RecordingFeatures& rec : dataset) {
    RecordingFeatures& merged = by_subject[rec.subject_id][rec.session_id];
    merged.subject_id = rec.subject_id;
    merged.session_id = rec.session_id;
    merged.fixations.insert(merged.fixations.end(), rec.fixations.begin(),
                            rec.fixations.end());
    merged.saccades.insert(merged.saccades.end(), rec.saccades.begin(),
                           rec.saccades.end());
  }
  std::vector<std::string> ids;
  for (const auto& [id, sessions] : by_subject) ids.push_back(id);
  if (ids.size() < 2)
    throw std::invalid_argument("backward_select: need at least 2 subjects");

  std::size_t take = static_cast<std::size_t>(
      std::max(2.0, std::ceil(cfg.subset_fraction *
                              static_cast<double>(ids.size()))));
  take = std::min(take, ids.size());
  std::vector<std::size_t> picks = rng::sample_indices(gen, ids.size(), take);
  std::sort(picks.begin(), picks.end());

  SelectionSplit split;
  for (std::size_t p : picks) {
    const std::string& id = ids[p];
    const auto& sessions = by_subject[id];

    SubjectTrainingData train;
    train.subject_id = id;
    ProbeFeatures eval;
    eval.subject_id = id;

    if (sessions.size() >= 2) {
      auto it = sessions.begin();
      train.fixations = it->second.fixations;
      train.saccades = it->second.saccades;
      ++it;
      eval.session_id = it->first;
      eval.fixations = it->second.fixations;
      eval.saccades = it->second.saccades;
    } else {
      const RecordingFeatures& only = sessions.begin()->second;
      eval.session_id = only.session_id;
      auto deal = [&](const std::vector<std::vector<double>>& rows,
                      std::vector<std::vector<double>>* to_train,
                      std::vector<std::vector<double>>* to_eval) {
        std::vector<std::size_t> order =
            rng::sample_indices(gen, rows.size(), rows.size());
        const std::size_t half = (rows.size() + 1) / 2;
        for (std::size_t i = 0; i < order.size(); ++i)
          (i < half ? to_train : to_eval)->push_back(rows[order[i]]);
      };
      deal(only.fixations, &train.fixations, &eval.fixations);
      deal(only.saccades, &train.saccades, &eval.saccades);
    }

    if (train.fixations.empty() || train.saccades.empty()) {
      std::cerr << "warning: subject " << id
                << " lacks training segments of one kind; dropped from the "
                   "selection subset\n";
      continue;
    }
    if (eval.fixations.empty() && eval.saccades.empty()) {
      std::cerr << "warning: subject " << id
                << " has no evaluation segments; dropped\n";
      continue;
    }
    split.train.push_back(std::move(train));
    split.eval.push_back(std::move(eval));
  }
  if (split.train.size() < 2)
    throw std::invalid_argument(
        "backward_select: fewer than 2 usable subjects in the subset");
  return split;
}

}  // namespace

double eer_objective(const SelectionSplit& split,
                     const std::vector<char>& fix_mask,
                     const std::vector<char>& sacc_mask,
                     const SelectionConfig& cfg, std::uint64_t seed) {
  TrainConfig tc;
  tc.stimulus = cfg.stimulus;
  tc.k_per_subject = cfg.k_per_subject;
  tc.lambda = cfg.lambda;
  tc.seed = seed;
  tc.fix_mask = fix_mask;
  tc.sacc_mask = sacc_mask;
  const FusionModel model = train_fusion_model(split.train, tc);
  const ScoreMatrix scores = build_score_matrix(model, split.eval);
  std::vector<double> genuine, impostor;
  split_scores(scores, &genuine, &impostor);
  return compute_eer(genuine, impostor).eer_percent;
}

SelectionResult backward_select(const FeatureDataset& dataset,
                                const SelectionConfig& cfg) {
  if (cfg.iterations < 1)
    throw std::invalid_argument("backward_select: iterations must be >= 1");
  if (cfg.subset_fraction <= 0.0 || cfg.subset_fraction > 1.0)
    throw std::invalid_argument(
        "backward_select: subset_fraction must be in (0,1]");

  SelectionResult result;
  std::vector<int> include_votes(kTotalFeatures, 0);

  for (int it = 0; it < cfg.iterations; ++it) {
    std::mt19937_64 gen(
        rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(it), 0x5E1));
    const SelectionSplit split = make_split(dataset, cfg, gen);
    // One model seed per iteration: every candidate mask is scored under
    // identical clustering randomness, so a flip is accepted only on a
    // genuine EER change.
    const std::uint64_t model_seed =
        rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(it), 0x0B1);

    std::map<std::string, double> cache;
    auto objective = [&](const std::vector<char>& joint) {
      const std::string key = mask_key(joint);
      auto hit = cache.find(key);
      if (hit != cache.end()) return hit->second;
      double eer;
      try {
        eer = eer_objective(split, fix_part(joint), sacc_part(joint), cfg,
                            model_seed);
      } catch (const std::invalid_argument&) {
        eer = std::numeric_limits<double>::infinity();  // infeasible mask
      }
      cache.emplace(key, eer);
      return eer;
    };

    std::vector<char> mask(kTotalFeatures, 1);
    double last_eer = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kTotalFeatures; ++i) {
      std::vector<char> candidate = mask;
      double best = std::numeric_limits<double>::infinity();
      SelectionStep step;
      step.iteration = it;
      step.feature_index = i;
      for (int j = 0; j <= 1; ++j) {
        candidate[static_cast<std::size_t>(i)] = static_cast<char>(j);
        const double eer = objective(candidate);
        if (j == 0)
          step.eer_excluded = eer;
        else
          step.eer_included = eer;
        if (eer < best) {
          best = eer;
          mask[static_cast<std::size_t>(i)] = static_cast<char>(j);
        }
      }
      step.kept = mask[static_cast<std::size_t>(i)] == 1;
      last_eer = best;
      result.trace.push_back(step);
    }

    result.per_iteration_fix_masks.push_back(fix_part(mask));
    result.per_iteration_sacc_masks.push_back(sacc_part(mask));
    result.iteration_final_eer.push_back(last_eer);
    for (int i = 0; i < kTotalFeatures; ++i)
      if (mask[static_cast<std::size_t>(i)]) ++include_votes[static_cast<std::size_t>(i)];
  }

  // Majority vote across iterations, ties resolving to include.
  std::vector<char> joint(kTotalFeatures, 0);
  for (int i = 0; i < kTotalFeatures; ++i)
    joint[static_cast<std::size_t>(i)] =
        2 * include_votes[static_cast<std::size_t>(i)] >= cfg.iterations ? 1
                                                                         : 0;
  if (std::count(joint.begin(), joint.end(), 1) == 0) {
    const auto best = std::max_element(include_votes.begin(),
                                       include_votes.end());
    joint[static_cast<std::size_t>(best - include_votes.begin())] = 1;
    std::cerr << "warning: majority vote excluded everything; keeping the "
                 "most voted feature\n";
  }
  result.fix_mask = fix_part(joint);
  result.sacc_mask = sacc_part(joint);
  return result;
}

}  // namespace gazeid
