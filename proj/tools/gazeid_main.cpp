#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "gazeid/feature_selection.hpp"
#include "gazeid/pipeline.hpp"
#include "gazeid/rng.hpp"
#include "gazeid/synth.hpp"
#include "gazeid/util.hpp"

namespace fs = std::filesystem;
using namespace gazeid;

namespace {

struct CommonOpts {
  std::string config_file;
  PipelineConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file,
                    "key-value config file (flags override it)");
    cmd->add_option("--vt", cfg.ivt.velocity_threshold,
                    "I-VT velocity threshold, deg/s");
    cmd->add_option("--min-fixation", cfg.ivt.min_fixation_ms,
                    "minimum fixation duration, ms");
    cmd->add_option("--min-saccade", cfg.ivt.min_saccade_ms,
                    "minimum saccade duration, ms");
    cmd->add_option("--sg-order", cfg.smoothing.poly_order,
                    "Savitzky-Golay polynomial order");
    cmd->add_option("--sg-frame", cfg.smoothing.frame_len,
                    "Savitzky-Golay frame length (odd)");
    cmd->add_option("--k", cfg.k_per_subject, "clusters per subject");
    cmd->add_option("--lambda", cfg.lambda, "fixation fusion weight");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
  }

  // File first, then explicit flags on top.
  void resolve(CLI::App* cmd) {
    if (config_file.empty()) {
      cfg.validate();
      return;
    }
    PipelineConfig from_file = load_pipeline_config(config_file);
    auto keep = [&](const char* flag) { return cmd->count(flag) > 0; };
    if (!keep("--vt")) cfg.ivt.velocity_threshold = from_file.ivt.velocity_threshold;
    if (!keep("--min-fixation")) cfg.ivt.min_fixation_ms = from_file.ivt.min_fixation_ms;
    if (!keep("--min-saccade")) cfg.ivt.min_saccade_ms = from_file.ivt.min_saccade_ms;
    if (!keep("--sg-order")) cfg.smoothing.poly_order = from_file.smoothing.poly_order;
    if (!keep("--sg-frame")) cfg.smoothing.frame_len = from_file.smoothing.frame_len;
    if (!keep("--k")) cfg.k_per_subject = from_file.k_per_subject;
    if (!keep("--lambda")) cfg.lambda = from_file.lambda;
    if (!keep("--seed")) cfg.seed = from_file.seed;
    cfg.validate();
  }
};

void echo_config(const PipelineConfig& cfg, const fs::path& out_dir) {
  const std::string text = pipeline_config_text(cfg);
  std::cout << "resolved config:\n" << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    util::write_file_atomic(out_dir / "config_used.txt", text);
  }
}

AcquisitionGeometry geometry_for(const fs::path& csv,
                                 const std::string& explicit_path) {
  if (!explicit_path.empty()) return parse_geometry(explicit_path);
  fs::path sidecar = csv;
  sidecar.replace_extension(".geom");
  if (fs::exists(sidecar)) return parse_geometry(sidecar);
  fs::path shared = csv.parent_path() / "geometry.txt";
  if (fs::exists(shared)) return parse_geometry(shared);
  throw std::runtime_error("no geometry found for " + csv.string() +
                           " (pass --geometry or add a .geom sidecar)");
}

bool is_feature_dir(const fs::path& dir) {
  return fs::exists(dir / "features_fix.csv");
}

FeatureDataset load_probe_features(const fs::path& dir, StimulusKind stimulus,
                                   const PipelineConfig& cfg) {
  if (is_feature_dir(dir)) return load_feature_dataset(dir);
  return extract_directory(dir, stimulus, cfg);
}

void read_mask_file(const fs::path& path, std::vector<char>* fix_mask,
                    std::vector<char>* sacc_mask) {
  nlohmann::json j = nlohmann::json::parse(util::read_file(path));
  *fix_mask = j.at("fixation").at("mask").get<std::vector<char>>();
  *sacc_mask = j.at("saccade").at("mask").get<std::vector<char>>();
}

void write_mask_file(const fs::path& path, StimulusKind stimulus,
                     const std::vector<char>& fix_mask,
                     const std::vector<char>& sacc_mask) {
  nlohmann::json j;
  j["stimulus"] = to_string(stimulus);
  j["fixation"]["names"] = fixation_feature_names();
  j["fixation"]["mask"] = fix_mask;
  j["saccade"]["names"] = saccade_feature_names();
  j["saccade"]["mask"] = sacc_mask;
  util::write_file_atomic(path, j.dump(2) + "\n");
}

std::string subject_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "sub%03d", index + 1);
  return buf;
}

// ---------------------------------------------------------------------- synth

int run_synth(int subjects, int sessions, const std::string& stimulus_name,
              double duration_s, double rate_hz, int archetypes,
              const CommonOpts& common, const fs::path& out_dir) {
  const StimulusKind stimulus = parse_stimulus(stimulus_name);
  echo_config(common.cfg, out_dir);
  const std::vector<SubjectProfile> profiles =
      archetypes > 0 ? archetype_profiles(subjects, archetypes, common.cfg.seed)
                     : cohort_profiles(subjects, common.cfg.seed);
  for (int s = 0; s < subjects; ++s) {
    for (int session = 1; session <= sessions; ++session) {
      SubjectProfile p = profiles[static_cast<std::size_t>(s)];
      p.seed = rng::derive_seed(p.seed, static_cast<std::uint64_t>(session),
                                0x5E55);
      GazeRecording rec = generate_recording(p, stimulus, duration_s, rate_hz);
      rec.subject_id = subject_name(s);
      rec.session_id = std::to_string(session);
      const std::string stem =
          rec.subject_id + "_s" + rec.session_id;
      write_recording_csv(out_dir / (stem + ".csv"), rec);
      write_geometry(out_dir / (stem + ".geom"), rec.geometry);
    }
  }
  std::cout << "wrote " << subjects * sessions << " recordings to "
            << out_dir.string() << "\n";
  return 0;
}

// -------------------------------------------------------------------- segment

int run_segment(const fs::path& input, const std::string& geometry_path,
                const std::string& stimulus_name, const CommonOpts& common,
                const fs::path& out_dir) {
  echo_config(common.cfg, out_dir);
  const AcquisitionGeometry geometry = geometry_for(input, geometry_path);
  const GazeRecording rec =
      parse_recording(input, geometry, parse_stimulus(stimulus_name));
  const PreprocessedRecording pre =
      preprocess_recording(rec, common.cfg.smoothing);
  const std::vector<Segment> segments = segment_recording(pre, common.cfg.ivt);

  std::ostringstream csv;
  csv << "kind,start_index,end_index,duration_ms\n";
  for (const Segment& seg : segments)
    csv << to_string(seg.kind) << ',' << seg.start_index << ','
        << seg.end_index << ',' << util::format_double(seg.duration_ms)
        << '\n';
  util::write_file_atomic(out_dir / "segments.csv", csv.str());
  std::cout << "segments: " << segments.size() << " (written to "
            << (out_dir / "segments.csv").string() << ")\n";
  return 0;
}

// -------------------------------------------------------------------- extract

int run_extract(const fs::path& in_dir, const std::string& stimulus_name,
                const CommonOpts& common, const fs::path& out_dir) {
  const StimulusKind stimulus = parse_stimulus(stimulus_name);
  echo_config(common.cfg, out_dir);
  const FeatureDataset dataset =
      extract_directory(in_dir, stimulus, common.cfg);
  write_feature_dataset(out_dir, dataset, stimulus);
  std::size_t fix = 0, sacc = 0;
  for (const RecordingFeatures& r : dataset) {
    fix += r.fixations.size();
    sacc += r.saccades.size();
  }
  std::cout << "extracted " << fix << " fixations and " << sacc
            << " saccades from " << dataset.size() << " recordings\n";
  return 0;
}

// ------------------------------------------------------------ select-features

int run_select(const fs::path& features_dir, const std::string& stimulus_name,
               int iterations, double fraction, const CommonOpts& common,
               const fs::path& out_dir) {
  echo_config(common.cfg, out_dir);
  SelectionConfig cfg;
  cfg.stimulus = parse_stimulus(stimulus_name);
  cfg.iterations = iterations;
  cfg.subset_fraction = fraction;
  cfg.seed = common.cfg.seed;
  cfg.k_per_subject = common.cfg.k_per_subject;
  cfg.lambda = common.cfg.lambda;

  const FeatureDataset dataset = load_feature_dataset(features_dir);
  const SelectionResult result = backward_select(dataset, cfg);

  write_mask_file(out_dir / "selected_masks.json", cfg.stimulus,
                  result.fix_mask, result.sacc_mask);
  std::ostringstream trace;
  trace << "iteration,feature_index,feature_name,eer_excluded,eer_included,kept\n";
  for (const SelectionStep& s : result.trace) {
    const bool is_fix = s.feature_index < kFixationFeatureCount;
    const std::string& name =
        is_fix ? fixation_feature_names()[static_cast<std::size_t>(s.feature_index)]
               : saccade_feature_names()[static_cast<std::size_t>(
                     s.feature_index - kFixationFeatureCount)];
    trace << s.iteration << ',' << s.feature_index << ',' << name << ','
          << util::format_double(s.eer_excluded) << ','
          << util::format_double(s.eer_included) << ',' << (s.kept ? 1 : 0)
          << '\n';
  }
  util::write_file_atomic(out_dir / "selection_trace.csv", trace.str());

  std::cout << "selected " << std::count(result.fix_mask.begin(),
                                         result.fix_mask.end(), 1)
            << "/12 fixation and "
            << std::count(result.sacc_mask.begin(), result.sacc_mask.end(), 1)
            << "/46 saccade features; masks in "
            << (out_dir / "selected_masks.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- train

int run_train(const fs::path& features_dir, const std::string& stimulus_name,
              const std::string& session, double subset_fraction,
              const std::string& mask_file, const CommonOpts& common,
              const fs::path& model_path, const fs::path& out_dir) {
  echo_config(common.cfg, out_dir);
  const FeatureDataset dataset = load_feature_dataset(features_dir);
  std::vector<SubjectTrainingData> data =
      collect_training_data(dataset, session);
  if (data.empty())
    throw std::runtime_error("train: no training rows for session '" +
                             session + "'");

  if (subset_fraction < 1.0) {
    std::mt19937_64 gen(rng::derive_seed(common.cfg.seed, 0x50B5E7, 0));
    std::size_t take = static_cast<std::size_t>(std::max(
        1.0, std::round(subset_fraction * static_cast<double>(data.size()))));
    std::vector<std::size_t> picks =
        rng::sample_indices(gen, data.size(), take);
    std::sort(picks.begin(), picks.end());
    std::vector<SubjectTrainingData> subset;
    for (std::size_t p : picks) subset.push_back(std::move(data[p]));
    data = std::move(subset);
    std::cout << "training on a random subset of " << data.size()
              << " subjects\n";
  }

  TrainConfig tc;
  tc.stimulus = parse_stimulus(stimulus_name);
  tc.k_per_subject = common.cfg.k_per_subject;
  tc.lambda = common.cfg.lambda;
  tc.seed = common.cfg.seed;
  if (!mask_file.empty()) read_mask_file(mask_file, &tc.fix_mask, &tc.sacc_mask);

  const FusionModel model = train_fusion_model(data, tc);
  model.save(model_path);
  std::cout << "trained " << model.subjects.size() << " subjects ("
            << model.fix_net.neuron_count() << " fixation neurons, "
            << model.sacc_net.neuron_count() << " saccade neurons) -> "
            << model_path.string() << "\n";
  return 0;
}

// ------------------------------------------------------------------- identify

int run_identify(const fs::path& model_path, const fs::path& probe_dir,
                 const std::string& session, const std::string& subject,
                 int top, const CommonOpts& common) {
  const FusionModel model = FusionModel::load(model_path);
  const FeatureDataset dataset =
      load_probe_features(probe_dir, model.stimulus, common.cfg);
  std::vector<ProbeFeatures> probes = collect_probes(dataset, session);
  if (!subject.empty()) {
    std::erase_if(probes, [&](const ProbeFeatures& p) {
      return p.subject_id != subject;
    });
  }
  if (probes.empty()) throw std::runtime_error("identify: no probes matched");

  for (const ProbeFeatures& probe : probes) {
    const Eigen::VectorXd score =
        fused_score(model, probe.fixations, probe.saccades);
    std::vector<int> order(static_cast<std::size_t>(score.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score(a) > score(b); });
    std::cout << "probe " << probe.subject_id << ":" << probe.session_id
              << "\n";
    const int show = std::min<int>(top, static_cast<int>(order.size()));
    for (int r = 0; r < show; ++r)
      std::cout << "  rank " << r + 1 << "  " << model.subjects[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])]
                << "  " << util::format_double(score(order[static_cast<std::size_t>(r)]))
                << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- evaluate

int run_evaluate(const fs::path& model_path, const fs::path& probes_dir,
                 const std::string& session, bool one_to_one,
                 const CommonOpts& common, const fs::path& out_dir) {
  echo_config(common.cfg, out_dir);
  const FusionModel model = FusionModel::load(model_path);
  const FeatureDataset dataset =
      load_probe_features(probes_dir, model.stimulus, common.cfg);
  const std::vector<ProbeFeatures> probes = collect_probes(dataset, session);
  if (probes.empty()) throw std::runtime_error("evaluate: no probes found");

  const ScoreMatrix scores = build_score_matrix(model, probes);

  std::ostringstream scores_csv;
  scores_csv << "subject";
  for (const std::string& p : scores.probe_ids) scores_csv << ',' << p;
  scores_csv << '\n';
  for (Eigen::Index r = 0; r < scores.d.rows(); ++r) {
    scores_csv << scores.labeled_ids[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < scores.d.cols(); ++c)
      scores_csv << ',' << util::format_double(scores.d(r, c));
    scores_csv << '\n';
  }
  util::write_file_atomic(out_dir / "scores.csv", scores_csv.str());

  std::ostringstream report;
  report << "probes " << probes.size() << "\nsubjects "
         << model.subjects.size() << "\n";

  if (scores.has_truth()) {
    const double r1 = rank_accuracy(scores, 1);
    std::vector<double> genuine, impostor;
    split_scores(scores, &genuine, &impostor);
    const EerResult eer = compute_eer(genuine, impostor);

    std::ostringstream det;
    det << "threshold,far,frr\n";
    for (const DetPoint& p : det_curve(genuine, impostor))
      det << util::format_double(p.threshold) << ','
          << util::format_double(p.far) << ',' << util::format_double(p.frr)
          << '\n';
    util::write_file_atomic(out_dir / "det.csv", det.str());

    std::ostringstream cmc;
    cmc << "rank,accuracy_percent\n";
    const std::vector<double> curve = cmc_curve(scores);
    for (std::size_t r = 0; r < curve.size(); ++r)
      cmc << r + 1 << ',' << util::format_double(curve[r]) << '\n';
    util::write_file_atomic(out_dir / "cmc.csv", cmc.str());

    char line[128];
    std::snprintf(line, sizeof(line), "R1 %.2f%% EER %.2f%%", r1,
                  eer.eer_percent);
    std::cout << line << "\n";
    report << "rank1_percent " << util::format_double(r1) << "\n"
           << "eer_percent " << util::format_double(eer.eer_percent) << "\n"
           << "eer_threshold " << util::format_double(eer.threshold) << "\n";
  } else {
    std::cout << "ground truth unavailable for some probes; scores only\n";
    report << "rank1_percent n/a\neer_percent n/a\n";
  }

  if (one_to_one) {
    if (scores.d.rows() != scores.d.cols())
      throw std::runtime_error(
          "evaluate --one-to-one: need exactly one probe per enrolled "
          "subject (square score matrix)");
    std::ostringstream matches;
    matches << "labeled,probe,score\n";
    int correct = 0;
    for (const auto& [r, c] : one_to_one_match(scores.d)) {
      matches << scores.labeled_ids[static_cast<std::size_t>(r)] << ','
              << scores.probe_ids[static_cast<std::size_t>(c)] << ','
              << util::format_double(scores.d(r, c)) << '\n';
      if (scores.has_truth() && scores.truth[static_cast<std::size_t>(c)] == r)
        ++correct;
    }
    util::write_file_atomic(out_dir / "matches.csv", matches.str());
    if (scores.has_truth()) {
      const double r1_matched =
          100.0 * correct / static_cast<double>(probes.size());
      char line[64];
      std::snprintf(line, sizeof(line), "one-to-one R1 %.2f%%", r1_matched);
      std::cout << line << "\n";
      report << "one_to_one_rank1_percent "
             << util::format_double(r1_matched) << "\n";
    }
  }

  util::write_file_atomic(out_dir / "report.txt", report.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gazeid: score-level-fusion eye movement biometrics"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
  int subjects = 10, sessions = 2, archetypes = 0;
  double duration_s = 100.0, rate_hz = 250.0;
  std::string stimulus = "RAN";
  std::string out_dir;
  CommonOpts synth_opts;
  synth->add_option("--subjects", subjects, "number of subjects")->required();
  synth->add_option("--sessions", sessions, "sessions per subject");
  synth->add_option("--stimulus", stimulus, "RAN or TEX");
  synth->add_option("--duration", duration_s, "seconds per recording");
  synth->add_option("--rate", rate_hz, "sample rate (250 or 1000)");
  synth->add_option("--archetypes", archetypes,
                    "0 = well separated; N = N profile archetypes");
  synth->add_option("--out", out_dir, "output directory")->required();
  synth_opts.attach(synth);

  // segment
  auto* segment = app.add_subcommand("segment", "classify one recording");
  std::string seg_input, seg_geometry, seg_stimulus = "RAN", seg_out;
  CommonOpts seg_opts;
  segment->add_option("--input", seg_input, "recording CSV")->required();
  segment->add_option("--geometry", seg_geometry, "geometry sidecar");
  segment->add_option("--stimulus", seg_stimulus, "RAN or TEX");
  segment->add_option("--out", seg_out, "output directory")->required();
  seg_opts.attach(segment);

  // extract
  auto* extract = app.add_subcommand("extract", "extract per-segment features");
  std::string ext_in, ext_stimulus = "RAN", ext_out;
  CommonOpts ext_opts;
  extract->add_option("--in-dir", ext_in, "directory of recordings")->required();
  extract->add_option("--stimulus", ext_stimulus, "RAN or TEX");
  extract->add_option("--out", ext_out, "output directory")->required();
  ext_opts.attach(extract);

  // select-features
  auto* select = app.add_subcommand("select-features",
                                    "wrapper-based backward selection");
  std::string sel_features, sel_stimulus = "RAN", sel_out;
  int sel_iterations = 10;
  double sel_fraction = 0.5;
  CommonOpts sel_opts;
  select->add_option("--features", sel_features, "extract output directory")
      ->required();
  select->add_option("--stimulus", sel_stimulus, "RAN or TEX");
  select->add_option("--iterations", sel_iterations, "selection iterations");
  select->add_option("--fraction", sel_fraction, "subject subset fraction");
  select->add_option("--out", sel_out, "output directory")->required();
  sel_opts.attach(select);

  // train
  auto* train = app.add_subcommand("train", "train the fusion model");
  std::string tr_features, tr_stimulus = "RAN", tr_session = "1";
  std::string tr_mask_file, tr_model, tr_out;
  double tr_fraction = 1.0;
  CommonOpts tr_opts;
  train->add_option("--features", tr_features, "extract output directory")
      ->required();
  train->add_option("--stimulus", tr_stimulus, "RAN or TEX");
  train->add_option("--session", tr_session,
                    "training session id (empty = all)");
  train->add_option("--subset-fraction", tr_fraction,
                    "random subject fraction (development protocol)");
  train->add_option("--mask-file", tr_mask_file,
                    "mask sidecar overriding the published defaults");
  train->add_option("--out", tr_model, "model output file")->required();
  train->add_option("--out-dir", tr_out, "directory for the config echo");
  tr_opts.attach(train);

  // identify
  auto* identify_cmd = app.add_subcommand("identify", "rank subjects per probe");
  std::string id_model, id_probe, id_session, id_subject;
  int id_top = 5;
  CommonOpts id_opts;
  identify_cmd->add_option("--model", id_model, "model file")->required();
  identify_cmd->add_option("--probe", id_probe,
                           "probe directory (features or recordings)")
      ->required();
  identify_cmd->add_option("--session", id_session, "probe session filter");
  identify_cmd->add_option("--subject", id_subject, "probe subject filter");
  identify_cmd->add_option("--top", id_top, "ranks to print");
  id_opts.attach(identify_cmd);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "full biometric evaluation");
  std::string ev_model, ev_probes, ev_session, ev_out;
  bool ev_one_to_one = false;
  CommonOpts ev_opts;
  evaluate->add_option("--model", ev_model, "model file")->required();
  evaluate->add_option("--probes", ev_probes,
                       "probe directory (features or recordings)")
      ->required();
  evaluate->add_option("--session", ev_session, "probe session filter");
  evaluate->add_flag("--one-to-one", ev_one_to_one,
                     "greedy one-to-one matching (square matrices)");
  evaluate->add_option("--out", ev_out, "output directory")->required();
  ev_opts.attach(evaluate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) {
      synth_opts.resolve(synth);
      return run_synth(subjects, sessions, stimulus, duration_s, rate_hz,
                       archetypes, synth_opts, out_dir);
    }
    if (segment->parsed()) {
      seg_opts.resolve(segment);
      return run_segment(seg_input, seg_geometry, seg_stimulus, seg_opts,
                         seg_out);
    }
    if (extract->parsed()) {
      ext_opts.resolve(extract);
      return run_extract(ext_in, ext_stimulus, ext_opts, ext_out);
    }
    if (select->parsed()) {
      sel_opts.resolve(select);
      return run_select(sel_features, sel_stimulus, sel_iterations,
                        sel_fraction, sel_opts, sel_out);
    }
    if (train->parsed()) {
      tr_opts.resolve(train);
      return run_train(tr_features, tr_stimulus, tr_session, tr_fraction,
                       tr_mask_file, tr_opts, tr_model,
                       tr_out.empty() ? fs::path() : fs::path(tr_out));
    }
    if (identify_cmd->parsed()) {
      id_opts.resolve(identify_cmd);
      return run_identify(id_model, id_probe, id_session, id_subject, id_top,
                          id_opts);
    }
    if (evaluate->parsed()) {
      ev_opts.resolve(evaluate);
      return run_evaluate(ev_model, ev_probes, ev_session, ev_one_to_one,
                          ev_opts, ev_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
