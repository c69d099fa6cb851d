#include "gazeid/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gazeid/util.hpp"

namespace gazeid {

void PipelineConfig::validate() const {
  ivt.validate();
  smoothing.validate();
  if (k_per_subject < 1)
    throw std::invalid_argument("config: k_per_subject must be >= 1");
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("config: lambda must be in [0,1]");
}

std::string pipeline_config_text(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "velocity_threshold_deg_s " << util::format_double(cfg.ivt.velocity_threshold)
      << "\nmin_fixation_ms " << util::format_double(cfg.ivt.min_fixation_ms)
      << "\nmin_saccade_ms " << util::format_double(cfg.ivt.min_saccade_ms)
      << "\nsg_poly_order " << cfg.smoothing.poly_order
      << "\nsg_frame_len " << cfg.smoothing.frame_len
      << "\nk_per_subject " << cfg.k_per_subject
      << "\nlambda " << util::format_double(cfg.lambda)
      << "\nseed " << cfg.seed << "\n";
  return out.str();
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  PipelineConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::replace(t.begin(), t.end(), '=', ' ');
    std::istringstream ss(t);
    std::string key, value;
    if (!(ss >> key >> value))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'key value'");
    if (key == "velocity_threshold_deg_s")
      cfg.ivt.velocity_threshold = util::parse_double(value, key);
    else if (key == "min_fixation_ms")
      cfg.ivt.min_fixation_ms = util::parse_double(value, key);
    else if (key == "min_saccade_ms")
      cfg.ivt.min_saccade_ms = util::parse_double(value, key);
    else if (key == "sg_poly_order")
      cfg.smoothing.poly_order = static_cast<int>(util::parse_long(value, key));
    else if (key == "sg_frame_len")
      cfg.smoothing.frame_len = static_cast<int>(util::parse_long(value, key));
    else if (key == "k_per_subject")
      cfg.k_per_subject = static_cast<int>(util::parse_long(value, key));
    else if (key == "lambda")
      cfg.lambda = util::parse_double(value, key);
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(util::parse_long(value, key));
    else
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

PreprocessedRecording preprocess_recording(const GazeRecording& rec,
                                           const SmoothingConfig& smoothing) {
  PreprocessedRecording pre;
  pre.recording = decimate_to_250(rec);
  pre.trace = to_screen(pre.recording);

  const std::size_t n = pre.recording.samples.size();
  std::vector<double> theta_x(n), theta_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    theta_x[i] = pre.recording.samples[i].theta_x;
    theta_y[i] = pre.recording.samples[i].theta_y;
  }
  const std::vector<double> sx = savitzky_golay(pre.trace.x, smoothing);
  const std::vector<double> sy = savitzky_golay(pre.trace.y, smoothing);
  const std::vector<double> stx = savitzky_golay(theta_x, smoothing);
  const std::vector<double> sty = savitzky_golay(theta_y, smoothing);
  pre.profiles = compute_profiles(sx, sy, stx, sty, pre.recording.dt_s());
  return pre;
}

std::vector<Segment> segment_recording(const PreprocessedRecording& pre,
                                       const IvtConfig& ivt) {
  const std::vector<SegmentKind> labels =
      ivt_classify(pre.profiles.ang_vel, pre.trace.t_ms, ivt);
  return build_segments(labels, pre.trace.t_ms, pre.trace.valid, ivt);
}

RecordingFeatures extract_recording_features(
    const PreprocessedRecording& pre, const std::vector<Segment>& segments,
    StimulusKind stimulus) {
  // Static schemas: extraction emits raw full-length vectors; masks and
  // normalization belong to the training stage.
  static const FeatureSchema fix_ran = fixation_schema(StimulusKind::Ran);
  static const FeatureSchema fix_tex = fixation_schema(StimulusKind::Tex);
  static const FeatureSchema sacc_ran = saccade_schema(StimulusKind::Ran);
  static const FeatureSchema sacc_tex = saccade_schema(StimulusKind::Tex);
  const FeatureSchema& fs =
      stimulus == StimulusKind::Ran ? fix_ran : fix_tex;
  const FeatureSchema& ss =
      stimulus == StimulusKind::Ran ? sacc_ran : sacc_tex;

  RecordingFeatures out;
  out.subject_id = pre.recording.subject_id;
  out.session_id = pre.recording.session_id;
  const Segment* prev_fix = nullptr;
  const Segment* prev_sacc = nullptr;
  for (const Segment& seg : segments) {
    if (seg.sample_count() < 2) continue;  // too short to carry statistics
    if (seg.kind == SegmentKind::Fixation) {
      out.fixations.push_back(
          fixation_features(seg, pre.profiles, prev_fix, fs).values);
      prev_fix = &seg;
    } else {
      out.saccades.push_back(
          saccade_features(seg, pre.profiles, prev_sacc, ss).values);
      prev_sacc = &seg;
    }
  }
  return out;
}

RecordingFeatures extract_features_from_file(
    const std::filesystem::path& csv_path,
    const AcquisitionGeometry& geometry, StimulusKind stimulus,
    const PipelineConfig& cfg) {
  const GazeRecording rec = parse_recording(csv_path, geometry, stimulus);
  const PreprocessedRecording pre = preprocess_recording(rec, cfg.smoothing);
  const std::vector<Segment> segments = segment_recording(pre, cfg.ivt);
  return extract_recording_features(pre, segments, stimulus);
}

namespace {

constexpr const char* kFixCsv = "features_fix.csv";
constexpr const char* kSaccCsv = "features_sacc.csv";
constexpr const char* kSchemaJson = "schema.json";

std::string feature_csv(const FeatureDataset& dataset, SegmentKind kind,
                        const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "subject,session,kind";
  for (const std::string& n : names) out << ',' << n;
  out << '\n';
  for (const RecordingFeatures& rec : dataset) {
    const auto& rows =
        kind == SegmentKind::Fixation ? rec.fixations : rec.saccades;
    for (const std::vector<double>& row : rows) {
      out << rec.subject_id << ',' << rec.session_id << ',' << to_string(kind);
      for (double v : row) out << ',' << util::format_double(v);
      out << '\n';
    }
  }
  return out.str();
}

void read_feature_csv(const std::filesystem::path& path, SegmentKind kind,
                      std::size_t expect_dim,
                      std::map<std::pair<std::string, std::string>,
                               RecordingFeatures>& recs) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path.string() + ": empty file");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    const std::vector<std::string> cols = util::split(line, ',');
    if (cols.size() != expect_dim + 3)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": wrong column count");
    std::vector<double> values(expect_dim);
    for (std::size_t i = 0; i < expect_dim; ++i)
      values[i] = util::parse_double(cols[i + 3], "feature");
    auto key = std::make_pair(cols[0], cols[1]);
    RecordingFeatures& rec = recs[key];
    rec.subject_id = cols[0];
    rec.session_id = cols[1];
    if (kind == SegmentKind::Fixation)
      rec.fixations.push_back(std::move(values));
    else
      rec.saccades.push_back(std::move(values));
  }
}

}  // namespace

void write_feature_dataset(const std::filesystem::path& dir,
                           const FeatureDataset& dataset,
                           StimulusKind stimulus) {
  std::filesystem::create_directories(dir);
  util::write_file_atomic(
      dir / kFixCsv,
      feature_csv(dataset, SegmentKind::Fixation, fixation_feature_names()));
  util::write_file_atomic(
      dir / kSaccCsv,
      feature_csv(dataset, SegmentKind::Saccade, saccade_feature_names()));

  nlohmann::json schema;
  schema["stimulus"] = to_string(stimulus);
  schema["fixation"]["names"] = fixation_feature_names();
  schema["fixation"]["mask"] = default_fixation_mask(stimulus);
  schema["saccade"]["names"] = saccade_feature_names();
  schema["saccade"]["mask"] = default_saccade_mask(stimulus);
  schema["units"] = {{"duration", "ms"},
                     {"screen", "px"},
                     {"angle", "rad"},
                     {"angular_velocity", "deg/s"},
                     {"saccadic_ratio", "deg/s per ms"}};
  util::write_file_atomic(dir / kSchemaJson, schema.dump(2) + "\n");
}

FeatureDataset load_feature_dataset(const std::filesystem::path& dir) {
  std::map<std::pair<std::string, std::string>, RecordingFeatures> recs;
  read_feature_csv(dir / kFixCsv, SegmentKind::Fixation,
                   kFixationFeatureCount, recs);
  read_feature_csv(dir / kSaccCsv, SegmentKind::Saccade,
                   kSaccadeFeatureCount, recs);
  FeatureDataset dataset;
  for (auto& [key, rec] : recs) dataset.push_back(std::move(rec));
  return dataset;
}

std::vector<SubjectTrainingData> collect_training_data(
    const FeatureDataset& dataset, const std::string& session) {
  std::map<std::string, SubjectTrainingData> by_subject;
  for (const RecordingFeatures& rec : dataset) {
    if (!session.empty() && rec.session_id != session) continue;
    SubjectTrainingData& s = by_subject[rec.subject_id];
    s.subject_id = rec.subject_id;
    s.fixations.insert(s.fixations.end(), rec.fixations.begin(),
                       rec.fixations.end());
    s.saccades.insert(s.saccades.end(), rec.saccades.begin(),
                      rec.saccades.end());
  }
  std::vector<SubjectTrainingData> out;
  for (auto& [id, s] : by_subject) out.push_back(std::move(s));
  return out;
}

std::vector<ProbeFeatures> collect_probes(const FeatureDataset& dataset,
                                          const std::string& session) {
  std::vector<ProbeFeatures> probes;
  for (const RecordingFeatures& rec : dataset) {
    if (!session.empty() && rec.session_id != session) continue;
    probes.push_back({rec.subject_id, rec.session_id, rec.fixations,
                      rec.saccades});
  }
  std::sort(probes.begin(), probes.end(),
            [](const ProbeFeatures& a, const ProbeFeatures& b) {
              return std::tie(a.subject_id, a.session_id) <
                     std::tie(b.subject_id, b.session_id);
            });
  return probes;
}

FeatureDataset extract_directory(const std::filesystem::path& dir,
                                 StimulusKind stimulus,
                                 const PipelineConfig& cfg) {
  cfg.validate();
  std::vector<std::filesystem::path> csvs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::filesystem::path& p = entry.path();
    if (p.extension() == ".csv" &&
        p.filename().string().rfind("features_", 0) != 0)
      csvs.push_back(p);
  }
  std::sort(csvs.begin(), csvs.end());
  if (csvs.empty())
    throw std::runtime_error("no recording CSVs found in " + dir.string());

  const std::filesystem::path shared_geom = dir / "geometry.txt";
  FeatureDataset dataset;
  for (const std::filesystem::path& csv : csvs) {
    std::filesystem::path sidecar = csv;
    sidecar.replace_extension(".geom");
    AcquisitionGeometry geometry;
    if (std::filesystem::exists(sidecar))
      geometry = parse_geometry(sidecar);
    else if (std::filesystem::exists(shared_geom))
      geometry = parse_geometry(shared_geom);
    else
      throw std::runtime_error("no geometry sidecar for " + csv.string() +
                               " (looked for " + sidecar.string() +
                               " and geometry.txt)");
    dataset.push_back(
        extract_features_from_file(csv, geometry, stimulus, cfg));
  }
  return dataset;
}

}  // namespace gazeid
