#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gazeid/evaluation.hpp"
#include "gazeid/feature_selection.hpp"
#include "gazeid/pipeline.hpp"
#include "gazeid/synth.hpp"

namespace py = pybind11;
using namespace gazeid;

namespace {

IvtConfig make_ivt(double vt, double min_fix, double min_sacc) {
  IvtConfig cfg;
  cfg.velocity_threshold = vt;
  cfg.min_fixation_ms = min_fix;
  cfg.min_saccade_ms = min_sacc;
  return cfg;
}

SmoothingConfig make_smoothing(int order, int frame) {
  SmoothingConfig cfg;
  cfg.poly_order = order;
  cfg.frame_len = frame;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_gazeid, m) {
  m.doc() = "Score-level-fusion eye movement biometrics: segmentation, "
            "feature extraction, RBF-network identification and evaluation.";

  py::enum_<StimulusKind>(m, "StimulusKind")
      .value("RAN", StimulusKind::Ran)
      .value("TEX", StimulusKind::Tex);
  py::enum_<SegmentKind>(m, "SegmentKind")
      .value("FIXATION", SegmentKind::Fixation)
      .value("SACCADE", SegmentKind::Saccade);

  py::class_<AcquisitionGeometry>(m, "AcquisitionGeometry")
      .def(py::init<>())
      .def_readwrite("head_distance_mm", &AcquisitionGeometry::head_distance_mm)
      .def_readwrite("screen_width_mm", &AcquisitionGeometry::screen_width_mm)
      .def_readwrite("screen_height_mm", &AcquisitionGeometry::screen_height_mm)
      .def_readwrite("screen_width_px", &AcquisitionGeometry::screen_width_px)
      .def_readwrite("screen_height_px", &AcquisitionGeometry::screen_height_px)
      .def_readwrite("sample_rate_hz", &AcquisitionGeometry::sample_rate_hz);

  py::class_<GazeRecording>(m, "GazeRecording")
      .def_readwrite("subject_id", &GazeRecording::subject_id)
      .def_readwrite("session_id", &GazeRecording::session_id)
      .def_readonly("stimulus", &GazeRecording::stimulus)
      .def_readonly("geometry", &GazeRecording::geometry)
      .def_property_readonly(
          "n_samples",
          [](const GazeRecording& r) { return r.samples.size(); })
      .def("t_ms",
           [](const GazeRecording& r) {
             std::vector<double> t;
             for (const auto& s : r.samples) t.push_back(s.t_ms);
             return t;
           })
      .def("theta_x",
           [](const GazeRecording& r) {
             std::vector<double> v;
             for (const auto& s : r.samples) v.push_back(s.theta_x);
             return v;
           })
      .def("theta_y", [](const GazeRecording& r) {
        std::vector<double> v;
        for (const auto& s : r.samples) v.push_back(s.theta_y);
        return v;
      });

  py::class_<Segment>(m, "Segment")
      .def_readonly("kind", &Segment::kind)
      .def_readonly("start_index", &Segment::start_index)
      .def_readonly("end_index", &Segment::end_index)
      .def_readonly("duration_ms", &Segment::duration_ms)
      .def("__repr__", [](const Segment& s) {
        return "<Segment " + to_string(s.kind) + " [" +
               std::to_string(s.start_index) + "," +
               std::to_string(s.end_index) + "] " +
               std::to_string(s.duration_ms) + " ms>";
      });

  py::class_<SubjectProfile>(m, "SubjectProfile")
      .def(py::init<>())
      .def_readwrite("peak_velocity_gain", &SubjectProfile::peak_velocity_gain)
      .def_readwrite("fixation_tremor_std_deg",
                     &SubjectProfile::fixation_tremor_std_deg)
      .def_readwrite("saccade_duration_bias_ms",
                     &SubjectProfile::saccade_duration_bias_ms)
      .def_readwrite("skew_tendency", &SubjectProfile::skew_tendency)
      .def_readwrite("seed", &SubjectProfile::seed);

  // Preprocessing
  m.def("savitzky_golay",
        [](const std::vector<double>& series, int poly_order, int frame_len) {
          return savitzky_golay(series, make_smoothing(poly_order, frame_len));
        },
        py::arg("series"), py::arg("poly_order") = 6, py::arg("frame_len") = 15);
  m.def("differentiate", &differentiate, py::arg("series"), py::arg("dt_s"));
  m.def("to_screen",
        [](const GazeRecording& rec) {
          ScreenTrace t = to_screen(rec);
          return py::make_tuple(t.t_ms, t.x, t.y);
        },
        py::arg("recording"));
  m.def("decimate_to_250", &decimate_to_250, py::arg("recording"));

  // Segmentation
  m.def("ivt_classify",
        [](const std::vector<double>& ang_vel, const std::vector<double>& t_ms,
           double vt, double min_fix, double min_sacc) {
          return ivt_classify(ang_vel, t_ms, make_ivt(vt, min_fix, min_sacc));
        },
        py::arg("ang_vel"), py::arg("t_ms"), py::arg("velocity_threshold") = 50.0,
        py::arg("min_fixation_ms") = 100.0, py::arg("min_saccade_ms") = 12.0);
  m.def("build_segments",
        [](const std::vector<SegmentKind>& labels,
           const std::vector<double>& t_ms, double vt, double min_fix,
           double min_sacc) {
          return build_segments(labels, t_ms, make_ivt(vt, min_fix, min_sacc));
        },
        py::arg("labels"), py::arg("t_ms"), py::arg("velocity_threshold") = 50.0,
        py::arg("min_fixation_ms") = 100.0, py::arg("min_saccade_ms") = 12.0);
  m.def("segment_recording",
        [](const GazeRecording& rec) {
          PipelineConfig cfg;
          const PreprocessedRecording pre =
              preprocess_recording(rec, cfg.smoothing);
          return segment_recording(pre, cfg.ivt);
        },
        py::arg("recording"),
        "Preprocess with the published defaults and return the segment list.");

  // Features
  m.def("fixation_feature_names", &fixation_feature_names);
  m.def("saccade_feature_names", &saccade_feature_names);
  m.def("default_fixation_mask", &default_fixation_mask, py::arg("stimulus"));
  m.def("default_saccade_mask", &default_saccade_mask, py::arg("stimulus"));
  m.def("extract_features",
        [](const GazeRecording& rec) {
          PipelineConfig cfg;
          const PreprocessedRecording pre =
              preprocess_recording(rec, cfg.smoothing);
          const std::vector<Segment> segs = segment_recording(pre, cfg.ivt);
          const RecordingFeatures f =
              extract_recording_features(pre, segs, rec.stimulus);
          return py::make_tuple(f.fixations, f.saccades);
        },
        py::arg("recording"),
        "Returns (fixation_rows, saccade_rows) of raw feature vectors.");

  // Synthetic cohort
  m.def("generate_recording",
        [](const SubjectProfile& p, StimulusKind stimulus, double duration_s,
           double rate_hz) {
          return generate_recording(p, stimulus, duration_s, rate_hz);
        },
        py::arg("profile"), py::arg("stimulus"), py::arg("duration_s"),
        py::arg("rate_hz") = 250.0);
  m.def("cohort_profiles", &cohort_profiles, py::arg("n_subjects"),
        py::arg("seed"));
  m.def("archetype_profiles", &archetype_profiles, py::arg("n_subjects"),
        py::arg("n_archetypes"), py::arg("seed"));

  // Model
  py::class_<FusionModel>(m, "FusionModel")
      .def_readonly("lambda_", &FusionModel::lambda)
      .def_readonly("subjects", &FusionModel::subjects)
      .def_property_readonly(
          "stimulus", [](const FusionModel& m_) { return m_.stimulus; })
      .def("save", &FusionModel::save, py::arg("path"))
      .def_static("load", &FusionModel::load, py::arg("path"))
      .def("score",
           [](const FusionModel& model,
              const std::vector<std::vector<double>>& fix,
              const std::vector<std::vector<double>>& sacc) {
             return fused_score(model, fix, sacc);
           },
           py::arg("fixations"), py::arg("saccades"),
           "Per-subject fused scores for one probe recording.")
      .def("identify",
           [](const FusionModel& model,
              const std::vector<std::vector<double>>& fix,
              const std::vector<std::vector<double>>& sacc) {
             const Eigen::VectorXd s = fused_score(model, fix, sacc);
             return model.subjects[static_cast<std::size_t>(identify(s))];
           },
           py::arg("fixations"), py::arg("saccades"));

  m.def("train_fusion_model",
        [](const std::vector<
               std::tuple<std::string, std::vector<std::vector<double>>,
                          std::vector<std::vector<double>>>>& data,
           StimulusKind stimulus, int k_per_subject, double lambda,
           std::uint64_t seed) {
          std::vector<SubjectTrainingData> rows;
          for (const auto& [id, fix, sacc] : data)
            rows.push_back({id, fix, sacc});
          TrainConfig cfg;
          cfg.stimulus = stimulus;
          cfg.k_per_subject = k_per_subject;
          cfg.lambda = lambda;
          cfg.seed = seed;
          return train_fusion_model(rows, cfg);
        },
        py::arg("data"), py::arg("stimulus"), py::arg("k_per_subject") = 32,
        py::arg("lambda_") = 0.5, py::arg("seed") = 1,
        "data: list of (subject_id, fixation_rows, saccade_rows).");

  // Evaluation
  m.def("compute_eer",
        [](const std::vector<double>& genuine,
           const std::vector<double>& impostor) {
          const EerResult r = compute_eer(genuine, impostor);
          return py::make_tuple(r.eer_percent, r.threshold);
        },
        py::arg("genuine"), py::arg("impostor"),
        "Returns (eer_percent, threshold).");
  m.def("one_to_one_match", &one_to_one_match, py::arg("score_matrix"));
  m.def("kmeans",
        [](const Eigen::MatrixXd& points, int k, int max_iter,
           std::uint64_t seed) {
          const KmeansResult r = kmeans(points, k, max_iter, seed);
          return py::make_tuple(r.centers, r.assignment);
        },
        py::arg("points"), py::arg("k"), py::arg("max_iter") = 100,
        py::arg("seed") = 1);
}
