#include "gazeid/rbfn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gazeid/rng.hpp"
#include "gazeid/util.hpp"

namespace gazeid {

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int max_iter,
                    std::uint64_t seed) {
  const Eigen::Index n = points.rows();
  if (n < 1) throw std::invalid_argument("kmeans: no points");
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");

  KmeansResult result;
  result.k_reduced = k > n;
  if (k > n) k = static_cast<int>(n);
  result.k = k;

  std::mt19937_64 gen(seed);
  std::vector<std::size_t> init =
      rng::sample_indices(gen, static_cast<std::size_t>(n),
                          static_cast<std::size_t>(k));
  Eigen::MatrixXd centers(k, points.cols());
  for (int c = 0; c < k; ++c)
    centers.row(c) = points.row(static_cast<Eigen::Index>(init[c]));

  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (points.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      dist[static_cast<std::size_t>(i)] = best_d;
      if (assignment[static_cast<std::size_t>(i)] != best) {
        assignment[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }

    // Re-seed empty clusters from the point farthest from its center.
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int a : assignment) ++counts[static_cast<std::size_t>(a)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = 0;
      for (Eigen::Index i = 1; i < n; ++i)
        if (dist[static_cast<std::size_t>(i)] >
            dist[static_cast<std::size_t>(far)])
          far = i;
      centers.row(c) = points.row(far);
      --counts[static_cast<std::size_t>(
          assignment[static_cast<std::size_t>(far)])];
      assignment[static_cast<std::size_t>(far)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      dist[static_cast<std::size_t>(far)] = 0.0;
      changed = true;
    }

    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < n; ++i)
      sums.row(assignment[static_cast<std::size_t>(i)]) += points.row(i);
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        centers.row(c) =
            sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
  }

  result.centers = centers;
  result.assignment = assignment;
  result.iterations = iter;
  return result;
}

SubjectModel fit_subject(const std::string& subject_id,
                         const Eigen::MatrixXd& points, int k,
                         std::uint64_t seed) {
  if (points.rows() < 1)
    throw std::invalid_argument("fit_subject: subject '" + subject_id +
                                "' has no segment vectors");
  KmeansResult km = kmeans(points, k, 100, seed);
  if (km.k_reduced)
    std::cerr << "warning: subject " << subject_id << " has only "
              << points.rows() << " segments; k reduced to " << km.k << "\n";

  SubjectModel model;
  model.subject_id = subject_id;
  model.prototypes = km.centers;
  model.betas.resize(km.k);

  std::vector<double> sigma(static_cast<std::size_t>(km.k), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(km.k), 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const int c = km.assignment[static_cast<std::size_t>(i)];
    sigma[static_cast<std::size_t>(c)] +=
        (points.row(i) - km.centers.row(c)).norm();
    ++counts[static_cast<std::size_t>(c)];
  }

  std::vector<double> sound_betas;
  for (int c = 0; c < km.k; ++c) {
    const double s = sigma[static_cast<std::size_t>(c)] /
                     static_cast<double>(counts[static_cast<std::size_t>(c)]);
    if (s > 0) {
      model.betas(c) = 1.0 / (2.0 * s * s);
      sound_betas.push_back(model.betas(c));
    } else {
      model.betas(c) = 0.0;  // placeholder, fallback below
    }
  }
  double fallback = 1.0;
  if (!sound_betas.empty()) {
    std::sort(sound_betas.begin(), sound_betas.end());
    const std::size_t m = sound_betas.size();
    fallback = m % 2 == 1 ? sound_betas[m / 2]
                          : 0.5 * (sound_betas[m / 2 - 1] + sound_betas[m / 2]);
  }
  for (int c = 0; c < km.k; ++c)
    if (model.betas(c) == 0.0) model.betas(c) = fallback;
  return model;
}

Eigen::Index RbfNetwork::neuron_count() const {
  Eigen::Index total = 0;
  for (const SubjectModel& m : subject_models) total += m.prototypes.rows();
  return total;
}

Eigen::Index RbfNetwork::input_dim() const {
  return subject_models.empty() ? 0 : subject_models.front().prototypes.cols();
}

Eigen::VectorXd activations(const RbfNetwork& net, const Eigen::VectorXd& x) {
  if (x.size() != net.input_dim())
    throw std::invalid_argument("activations: input dimension mismatch");
  Eigen::VectorXd a(net.neuron_count());
  Eigen::Index offset = 0;
  for (const SubjectModel& m : net.subject_models) {
    for (Eigen::Index j = 0; j < m.prototypes.rows(); ++j) {
      const double d2 = (x.transpose() - m.prototypes.row(j)).squaredNorm();
      a(offset + j) = std::exp(-m.betas(j) * d2);
    }
    offset += m.prototypes.rows();
  }
  return a;
}

Eigen::MatrixXd activation_matrix(const RbfNetwork& net,
                                  const Eigen::MatrixXd& rows) {
  Eigen::MatrixXd a(rows.rows(), net.neuron_count());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    a.row(i) = activations(net, rows.row(i).transpose()).transpose();
  return a;
}

Eigen::MatrixXd pinv_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& y,
                           double rel_tol) {
  if (a.rows() != y.rows())
    throw std::invalid_argument("pinv_solve: row counts differ");

  // Tall systems go through a thin QR first; R shares A's singular values,
  // so the truncation rule is unchanged while the SVD shrinks to p x p.
  if (a.rows() > a.cols() * 4 / 3) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd r = qr.matrixQR()
                            .topRows(a.cols())
                            .triangularView<Eigen::Upper>();
    Eigen::MatrixXd qty =
        (qr.householderQ().transpose() * y).topRows(a.cols());
    return pinv_solve(r, qty, rel_tol);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rel_tol * s(0) : 0.0;
  Eigen::VectorXd inv = s.unaryExpr(
      [&](double v) { return v > cutoff ? 1.0 / v : 0.0; });
  return svd.matrixV() *
         (inv.asDiagonal() * (svd.matrixU().transpose() * y));
}

Eigen::MatrixXd solve_output_weights(const Eigen::MatrixXd& activations,
                                     const std::vector<int>& labels,
                                     int subject_count) {
  if (static_cast<Eigen::Index>(labels.size()) != activations.rows())
    throw std::invalid_argument("solve_output_weights: label count mismatch");
  std::vector<char> seen(static_cast<std::size_t>(subject_count), 0);
  Eigen::MatrixXd targets =
      Eigen::MatrixXd::Zero(activations.rows(), subject_count);
  for (Eigen::Index i = 0; i < activations.rows(); ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0 || label >= subject_count)
      throw std::invalid_argument("solve_output_weights: label out of range");
    targets(i, label) = 1.0;
    seen[static_cast<std::size_t>(label)] = 1;
  }
  for (int s = 0; s < subject_count; ++s)
    if (!seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument(
          "solve_output_weights: subject index " + std::to_string(s) +
          " has no training rows");
  Eigen::Index dead = 0;
  for (Eigen::Index c = 0; c < activations.cols(); ++c)
    if (activations.col(c).isZero(0.0)) ++dead;
  if (dead > 0)
    std::cerr << "warning: " << dead
              << " neuron(s) never activate on the training set; "
                 "returning the minimum-norm solution\n";
  return pinv_solve(activations, targets);
}

namespace {

Eigen::MatrixXd stack_masked_normalized(
    const std::vector<std::vector<double>>& raw, const FeatureSchema& schema,
    const NormalizationStats& stats) {
  const std::size_t dim = schema.active_count();
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(raw.size()),
                       static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::vector<double> norm = normalize(raw[i], stats);
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < norm.size(); ++j)
      if (schema.mask[j]) rows(static_cast<Eigen::Index>(i), c++) = norm[j];
  }
  return rows;
}

struct KindTrainer {
  FeatureSchema schema;
  NormalizationStats stats;
  RbfNetwork net;
};

// Returns a trainer with an empty network when the mask disables the whole
// kind; the fusion stage then treats the kind as absent.
KindTrainer train_kind(const std::vector<SubjectTrainingData>& data,
                       SegmentKind kind, const TrainConfig& cfg,
                       const std::vector<char>& mask_override) {
  KindTrainer out;
  out.schema = kind == SegmentKind::Fixation ? fixation_schema(cfg.stimulus)
                                             : saccade_schema(cfg.stimulus);
  if (!mask_override.empty()) {
    if (mask_override.size() != out.schema.mask.size())
      throw std::invalid_argument("train: mask override length mismatch");
    out.schema.mask = mask_override;
  }
  out.schema.validate();
  out.net.kind = kind;
  if (out.schema.active_count() == 0) {
    // Disabled kind: keep placeholder stats so the file format stays fixed.
    out.stats.min.assign(out.schema.names.size(), 0.0);
    out.stats.max.assign(out.schema.names.size(), 0.0);
    return out;
  }

  auto vectors_of = [&](const SubjectTrainingData& s)
      -> const std::vector<std::vector<double>>& {
    return kind == SegmentKind::Fixation ? s.fixations : s.saccades;
  };

  std::vector<std::vector<double>> all_raw;
  for (const SubjectTrainingData& s : data) {
    if (vectors_of(s).empty())
      throw std::invalid_argument("train: subject '" + s.subject_id +
                                  "' has no " + to_string(kind) + " segments");
    all_raw.insert(all_raw.end(), vectors_of(s).begin(), vectors_of(s).end());
  }
  out.stats = fit_normalizer(all_raw);

  std::vector<int> labels;
  std::vector<Eigen::MatrixXd> subject_rows;
  for (std::size_t s = 0; s < data.size(); ++s) {
    Eigen::MatrixXd rows =
        stack_masked_normalized(vectors_of(data[s]), out.schema, out.stats);
    const std::uint64_t subject_seed = rng::derive_seed(
        cfg.seed, rng::hash_string(data[s].subject_id),
        kind == SegmentKind::Fixation ? 1 : 2);
    out.net.subject_models.push_back(fit_subject(
        data[s].subject_id, rows, cfg.k_per_subject, subject_seed));
    subject_rows.push_back(std::move(rows));
    for (Eigen::Index i = 0; i < subject_rows.back().rows(); ++i)
      labels.push_back(static_cast<int>(s));
  }

  Eigen::Index total = 0;
  for (const Eigen::MatrixXd& m : subject_rows) total += m.rows();
  Eigen::MatrixXd stacked(total, out.net.input_dim());
  Eigen::Index at = 0;
  for (const Eigen::MatrixXd& m : subject_rows) {
    stacked.middleRows(at, m.rows()) = m;
    at += m.rows();
  }

  const Eigen::MatrixXd a = activation_matrix(out.net, stacked);
  out.net.weights =
      solve_output_weights(a, labels, static_cast<int>(data.size()));
  return out;
}

}  // namespace

FusionModel train_fusion_model(const std::vector<SubjectTrainingData>& data,
                               const TrainConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("train: no subjects");
  if (cfg.lambda < 0 || cfg.lambda > 1)
    throw std::invalid_argument("train: lambda must be in [0,1]");
  if (cfg.k_per_subject < 1)
    throw std::invalid_argument("train: k_per_subject must be >= 1");

  FusionModel model;
  model.stimulus = cfg.stimulus;
  model.lambda = cfg.lambda;
  for (const SubjectTrainingData& s : data)
    model.subjects.push_back(s.subject_id);

  KindTrainer fix = train_kind(data, SegmentKind::Fixation, cfg, cfg.fix_mask);
  KindTrainer sacc = train_kind(data, SegmentKind::Saccade, cfg, cfg.sacc_mask);
  if (fix.net.subject_models.empty() && sacc.net.subject_models.empty())
    throw std::invalid_argument("train: both kinds are masked out entirely");
  model.fix_schema = std::move(fix.schema);
  model.fix_norm = std::move(fix.stats);
  model.fix_net = std::move(fix.net);
  model.sacc_schema = std::move(sacc.schema);
  model.sacc_norm = std::move(sacc.stats);
  model.sacc_net = std::move(sacc.net);
  return model;
}

namespace {

Eigen::VectorXd mean_network_output(
    const RbfNetwork& net, const FeatureSchema& schema,
    const NormalizationStats& stats,
    const std::vector<std::vector<double>>& raw) {
  const Eigen::MatrixXd rows = stack_masked_normalized(raw, schema, stats);
  const Eigen::MatrixXd a = activation_matrix(net, rows);
  // Average of the per-segment output vectors A_i * w.
  return (a * net.weights).colwise().mean().transpose();
}

}  // namespace

Eigen::VectorXd fused_score(const FusionModel& model,
                            const std::vector<std::vector<double>>& fixations,
                            const std::vector<std::vector<double>>& saccades) {
  // A kind is usable only if the probe has segments of it and the model
  // trained a network for it.
  const bool have_fix =
      !fixations.empty() && !model.fix_net.subject_models.empty();
  const bool have_sacc =
      !saccades.empty() && !model.sacc_net.subject_models.empty();
  if (!have_fix && !have_sacc)
    throw std::invalid_argument("fused_score: probe has no usable segments");

  double w_fix = model.lambda;
  double w_sacc = 1.0 - model.lambda;
  // A missing kind hands its fusion mass to the present one.
  if (!have_fix) {
    w_fix = 0.0;
    w_sacc = 1.0;
  } else if (!have_sacc) {
    w_fix = 1.0;
    w_sacc = 0.0;
  }

  const Eigen::Index m = static_cast<Eigen::Index>(model.subjects.size());
  Eigen::VectorXd score = Eigen::VectorXd::Zero(m);
  if (w_fix > 0.0)
    score += w_fix * mean_network_output(model.fix_net, model.fix_schema,
                                         model.fix_norm, fixations);
  if (w_sacc > 0.0)
    score += w_sacc * mean_network_output(model.sacc_net, model.sacc_schema,
                                          model.sacc_norm, saccades);
  return score;
}

int identify(const Eigen::VectorXd& score) {
  if (score.size() < 1) throw std::invalid_argument("identify: empty score");
  int best = 0;
  for (int i = 1; i < score.size(); ++i)
    if (score(i) > score(best)) best = i;
  return best;
}

// ---------------------------------------------------------------------------
// Model file: versioned line-oriented text, doubles in round-trip form.

namespace {

constexpr const char* kModelVersion = "gazeid-model v1";

std::uint64_t schema_hash(const FeatureSchema& fix, const FeatureSchema& sacc) {
  std::string text;
  for (const auto& n : fix.names) text += n + ";";
  for (char m : fix.mask) text += m ? 'Y' : 'N';
  for (const auto& n : sacc.names) text += n + ";";
  for (char m : sacc.mask) text += m ? 'Y' : 'N';
  return rng::hash_string(text);
}

void write_vector(std::ostream& out, const char* tag,
                  const std::vector<double>& v) {
  out << tag;
  for (double x : v) out << ' ' << util::format_double(x);
  out << '\n';
}

void write_eigen_vector(std::ostream& out, const char* tag,
                        const Eigen::VectorXd& v) {
  out << tag;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << ' ' << util::format_double(v(i));
  out << '\n';
}

std::string mask_string(const std::vector<char>& mask) {
  std::string s;
  for (char m : mask) s += m ? 'Y' : 'N';
  return s;
}

std::vector<char> mask_from_yn(const std::string& s) {
  std::vector<char> mask;
  for (char c : s) {
    if (c != 'Y' && c != 'N')
      throw std::runtime_error("model file: bad mask character");
    mask.push_back(c == 'Y' ? 1 : 0);
  }
  return mask;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const std::string& expect_tag) {
    std::string line;
    if (!std::getline(in_, line))
      throw std::runtime_error("model file: unexpected end before '" +
                               expect_tag + "'");
    ++line_no_;
    if (line.rfind(expect_tag, 0) != 0)
      throw std::runtime_error("model file line " + std::to_string(line_no_) +
                               ": expected '" + expect_tag + "'");
    return line.size() > expect_tag.size() ? line.substr(expect_tag.size() + 1)
                                           : std::string();
  }

  std::vector<double> next_vector(const std::string& tag,
                                  std::size_t expect_len) {
    std::istringstream ss(next(tag));
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    if (v.size() != expect_len)
      throw std::runtime_error("model file: '" + tag + "' expected " +
                               std::to_string(expect_len) + " values, got " +
                               std::to_string(v.size()));
    return v;
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

void save_network(std::ostream& out, const char* name, const RbfNetwork& net) {
  out << name << "_enabled " << (net.subject_models.empty() ? 0 : 1) << '\n';
  if (net.subject_models.empty()) return;
  for (const SubjectModel& m : net.subject_models) {
    out << "subject " << m.subject_id << '\n';
    out << name << "_k " << m.prototypes.rows() << " dim "
        << m.prototypes.cols() << '\n';
    for (Eigen::Index r = 0; r < m.prototypes.rows(); ++r)
      write_eigen_vector(out, "proto", m.prototypes.row(r).transpose());
    write_eigen_vector(out, "beta", m.betas);
  }
  out << name << "_weights " << net.weights.rows() << ' ' << net.weights.cols()
      << '\n';
  for (Eigen::Index r = 0; r < net.weights.rows(); ++r)
    write_eigen_vector(out, "w", net.weights.row(r).transpose());
}

RbfNetwork load_network(LineReader& reader, const char* name,
                        SegmentKind kind,
                        const std::vector<std::string>& subjects) {
  RbfNetwork net;
  net.kind = kind;
  const std::string enabled =
      reader.next(std::string(name) + "_enabled");
  if (enabled == "0") return net;
  if (enabled != "1")
    throw std::runtime_error("model file: bad enabled flag");
  const std::string k_tag = std::string(name) + "_k";
  for (const std::string& subject : subjects) {
    if (reader.next("subject") != subject)
      throw std::runtime_error("model file: subject order mismatch");
    std::istringstream ss(reader.next(k_tag));
    Eigen::Index k = 0, dim = 0;
    std::string dim_word;
    if (!(ss >> k >> dim_word >> dim) || dim_word != "dim" || k < 1 || dim < 1)
      throw std::runtime_error("model file: bad prototype block header");
    SubjectModel m;
    m.subject_id = subject;
    m.prototypes.resize(k, dim);
    for (Eigen::Index r = 0; r < k; ++r) {
      std::vector<double> row =
          reader.next_vector("proto", static_cast<std::size_t>(dim));
      for (Eigen::Index c = 0; c < dim; ++c)
        m.prototypes(r, c) = row[static_cast<std::size_t>(c)];
    }
    std::vector<double> betas =
        reader.next_vector("beta", static_cast<std::size_t>(k));
    m.betas = Eigen::Map<Eigen::VectorXd>(betas.data(),
                                          static_cast<Eigen::Index>(k));
    net.subject_models.push_back(std::move(m));
  }
  std::istringstream ss(reader.next(std::string(name) + "_weights"));
  Eigen::Index rows = 0, cols = 0;
  if (!(ss >> rows >> cols))
    throw std::runtime_error("model file: bad weight header");
  net.weights.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::vector<double> row =
        reader.next_vector("w", static_cast<std::size_t>(cols));
    for (Eigen::Index c = 0; c < cols; ++c)
      net.weights(r, c) = row[static_cast<std::size_t>(c)];
  }
  return net;
}

}  // namespace

void FusionModel::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << kModelVersion << '\n';
  out << "stimulus " << to_string(stimulus) << '\n';
  out << "lambda " << util::format_double(lambda) << '\n';
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(
                    schema_hash(fix_schema, sacc_schema)));
  out << "schema_hash " << hex << '\n';
  out << "fix_mask " << mask_string(fix_schema.mask) << '\n';
  out << "sacc_mask " << mask_string(sacc_schema.mask) << '\n';
  write_vector(out, "fix_norm_min", fix_norm.min);
  write_vector(out, "fix_norm_max", fix_norm.max);
  write_vector(out, "sacc_norm_min", sacc_norm.min);
  write_vector(out, "sacc_norm_max", sacc_norm.max);
  out << "subjects " << subjects.size() << '\n';
  for (const std::string& id : subjects) out << "id " << id << '\n';
  save_network(out, "fix", fix_net);
  save_network(out, "sacc", sacc_net);
  out << "end\n";
  util::write_file_atomic(path, out.str());
}

FusionModel FusionModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  LineReader reader(in);

  std::string version;
  std::getline(in, version);
  if (version != kModelVersion)
    throw std::runtime_error("model file: unsupported version '" + version +
                             "'");

  FusionModel model;
  model.stimulus = parse_stimulus(reader.next("stimulus"));
  model.lambda = util::parse_double(reader.next("lambda"), "lambda");
  const std::string stored_hash = reader.next("schema_hash");

  model.fix_schema = fixation_schema(model.stimulus);
  model.fix_schema.mask = mask_from_yn(reader.next("fix_mask"));
  model.sacc_schema = saccade_schema(model.stimulus);
  model.sacc_schema.mask = mask_from_yn(reader.next("sacc_mask"));
  model.fix_schema.validate();
  model.sacc_schema.validate();

  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(
                    schema_hash(model.fix_schema, model.sacc_schema)));
  if (stored_hash != hex)
    throw std::runtime_error("model file: schema hash mismatch");

  model.fix_norm.min = reader.next_vector("fix_norm_min", kFixationFeatureCount);
  model.fix_norm.max = reader.next_vector("fix_norm_max", kFixationFeatureCount);
  model.sacc_norm.min =
      reader.next_vector("sacc_norm_min", kSaccadeFeatureCount);
  model.sacc_norm.max =
      reader.next_vector("sacc_norm_max", kSaccadeFeatureCount);

  const long n_subjects =
      util::parse_long(reader.next("subjects"), "subjects");
  if (n_subjects < 1) throw std::runtime_error("model file: no subjects");
  std::vector<std::string> subjects;
  for (long s = 0; s < n_subjects; ++s) subjects.push_back(reader.next("id"));

  model.subjects = subjects;
  model.fix_net =
      load_network(reader, "fix", SegmentKind::Fixation, subjects);
  model.sacc_net =
      load_network(reader, "sacc", SegmentKind::Saccade, subjects);
  reader.next("end");
  return model;
}

}  // namespace gazeid
