#include "gazeid/preprocess.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace gazeid {

void SmoothingConfig::validate() const {
  if (poly_order < 0) throw std::invalid_argument("smoothing: poly_order < 0");
  if (frame_len <= 0 || frame_len % 2 == 0)
    throw std::invalid_argument("smoothing: frame_len must be odd and positive");
  if (frame_len <= poly_order)
    throw std::invalid_argument("smoothing: frame_len must exceed poly_order");
}

namespace {

double sym_at(const std::vector<double>& s, long i) {
  const long n = static_cast<long>(s.size());
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return s[static_cast<std::size_t>(i)];
}

// Center-point convolution weights of the least-squares polynomial fit:
// row 0 of pinv(V) for the Vandermonde V over offsets -h..h.
std::vector<double> sg_coefficients(const SmoothingConfig& cfg) {
  const int m = cfg.frame_len;
  const int h = m / 2;
  Eigen::MatrixXd v(m, cfg.poly_order + 1);
  for (int r = 0; r < m; ++r) {
    double z = r - h;
    double p = 1.0;
    for (int c = 0; c <= cfg.poly_order; ++c) {
      v(r, c) = p;
      p *= z;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // a = pinv(V) y gives the fitted polynomial's coefficients; the value at
  // the window center is a[0].
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(cfg.poly_order + 1);
  e0(0) = 1.0;
  Eigen::VectorXd svals = svd.singularValues();
  Eigen::VectorXd inv = svals.unaryExpr([&](double s) {
    return s > 1e-12 * svals(0) ? 1.0 / s : 0.0;
  });
  Eigen::VectorXd weights =
      svd.matrixU() * (inv.asDiagonal() * (svd.matrixV().transpose() * e0));
  return std::vector<double>(weights.data(), weights.data() + m);
}

}  // namespace

std::vector<double> savitzky_golay(const std::vector<double>& series,
                                   const SmoothingConfig& cfg) {
  cfg.validate();
  if (series.size() < static_cast<std::size_t>(cfg.frame_len))
    throw std::invalid_argument(
        "savitzky_golay: series shorter than the filter frame");

  const std::vector<double> c = sg_coefficients(cfg);
  const long h = cfg.frame_len / 2;
  std::vector<double> out(series.size());
  for (long i = 0; i < static_cast<long>(series.size()); ++i) {
    double acc = 0.0;
    for (long j = -h; j <= h; ++j)
      acc += c[static_cast<std::size_t>(j + h)] * sym_at(series, i + j);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> differentiate(const std::vector<double>& series,
                                  double dt_s) {
  if (series.size() < 2)
    throw std::invalid_argument("differentiate: need at least 2 samples");
  if (dt_s <= 0) throw std::invalid_argument("differentiate: dt must be positive");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i + 1 < series.size(); ++i)
    out[i] = (series[i + 1] - series[i]) / dt_s;
  out[series.size() - 1] = out[series.size() - 2];
  return out;
}

KinematicProfiles compute_profiles(const std::vector<double>& smooth_x,
                                   const std::vector<double>& smooth_y,
                                   const std::vector<double>& smooth_theta_x,
                                   const std::vector<double>& smooth_theta_y,
                                   double dt_s) {
  const std::size_t n = smooth_x.size();
  if (smooth_y.size() != n || smooth_theta_x.size() != n ||
      smooth_theta_y.size() != n)
    throw std::invalid_argument("compute_profiles: series lengths differ");

  KinematicProfiles p;
  p.pos_x = smooth_x;
  p.pos_y = smooth_y;
  p.vel_x = differentiate(smooth_x, dt_s);
  p.vel_y = differentiate(smooth_y, dt_s);
  p.acc_x = differentiate(p.vel_x, dt_s);
  p.acc_y = differentiate(p.vel_y, dt_s);

  std::vector<double> wx = differentiate(smooth_theta_x, dt_s);
  std::vector<double> wy = differentiate(smooth_theta_y, dt_s);
  p.ang_vel.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.ang_vel[i] = std::hypot(wx[i], wy[i]) * kDegPerRad;
  p.ang_acc = differentiate(p.ang_vel, dt_s);
  return p;
}

}  // namespace gazeid
