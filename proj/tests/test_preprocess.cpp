#include <cmath>
#include <random>

#include "doctest.h"
#include "gazeid/preprocess.hpp"
#include "gazeid/rng.hpp"
#include "oracles.hpp"

using namespace gazeid;

namespace {

std::vector<double> random_series(std::mt19937_64& gen, std::size_t n,
                                  double lo = -5.0, double hi = 5.0) {
  std::vector<double> s(n);
  for (double& v : s) v = rng::uniform(gen, lo, hi);
  return s;
}

double poly6(double x) {
  return 0.3 - 1.2 * x + 0.5 * x * x - 0.01 * x * x * x +
         2e-4 * x * x * x * x - 3e-6 * x * x * x * x * x +
         1e-8 * x * x * x * x * x * x;
}

}  // namespace

TEST_CASE("savitzky_golay reproduces degree-6 polynomials away from edges") {
  SmoothingConfig cfg;
  std::vector<double> series(120);
  for (std::size_t i = 0; i < series.size(); ++i)
    series[i] = poly6(static_cast<double>(i));
  const std::vector<double> out = savitzky_golay(series, cfg);
  const std::size_t h = static_cast<std::size_t>(cfg.frame_len / 2);
  for (std::size_t i = h; i + h < series.size(); ++i)
    CHECK(out[i] == doctest::Approx(series[i]).epsilon(0).scale(1e9 * 1e-9));
  for (std::size_t i = h; i + h < series.size(); ++i)
    CHECK(std::abs(out[i] - series[i]) < 1e-9 * std::max(1.0, std::abs(series[i])));
}

TEST_CASE("savitzky_golay preserves constants everywhere") {
  SmoothingConfig cfg;
  std::vector<double> series(40, 3.25);
  for (double v : savitzky_golay(series, cfg))
    CHECK(v == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("savitzky_golay matches the per-window least-squares oracle") {
  SmoothingConfig cfg;
  std::mt19937_64 gen(11);
  const std::vector<double> series = random_series(gen, 31);
  const std::vector<double> got = savitzky_golay(series, cfg);
  const std::vector<double> want =
      oracles::savgol_bruteforce(series, cfg.poly_order, cfg.frame_len);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(std::abs(got[i] - want[i]) < 1e-9);
}

TEST_CASE("savitzky_golay is linear in its input") {
  SmoothingConfig cfg;
  std::mt19937_64 gen(12);
  const std::vector<double> a = random_series(gen, 60);
  const std::vector<double> b = random_series(gen, 60);
  std::vector<double> combo(60);
  for (std::size_t i = 0; i < 60; ++i) combo[i] = 2.0 * a[i] - 0.7 * b[i];
  const std::vector<double> fa = savitzky_golay(a, cfg);
  const std::vector<double> fb = savitzky_golay(b, cfg);
  const std::vector<double> fc = savitzky_golay(combo, cfg);
  for (std::size_t i = 0; i < 60; ++i)
    CHECK(std::abs(fc[i] - (2.0 * fa[i] - 0.7 * fb[i])) < 1e-9);
}

TEST_CASE("savitzky_golay rejects short series and bad configs") {
  SmoothingConfig cfg;
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(10, 0.0), cfg),
                  std::invalid_argument);
  SmoothingConfig even;
  even.frame_len = 14;
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(30, 0.0), even),
                  std::invalid_argument);
  SmoothingConfig tight;
  tight.poly_order = 7;
  tight.frame_len = 7;
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(30, 0.0), tight),
                  std::invalid_argument);
}

TEST_CASE("differentiate: slope, constant, and the worked 3-point example") {
  const std::vector<double> ramp = {0, 3, 6, 9, 12};
  const std::vector<double> v = differentiate(ramp, 0.004);
  for (double x : v) CHECK(x == doctest::Approx(750.0));

  const std::vector<double> flat(8, 1.5);
  for (double x : differentiate(flat, 0.01)) CHECK(x == 0.0);

  const std::vector<double> out = differentiate({0, 1, 3}, 1.0);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 2.0);
  CHECK(out[2] == 2.0);

  CHECK_THROWS_AS(differentiate({1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(differentiate({1.0, 2.0}, 0.0), std::invalid_argument);
}

TEST_CASE("compute_profiles: stationary and single-axis motion") {
  const std::size_t n = 50;
  std::vector<double> zeros(n, 0.0), pos(n, 100.0);
  KinematicProfiles still = compute_profiles(pos, pos, zeros, zeros, 0.004);
  for (double v : still.ang_vel) CHECK(v == 0.0);
  for (double v : still.ang_acc) CHECK(v == 0.0);

  // d(theta_x)/dt = 50 deg/s, theta_y constant.
  std::vector<double> theta_x(n);
  for (std::size_t i = 0; i < n; ++i)
    theta_x[i] = 50.0 * kRadPerDeg * 0.004 * static_cast<double>(i);
  KinematicProfiles mov = compute_profiles(pos, pos, theta_x, zeros, 0.004);
  for (double v : mov.ang_vel) CHECK(v == doctest::Approx(50.0).epsilon(1e-9));
}

TEST_CASE("compute_profiles: circular gaze motion has constant speed") {
  const double dt = 0.004;
  const double omega = 2.0 * kPi * 0.8;  // rad/s of the phase
  const double radius = 2.0 * kRadPerDeg;
  const std::size_t n = 400;
  std::vector<double> tx(n), ty(n), px(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    tx[i] = radius * std::cos(omega * t);
    ty[i] = radius * std::sin(omega * t);
  }
  const KinematicProfiles p = compute_profiles(px, px, tx, ty, dt);
  // Analytic angular speed of the parametrization.
  const double expected = radius * omega * kDegPerRad;
  for (std::size_t i = 0; i + 1 < n; ++i)
    CHECK(std::abs(p.ang_vel[i] - expected) / expected < 0.02);
}

TEST_CASE("ang_vel is symmetric under swapping the angle components") {
  std::mt19937_64 gen(21);
  const std::size_t n = 64;
  const std::vector<double> a = random_series(gen, n, -0.1, 0.1);
  const std::vector<double> b = random_series(gen, n, -0.1, 0.1);
  const std::vector<double> px(n, 0.0);
  const KinematicProfiles ab = compute_profiles(px, px, a, b, 0.004);
  const KinematicProfiles ba = compute_profiles(px, px, b, a, 0.004);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(ab.ang_vel[i] == doctest::Approx(ba.ang_vel[i]).epsilon(1e-12));
}

TEST_CASE("smooth-then-differentiate matches analytic derivatives") {
  SmoothingConfig cfg;
  const double dt = 0.004;
  const std::size_t n = 150;
  std::vector<double> series(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    series[i] = 1.0 + 0.5 * x + 0.02 * x * x - 1e-4 * x * x * x;
  }
  const std::vector<double> smooth = savitzky_golay(series, cfg);
  const std::vector<double> deriv = differentiate(smooth, dt);
  const std::size_t margin = static_cast<std::size_t>(cfg.frame_len);
  for (std::size_t i = margin; i + margin < n; ++i) {
    const double x = static_cast<double>(i);
    // Forward difference of the exact polynomial at step 1 sample.
    const double x2 = x + 1.0;
    const double exact =
        ((1.0 + 0.5 * x2 + 0.02 * x2 * x2 - 1e-4 * x2 * x2 * x2) -
         series[i]) / dt;
    CHECK(std::abs(deriv[i] - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
  }
}
