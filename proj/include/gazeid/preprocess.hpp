#pragma once

#include <vector>

#include "gazeid/types.hpp"

namespace gazeid {

struct SmoothingConfig {
  int poly_order = 6;
  int frame_len = 15;

  void validate() const;  // frame_len odd and > poly_order, both positive
};

/// Savitzky-Golay smoothing: each output point is the center value of the
/// least-squares polynomial of degree poly_order fitted to the surrounding
/// frame_len points. Edges use symmetric padding (edge sample mirrored, as
/// in numpy's 'symmetric' mode). Series shorter than frame_len raise
/// std::invalid_argument.
std::vector<double> savitzky_golay(const std::vector<double>& series,
                                   const SmoothingConfig& cfg);

/// Forward difference: out[i] = (s[i+1]-s[i])/dt, last value replicated so
/// the output length matches the input.
std::vector<double> differentiate(const std::vector<double>& series,
                                  double dt_s);

/// Position, velocity and acceleration series for one recording. Screen
/// series are px-based, angular series deg-based; all share the trace length.
struct KinematicProfiles {
  std::vector<double> pos_x, pos_y;    // smoothed screen px
  std::vector<double> vel_x, vel_y;    // px/s
  std::vector<double> acc_x, acc_y;    // px/s^2
  std::vector<double> ang_vel;         // deg/s, magnitude
  std::vector<double> ang_acc;         // deg/s^2

  std::size_t size() const { return pos_x.size(); }
};

/// Differentiates smoothed screen positions and smoothed visual angles.
/// `smooth_theta_x/y` are radian series; angular velocity is the Euclidean
/// norm of the component angular velocities, reported in deg/s.
KinematicProfiles compute_profiles(const std::vector<double>& smooth_x,
                                   const std::vector<double>& smooth_y,
                                   const std::vector<double>& smooth_theta_x,
                                   const std::vector<double>& smooth_theta_y,
                                   double dt_s);

}  // namespace gazeid
