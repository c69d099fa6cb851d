#include "gazeid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gazeid/rng.hpp"

namespace gazeid {

void SubjectProfile::validate() const {
  if (peak_velocity_gain <= 0)
    throw std::invalid_argument("profile: peak_velocity_gain must be positive");
  if (fixation_tremor_std_deg < 0)
    throw std::invalid_argument("profile: tremor std must be non-negative");
}

AcquisitionGeometry default_synth_geometry(double rate_hz) {
  AcquisitionGeometry g;
  g.head_distance_mm = 550.0;
  g.screen_width_mm = 474.0;
  g.screen_height_mm = 297.0;
  g.screen_width_px = 1680;
  g.screen_height_px = 1050;
  g.sample_rate_hz = rate_hz;
  return g;
}

namespace {

struct TremorWave {
  double freq_hz[3];
  double phase[3];
  double amplitude;  // per-component sinusoid amplitude, radians

  double at(double t_ms) const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
      v += std::sin(2.0 * kPi * freq_hz[i] * t_ms / 1000.0 + phase[i]);
    return amplitude * v;
  }
};

TremorWave make_tremor(std::mt19937_64& gen, double std_deg) {
  TremorWave w{};
  for (int i = 0; i < 3; ++i) {
    w.freq_hz[i] = rng::uniform(gen, 0.5, 4.0);
    w.phase[i] = rng::uniform(gen, 0.0, 2.0 * kPi);
  }
  // Three equal sinusoids: total std = amplitude * sqrt(3/2).
  w.amplitude = std_deg * kRadPerDeg * std::sqrt(2.0 / 3.0);
  return w;
}

// A gaze hold around a fixed target with slow tremor, ramped at both ends
// so the hand-off to the neighboring saccades stays below the velocity
// threshold.
struct FixationPhase {
  double start_ms, end_ms;
  double target_x, target_y;
  TremorWave tremor_x, tremor_y;

  void position(double t_ms, double* x, double* y) const {
    const double ramp_ms = 100.0;
    double env = 1.0;
    env = std::min(env, (t_ms - start_ms) / ramp_ms);
    env = std::min(env, (end_ms - t_ms) / ramp_ms);
    env = std::clamp(env, 0.0, 1.0);
    *x = target_x + env * tremor_x.at(t_ms);
    *y = target_y + env * tremor_y.at(t_ms);
  }
};

// Minimum-jerk reach with an optional time warp that skews the velocity
// profile: tau' = tau^gamma, gamma = 2^skew.
struct SaccadePhase {
  double start_ms, end_ms;
  double from_x, from_y, to_x, to_y;
  double gamma;

  void position(double t_ms, double* x, double* y) const {
    double tau = (t_ms - start_ms) / (end_ms - start_ms);
    tau = std::clamp(tau, 0.0, 1.0);
    const double u = std::pow(tau, gamma);
    const double s = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
    *x = from_x + (to_x - from_x) * s;
    *y = from_y + (to_y - from_y) * s;
  }
};

struct Phase {
  bool is_saccade;
  FixationPhase fix;
  SaccadePhase sacc;
  double start_ms() const { return is_saccade ? sacc.start_ms : fix.start_ms; }
  double end_ms() const { return is_saccade ? sacc.end_ms : fix.end_ms; }
};

struct Timeline {
  std::vector<Phase> phases;
  std::vector<SynthEvent> events;

  void add_fixation(std::mt19937_64& gen, const SubjectProfile& p,
                    double start_ms, double end_ms, double tx, double ty) {
    Phase ph;
    ph.is_saccade = false;
    ph.fix = {start_ms, end_ms, tx, ty,
              make_tremor(gen, p.fixation_tremor_std_deg),
              make_tremor(gen, p.fixation_tremor_std_deg)};
    phases.push_back(ph);
  }

  void add_saccade(const SubjectProfile& p, double start_ms, double end_ms,
                   double fx, double fy, double tx, double ty) {
    Phase ph;
    ph.is_saccade = true;
    ph.sacc = {start_ms, end_ms, fx, fy, tx, ty,
               std::pow(2.0, p.skew_tendency)};
    phases.push_back(ph);
    events.push_back({start_ms, end_ms, tx, ty});
  }
};

double saccade_duration_ms(const SubjectProfile& p, double amplitude_rad,
                           double min_ms) {
  const double amplitude_deg = amplitude_rad * kDegPerRad;
  // Symmetric minimum jerk peaks at 1.875 * amplitude / duration.
  double d = 1.875 * amplitude_deg / p.peak_velocity_gain * 1000.0 +
             p.saccade_duration_bias_ms;
  return std::clamp(d, min_ms, 400.0);
}

double angle_for_screen_fraction(double frac, double extent_mm,
                                 double distance_mm) {
  return std::atan((frac - 0.5) * extent_mm / distance_mm);
}

Timeline build_ran_timeline(const SubjectProfile& profile,
                            const AcquisitionGeometry& g, double duration_ms,
                            std::mt19937_64& gen) {
  Timeline tl;
  auto draw_target = [&](double* tx, double* ty, double prev_x,
                         double prev_y) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      *tx = angle_for_screen_fraction(rng::uniform(gen, 0.08, 0.92),
                                      g.screen_width_mm, g.head_distance_mm);
      *ty = angle_for_screen_fraction(rng::uniform(gen, 0.08, 0.92),
                                      g.screen_height_mm, g.head_distance_mm);
      const double jump = std::hypot(*tx - prev_x, *ty - prev_y);
      if (jump * kDegPerRad >= 3.0) return;  // avoid unclassifiable hops
    }
  };

  double cur_x = 0.0, cur_y = 0.0;
  draw_target(&cur_x, &cur_y, 10.0, 10.0);
  double fixation_from_ms = 0.0;

  for (double jump_ms = 1000.0; jump_ms < duration_ms + 1000.0;
       jump_ms += 1000.0) {
    double next_x = 0.0, next_y = 0.0;
    draw_target(&next_x, &next_y, cur_x, cur_y);
    const double latency_ms = rng::uniform(gen, 150.0, 220.0);
    const double start_ms = jump_ms + latency_ms;
    const double amp = std::hypot(next_x - cur_x, next_y - cur_y);
    const double end_ms = start_ms + saccade_duration_ms(profile, amp, 16.0);
    tl.add_fixation(gen, profile, fixation_from_ms, start_ms, cur_x, cur_y);
    tl.add_saccade(profile, start_ms, end_ms, cur_x, cur_y, next_x, next_y);
    cur_x = next_x;
    cur_y = next_y;
    fixation_from_ms = end_ms;
    if (fixation_from_ms >= duration_ms) break;
  }
  if (fixation_from_ms < duration_ms + 1000.0)
    tl.add_fixation(gen, profile, fixation_from_ms, duration_ms + 1000.0,
                    cur_x, cur_y);
  return tl;
}

Timeline build_tex_timeline(const SubjectProfile& profile,
                            const AcquisitionGeometry& g, double duration_ms,
                            std::mt19937_64& gen) {
  Timeline tl;
  const double amp_scale = std::clamp(
      0.7 + profile.peak_velocity_gain / 1000.0 + 0.15 * profile.skew_tendency,
      0.5, 1.6);
  const int n_lines = 8;
  auto line_y = [&](int line) {
    return angle_for_screen_fraction(0.15 + 0.7 * line / (n_lines - 1.0),
                                     g.screen_height_mm, g.head_distance_mm);
  };
  auto x_of_mm = [&](double mm) { return std::atan(mm / g.head_distance_mm); };
  const double line_left_mm = -0.42 * g.screen_width_mm;
  const double line_right_mm = 0.42 * g.screen_width_mm;

  int line = 0;
  double x_mm = line_left_mm;
  double cur_x = x_of_mm(x_mm), cur_y = line_y(0);
  double t_ms = 0.0;
  while (t_ms < duration_ms + 500.0) {
    const double hold_ms =
        rng::uniform(gen, 170.0, 260.0) *
        (1.0 + 0.1 * std::tanh(profile.skew_tendency));
    const double fix_end = t_ms + hold_ms;

    double next_x, next_y;
    x_mm += rng::uniform(gen, 18.0, 42.0) * amp_scale;
    if (x_mm > line_right_mm) {
      line = (line + 1) % n_lines;  // return sweep, wrap to re-read
      x_mm = line_left_mm;
    }
    next_x = x_of_mm(x_mm);
    next_y = line_y(line);

    const double amp = std::hypot(next_x - cur_x, next_y - cur_y);
    const double sacc_start = fix_end;
    const double sacc_end =
        sacc_start + saccade_duration_ms(profile, amp, 20.0);
    tl.add_fixation(gen, profile, t_ms, sacc_start, cur_x, cur_y);
    tl.add_saccade(profile, sacc_start, sacc_end, cur_x, cur_y, next_x,
                   next_y);
    cur_x = next_x;
    cur_y = next_y;
    t_ms = sacc_end;
  }
  tl.add_fixation(gen, profile, t_ms, t_ms + duration_ms, cur_x, cur_y);
  return tl;
}

}  // namespace

GazeRecording generate_recording(const SubjectProfile& profile,
                                 StimulusKind stimulus, double duration_s,
                                 double rate_hz,
                                 std::vector<SynthEvent>* schedule) {
  profile.validate();
  if (duration_s < 5.0)
    throw std::invalid_argument("generate_recording: duration must be >= 5 s");
  if (rate_hz != 250.0 && rate_hz != 1000.0)
    throw std::invalid_argument("generate_recording: rate must be 250 or 1000");

  const AcquisitionGeometry geometry = default_synth_geometry(rate_hz);
  const double duration_ms = duration_s * 1000.0;
  std::mt19937_64 gen(profile.seed);

  const Timeline tl = stimulus == StimulusKind::Ran
                          ? build_ran_timeline(profile, geometry, duration_ms, gen)
                          : build_tex_timeline(profile, geometry, duration_ms, gen);

  GazeRecording rec;
  rec.subject_id = "synthetic";
  rec.session_id = "1";
  rec.stimulus = stimulus;
  rec.geometry = geometry;

  const double dt_ms = 1000.0 / rate_hz;
  const auto n = static_cast<std::size_t>(duration_ms / dt_ms);
  rec.samples.reserve(n);
  std::size_t phase_at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt_ms;
    while (phase_at + 1 < tl.phases.size() &&
           t >= tl.phases[phase_at].end_ms())
      ++phase_at;
    const Phase& ph = tl.phases[phase_at];
    GazeSample s;
    s.t_ms = t;
    if (ph.is_saccade)
      ph.sacc.position(t, &s.theta_x, &s.theta_y);
    else
      ph.fix.position(t, &s.theta_x, &s.theta_y);
    // Stimulus channel: wherever the dot (or word) currently is.
    s.stim_x = ph.is_saccade ? ph.sacc.to_x : ph.fix.target_x;
    s.stim_y = ph.is_saccade ? ph.sacc.to_y : ph.fix.target_y;
    s.valid = true;
    rec.samples.push_back(s);
  }
  rec.validate();
  if (schedule != nullptr) *schedule = tl.events;
  return rec;
}

std::vector<SubjectProfile> cohort_profiles(int n_subjects,
                                            std::uint64_t seed) {
  if (n_subjects < 1) throw std::invalid_argument("cohort: need >= 1 subject");
  std::vector<SubjectProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(n_subjects));
  // Golden-ratio strides decorrelate the four axes so no two subjects are
  // close in every coordinate at once.
  auto frac = [](double x) { return x - std::floor(x); };
  for (int i = 0; i < n_subjects; ++i) {
    const double u1 = frac(0.5 + i * 0.6180339887498949);
    const double u2 = frac(0.25 + i * 0.7548776662466927);
    const double u3 = frac(0.75 + i * 0.5698402909980532);
    const double u4 = (n_subjects > 1)
                          ? static_cast<double>(i) / (n_subjects - 1)
                          : 0.5;
    SubjectProfile p;
    p.peak_velocity_gain = 160.0 + 480.0 * u4;
    p.fixation_tremor_std_deg = 0.03 + 0.27 * u1;
    p.saccade_duration_bias_ms = -4.0 + 22.0 * u2;
    p.skew_tendency = -0.9 + 1.8 * u3;
    p.seed = rng::derive_seed(seed, static_cast<std::uint64_t>(i), 0xC0804);
    profiles.push_back(p);
  }
  return profiles;
}

std::vector<SubjectProfile> archetype_profiles(int n_subjects,
                                               int n_archetypes,
                                               std::uint64_t seed) {
  if (n_archetypes < 1 || n_subjects < 1)
    throw std::invalid_argument("archetypes: counts must be positive");
  std::vector<SubjectProfile> base = cohort_profiles(n_archetypes, seed);
  // Spread the archetypes to the extremes of the parameter space.
  for (int a = 0; a < n_archetypes; ++a) {
    const double u = n_archetypes > 1
                         ? static_cast<double>(a) / (n_archetypes - 1)
                         : 0.5;
    base[static_cast<std::size_t>(a)].peak_velocity_gain = 150.0 + 500.0 * u;
    base[static_cast<std::size_t>(a)].fixation_tremor_std_deg =
        0.02 + 0.3 * (1.0 - u);
    base[static_cast<std::size_t>(a)].saccade_duration_bias_ms =
        -4.0 + 22.0 * u;
    base[static_cast<std::size_t>(a)].skew_tendency = -0.9 + 1.8 * u;
  }

  std::vector<SubjectProfile> profiles;
  std::mt19937_64 gen(rng::derive_seed(seed, 0xA2C4E, 0));
  for (int i = 0; i < n_subjects; ++i) {
    SubjectProfile p = base[static_cast<std::size_t>(i % n_archetypes)];
    // Nearly identical within an archetype: sub-percent jitter.
    p.peak_velocity_gain *= 1.0 + 0.004 * (rng::uniform01(gen) - 0.5);
    p.fixation_tremor_std_deg *= 1.0 + 0.004 * (rng::uniform01(gen) - 0.5);
    p.skew_tendency += 0.002 * (rng::uniform01(gen) - 0.5);
    p.seed = rng::derive_seed(seed, static_cast<std::uint64_t>(i), 0xA2C4F);
    profiles.push_back(p);
  }
  return profiles;
}

}  // namespace gazeid
