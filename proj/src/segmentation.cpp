#include "gazeid/segmentation.hpp"

#include <stdexcept>

namespace gazeid {

void IvtConfig::validate() const {
  if (velocity_threshold <= 0 || min_fixation_ms <= 0 || min_saccade_ms <= 0)
    throw std::invalid_argument("ivt: thresholds must be strictly positive");
}

std::vector<SegmentKind> ivt_classify(const std::vector<double>& ang_vel,
                                      const std::vector<double>& t_ms,
                                      const IvtConfig& cfg) {
  cfg.validate();
  if (ang_vel.empty()) throw std::invalid_argument("ivt_classify: empty input");
  if (ang_vel.size() != t_ms.size())
    throw std::invalid_argument("ivt_classify: series lengths differ");

  const std::size_t n = ang_vel.size();
  std::vector<SegmentKind> res(n, SegmentKind::Saccade);
  SegmentKind last_state = SegmentKind::Saccade;
  std::size_t fixation_start = 0;

  for (std::size_t index = 0; index < n; ++index) {
    SegmentKind current;
    if (ang_vel[index] < cfg.velocity_threshold) {
      current = SegmentKind::Fixation;
      if (last_state != current) fixation_start = index;
    } else {
      if (last_state == SegmentKind::Fixation) {
        const double duration = t_ms[index] - t_ms[fixation_start];
        if (duration < cfg.min_fixation_ms) {
          for (std::size_t i = fixation_start; i <= index; ++i)
            res[i] = SegmentKind::Saccade;
        }
      }
      current = SegmentKind::Saccade;
    }
    last_state = current;
    res[index] = current;
  }
  return res;
}

std::vector<Segment> build_segments(const std::vector<SegmentKind>& labels,
                                    const std::vector<double>& t_ms,
                                    const IvtConfig& cfg) {
  return build_segments(labels, t_ms,
                        std::vector<std::uint8_t>(labels.size(), 1), cfg);
}

std::vector<Segment> build_segments(const std::vector<SegmentKind>& labels,
                                    const std::vector<double>& t_ms,
                                    const std::vector<std::uint8_t>& valid,
                                    const IvtConfig& cfg) {
  cfg.validate();
  if (labels.empty()) throw std::invalid_argument("build_segments: empty input");
  if (labels.size() != t_ms.size() || labels.size() != valid.size())
    throw std::invalid_argument("build_segments: series lengths differ");

  const std::size_t n = labels.size();
  std::vector<Segment> segments;
  std::size_t i = 0;
  while (i < n) {
    if (!valid[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && valid[j + 1] && labels[j + 1] == labels[i]) ++j;
    Segment seg;
    seg.kind = labels[i];
    seg.start_index = i;
    seg.end_index = j;
    // Same convention as the classifier's duration check: span up to the
    // sample after the run; the final run closes at end-of-data.
    const std::size_t bound = j + 1 < n ? j + 1 : j;
    seg.duration_ms = t_ms[bound] - t_ms[i];
    if (!(seg.kind == SegmentKind::Saccade &&
          seg.duration_ms < cfg.min_saccade_ms))
      segments.push_back(seg);
    i = j + 1;
  }
  return segments;
}

}  // namespace gazeid
