"""Score-level-fusion eye movement biometrics.

Thin wrapper over the C++ core: I-VT segmentation, fixation/saccade
feature extraction, per-subject Gaussian RBF networks with score fusion,
and biometric evaluation metrics.
"""

from ._gazeid import (
    AcquisitionGeometry,
    FusionModel,
    GazeRecording,
    Segment,
    SegmentKind,
    StimulusKind,
    SubjectProfile,
    archetype_profiles,
    build_segments,
    cohort_profiles,
    compute_eer,
    decimate_to_250,
    default_fixation_mask,
    default_saccade_mask,
    differentiate,
    extract_features,
    fixation_feature_names,
    generate_recording,
    ivt_classify,
    kmeans,
    one_to_one_match,
    saccade_feature_names,
    savitzky_golay,
    segment_recording,
    to_screen,
    train_fusion_model,
)

__all__ = [
    "AcquisitionGeometry",
    "FusionModel",
    "GazeRecording",
    "Segment",
    "SegmentKind",
    "StimulusKind",
    "SubjectProfile",
    "archetype_profiles",
    "build_segments",
    "cohort_profiles",
    "compute_eer",
    "decimate_to_250",
    "default_fixation_mask",
    "default_saccade_mask",
    "differentiate",
    "extract_features",
    "fixation_feature_names",
    "generate_recording",
    "ivt_classify",
    "kmeans",
    "one_to_one_match",
    "saccade_feature_names",
    "savitzky_golay",
    "segment_recording",
    "to_screen",
    "train_fusion_model",
]
