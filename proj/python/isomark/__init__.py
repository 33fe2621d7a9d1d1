"""Detection toolkit for isolated bright markers and saturated sun points."""

from _isomark import (  # noqa: F401
    CostModel,
    Detection,
    DetectionKind,
    DetectionSet,
    DetectorConfig,
    DegenerateFitError,
    Frame,
    FrameFormat,
    IoError,
    SynthBlob,
    SynthSpec,
    SynthSun,
    Thresholds,
    circle_boundary,
    circle_interior,
    cluster_points,
    concentrate_detections,
    fast_scan_detect,
    filter_markers_by_sun,
    fit_time_model,
    load_frame,
    parallel_detect,
    random_scene,
    reference_detect,
    streaming_detect,
    synthesize_frame,
    uncovered_fraction,
    write_frame,
)

__all__ = [name for name in dir() if not name.startswith("_")]
