"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import isomark as m


def make_scene(width=160, height=120, seed=7, noise=4):
    spec = m.random_scene(width, height, 8, seed, 3, noise)
    return m.synthesize_frame(width, height, spec)


def test_synth_detect_round_trip(tmp_path):
    frame = make_scene()
    path = tmp_path / "scene.pgm"
    m.write_frame(frame, str(path), m.FrameFormat.PGM)
    loaded = m.load_frame(str(path), m.FrameFormat.PGM)
    assert loaded.width == frame.width
    assert loaded.height == frame.height
    assert loaded.tobytes() == frame.tobytes()

    out = m.reference_detect(loaded)
    assert len(out.markers) > 0
    for d in out.markers:
        assert d.kind == m.DetectionKind.MARKER
        assert 0 <= d.row < frame.height
        assert 0 <= d.col < frame.width


def test_engines_agree_on_marker_positions():
    frame = make_scene(seed=11)
    ref = m.reference_detect(frame)
    fast = m.fast_scan_detect(frame)
    ref_pos = sorted((d.row, d.col) for d in ref.markers)
    fast_pos = sorted((d.row, d.col) for d in fast.markers)
    assert ref_pos == fast_pos

    cfg = m.DetectorConfig()
    cfg.max_markers = 1000
    par = m.concentrate_detections(m.parallel_detect(frame, cfg))
    stream = m.concentrate_detections(m.streaming_detect(frame, cfg))
    par_pos = sorted((d.row, d.col) for d in par.markers)
    stream_pos = sorted((d.row, d.col) for d in stream.markers)
    assert par_pos == stream_pos
    assert len(par_pos) == len(ref_pos)
    # Concentrated centroids stay within the test radius of the peaks.
    for (pr, pc), (rr, rc) in zip(par_pos, ref_pos):
        assert max(abs(pr - rr), abs(pc - rc)) <= 3


def test_frame_pixel_access():
    frame = m.Frame(16, 12)
    frame.set(5, 7, 200)
    assert frame.at(5, 7) == 200
    with pytest.raises(IndexError):
        frame.at(12, 0)
    round_trip = m.Frame.frombytes(16, 12, frame.tobytes())
    assert round_trip.at(5, 7) == 200


def test_geometry_helpers():
    assert len(m.circle_boundary(3)) == 16
    assert len(m.circle_interior(3)) == 21
    assert m.uncovered_fraction(1) == 0.0
    assert 0.09 < m.uncovered_fraction(100) < 0.12


def test_fit_time_model():
    t_none, t_det = 2.5e-9, 8e-7
    pixels = 360960
    rows = [(pixels * t_none + n * (t_det - t_none), n, pixels)
            for n in (0, 3, 7, 12, 19, 26)]
    model = m.fit_time_model(rows)
    assert math.isclose(model.t_none, t_none, rel_tol=1e-9)
    assert math.isclose(model.t_det, t_det, rel_tol=1e-9)
    with pytest.raises(m.DegenerateFitError):
        m.fit_time_model([(1e-3, 5, pixels)] * 4)


def test_clustering_and_sun_filter():
    assert m.cluster_points([(5, 5), (5, 6), (6, 5), (20, 20)]) == [(5, 5), (20, 20)]

    spec = m.SynthSpec()
    spec.sun_disc = m.SynthSun(45, 45, 5, 255)
    spec.blobs = [m.SynthBlob(45, 94, 230, 1.1), m.SynthBlob(96, 45, 230, 1.1)]
    frame = m.synthesize_frame(140, 140, spec)
    cfg = m.DetectorConfig()
    cfg.max_markers = cfg.max_sun_points = 1000
    out = m.concentrate_detections(m.parallel_detect(frame, cfg))
    assert len(out.markers) == 2
    assert len(out.sun_points) == 1
    # The blob 49 px from the sun centre falls inside the 50 px cut-off.
    kept = m.filter_markers_by_sun(out.markers, out.sun_points, 50.0)
    assert [(d.row, d.col) for d in kept] == [(96, 45)]
