#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "isomark/frame.hpp"

namespace isomark {

/// Min and max intensity over a circle boundary.
struct BoundarySummary {
    std::uint8_t min_value = 255;
    std::uint8_t max_value = 0;
};

/// Boundary extrema around (r,c), or nullopt when the boundary leaves the
/// frame (the caller skips such pixels).
std::optional<BoundarySummary> summarize_boundary(const Frame& frame, int r,
                                                  int c, int radius);

/// Per-pixel engine: a pixel is a marker iff its intensity beats the
/// boundary maximum by the contrast threshold, a sun pixel iff it is bright
/// and within the threshold of the boundary minimum. No interior clearing
/// and no peak search; concentration happens downstream via clustering.
/// Runs the per-pixel tasks on `threads` worker threads (0 = hardware
/// concurrency). Output order is unspecified.
DetectionSet parallel_detect(const Frame& frame, const DetectorConfig& cfg,
                             unsigned threads = 0);

/// Same per-pixel program executed in an explicit task order (1-D pixel
/// indices); deterministic for a fixed order. Used to exercise schedule
/// dependence near the capacity limits.
DetectionSet parallel_detect_ordered(const Frame& frame, const DetectorConfig& cfg,
                                     std::span<const std::uint32_t> pixel_order);

/// Markers and sun points each sorted by (row, col) ascending.
DetectionSet sort_detections(DetectionSet set);

}  // namespace isomark
