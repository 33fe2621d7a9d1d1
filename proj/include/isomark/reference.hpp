#pragma once

#include <span>
#include <vector>

#include "isomark/circle.hpp"
#include "isomark/frame.hpp"

namespace isomark {

/// Outcome of the per-pixel segment test.
struct SegmentTestResult {
    bool marker = false;      // p_m
    bool sun = false;         // p_s
    int sun_count = 0;        // c_s, boundary points within diff threshold
    int boundary_size = 0;    // |N_b| of the last radius actually tested
    int matched_radius = 0;   // radius at which the marker test passed (0 if none)
};

inline constexpr int kReferenceRadii[] = {3, 4};

/// Segment test over the given radii in order; an early marker success at a
/// smaller radius skips the larger ones. A boundary point outside the image
/// rules the marker verdict out.
SegmentTestResult reference_segment_test(const Frame& frame, int r, int c,
                                         const Thresholds& thresholds,
                                         std::span<const int> radii = kReferenceRadii);

/// Brightest unvisited pixel in the lower half of the interior around (r,c);
/// marks the scanned pixels visited. Returns (r,c) when nothing beats the
/// initial zero-intensity candidate.
std::pair<int, int> reference_peak_search(const Frame& frame,
                                          std::vector<bool>& visited,
                                          int r, int c, int radius);

/// The unoptimised baseline detector. Intentionally preserves the naive
/// structure (auxiliary visited array, per-pixel bounds checks); it serves
/// as the behavioural oracle for the optimised engines.
DetectionSet reference_detect(const Frame& frame, const DetectorConfig& cfg,
                              std::span<const int> radii = kReferenceRadii);

}  // namespace isomark
