#pragma once

#include "isomark/frame.hpp"

namespace isomark {

/// Termination pixel sequence written at the tail of the working copy; the
/// scan loop needs no separate bound variable. Two oppositely saturated
/// bytes next to each other do not occur in real sensor data.
inline constexpr std::uint8_t kTerminationSequence[2] = {0x00, 0xFF};

/// Optimised single-pass scan over a private 1-D copy of the frame:
/// width-linearised neighbourhood offsets, a branch on the first boundary
/// pixel to pick the marker or sun path, interior clearing in the copy, and
/// sentinel-driven termination (also used for early exit at the count
/// limits). Neighbourhoods near the left/right border wrap into the
/// adjacent row, exactly as 1-D address arithmetic implies.
DetectionSet fast_scan_detect(const Frame& frame, const DetectorConfig& cfg);

}  // namespace isomark
