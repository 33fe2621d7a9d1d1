#pragma once

#include <span>
#include <utility>
#include <vector>

#include "isomark/frame.hpp"

namespace isomark {

/// 8-connected component of passing pixels with its centre of mass.
struct Cluster {
    std::vector<std::pair<int, int>> members;  // (row, col), sorted
    long long row_sum = 0;
    long long col_sum = 0;
    double centroid_row = 0.0;
    double centroid_col = 0.0;
    int rounded_row = 0;  // round-half-down per axis
    int rounded_col = 0;
};

std::vector<Cluster> cluster_detections(std::span<const std::pair<int, int>> points);

/// Markers whose Euclidean distance to every sun point is >= min_distance;
/// order preserved. O(|markers| * |sun_points|).
std::vector<Detection> filter_markers_by_sun(std::span<const Detection> markers,
                                             std::span<const Detection> sun_points,
                                             double min_distance);

/// Cluster the marker and sun pixel sets separately and replace each cluster
/// by its rounded centroid. Used to concentrate the per-pixel engines'
/// unclustered output.
DetectionSet concentrate_detections(const DetectionSet& set);

}  // namespace isomark
