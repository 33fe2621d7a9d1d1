#include "isomark/reference.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace isomark {

namespace {

struct CircleGeom {
    std::vector<CirclePoint> boundary;        // evaluation order
    std::vector<CirclePoint> interior_lower;  // lower half, scan order
};

// Neighbourhood sets are constants of the algorithm; cache them per radius.
const CircleGeom& circle_geom(int radius) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CircleGeom>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[radius];
    if (!slot) {
        slot = std::make_unique<CircleGeom>();
        slot->boundary = boundary_points(radius);
        slot->interior_lower = lower_half(interior_points(radius));
    }
    return *slot;
}

}  // namespace

SegmentTestResult reference_segment_test(const Frame& frame, int r, int c,
                                         const Thresholds& thresholds,
                                         std::span<const int> radii) {
    if (!frame.in_bounds(r, c))
        throw std::invalid_argument("segment test pixel outside the frame");
    const int centre = frame.at(r, c);

    SegmentTestResult result;
    result.sun = centre > thresholds.sun;
    for (int radius : radii) {
        const auto& geom = circle_geom(radius);
        result.sun_count = 0;
        result.boundary_size = static_cast<int>(geom.boundary.size());
        result.marker = true;
        for (const auto& p : geom.boundary) {
            const int rr = r + p.y, cc = c + p.x;
            if (!frame.in_bounds(rr, cc)) {
                result.marker = false;  // the point must lie inside the image
                break;
            }
            if (centre - frame.at(rr, cc) < thresholds.diff) {
                result.marker = false;
                if (!result.sun) break;
                ++result.sun_count;
            } else {
                result.sun = false;
            }
        }
        if (result.marker) {
            result.matched_radius = radius;
            break;
        }
    }
    return result;
}

std::pair<int, int> reference_peak_search(const Frame& frame,
                                          std::vector<bool>& visited,
                                          int r, int c, int radius) {
    const auto& geom = circle_geom(radius);
    int peak_r = r, peak_c = c;
    int peak_value = 0;
    for (const auto& p : geom.interior_lower) {
        const int rr = r + p.y, cc = c + p.x;
        if (!frame.in_bounds(rr, cc)) break;
        const std::size_t idx = static_cast<std::size_t>(rr) * frame.width + cc;
        if (!visited[idx]) {
            if (frame.at(rr, cc) > peak_value) {
                peak_value = frame.at(rr, cc);
                peak_r = rr;
                peak_c = cc;
            }
            visited[idx] = true;
        }
    }
    return {peak_r, peak_c};
}

DetectionSet reference_detect(const Frame& frame, const DetectorConfig& cfg,
                              std::span<const int> radii) {
    cfg.validate();
    if (radii.empty()) throw std::invalid_argument("radii list must be non-empty");
    int max_radius = 1;
    for (int radius : radii) max_radius = std::max(max_radius, radius);
    if (frame.width < 2 * max_radius + 1 || frame.height < 2 * max_radius + 1)
        throw std::invalid_argument("frame too small for the detection radius");

    DetectionSet out;
    std::vector<bool> visited(frame.pixel_count(), false);
    for (int r = 0; r < frame.height; ++r) {
        for (int c = 0; c < frame.width; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * frame.width + c;
            if (visited[idx]) continue;
            if (frame.at(r, c) <= cfg.thresholds.marker) continue;
            const auto test = reference_segment_test(frame, r, c, cfg.thresholds, radii);
            if (test.marker) {
                if (static_cast<int>(out.markers.size()) >= cfg.max_markers) {
                    out.truncated = true;
                    continue;
                }
                const auto [pr, pc] =
                    reference_peak_search(frame, visited, r, c, max_radius);
                out.markers.push_back(
                    {DetectionKind::Marker, pr, pc, test.matched_radius});
            } else if (test.sun && test.sun_count == test.boundary_size) {
                if (static_cast<int>(out.sun_points.size()) >= cfg.max_sun_points) {
                    out.truncated = true;
                    continue;
                }
                out.sun_points.push_back({DetectionKind::Sun, r, c, radii.back()});
            }
        }
    }
    return out;
}

}  // namespace isomark
