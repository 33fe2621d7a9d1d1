#include "isomark/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "isomark/circle.hpp"

namespace isomark {

std::optional<BoundarySummary> summarize_boundary(const Frame& frame, int r,
                                                  int c, int radius) {
    BoundarySummary summary;
    CircleFsm fsm(radius);
    while (auto p = fsm.next()) {
        const int rr = r + p->y, cc = c + p->x;
        if (!frame.in_bounds(rr, cc)) return std::nullopt;
        const std::uint8_t v = frame.at(rr, cc);
        if (v > summary.max_value) summary.max_value = v;
        if (v < summary.min_value) summary.min_value = v;
    }
    return summary;
}

namespace {

struct Accumulator {
    std::vector<Detection> markers;
    std::vector<Detection> sun_points;
    std::atomic<int> marker_count{0};
    std::atomic<int> sun_count{0};
    int marker_cap;
    int sun_cap;

    explicit Accumulator(const DetectorConfig& cfg)
        : markers(cfg.max_markers), sun_points(cfg.max_sun_points),
          marker_cap(cfg.max_markers), sun_cap(cfg.max_sun_points) {}

    bool saturated() const {
        return marker_count.load(std::memory_order_relaxed) >= marker_cap ||
               sun_count.load(std::memory_order_relaxed) >= sun_cap;
    }

    void append_marker(const Detection& d) {
        const int idx = marker_count.fetch_add(1, std::memory_order_relaxed);
        if (idx < marker_cap) markers[idx] = d;
    }
    void append_sun(const Detection& d) {
        const int idx = sun_count.fetch_add(1, std::memory_order_relaxed);
        if (idx < sun_cap) sun_points[idx] = d;
    }

    DetectionSet finish() {
        DetectionSet out;
        const int cm = std::min(marker_count.load(), marker_cap);
        const int cs = std::min(sun_count.load(), sun_cap);
        out.markers.assign(markers.begin(), markers.begin() + cm);
        out.sun_points.assign(sun_points.begin(), sun_points.begin() + cs);
        out.truncated = marker_count.load() >= marker_cap || sun_count.load() >= sun_cap;
        return out;
    }
};

// The per-pixel program. Free of sequential dependencies on other pixels.
inline void process_pixel(const Frame& frame, const DetectorConfig& cfg, int r,
                          int c, Accumulator& acc) {
    if (acc.saturated()) return;
    const int centre = frame.at(r, c);
    if (centre <= cfg.thresholds.marker) return;
    const auto summary = summarize_boundary(frame, r, c, cfg.radius);
    if (!summary) return;  // boundary exits the frame
    if (centre - summary->max_value >= cfg.thresholds.diff) {
        acc.append_marker({DetectionKind::Marker, r, c, cfg.radius});
    } else if (centre > cfg.thresholds.sun &&
               centre - summary->min_value < cfg.thresholds.diff) {
        acc.append_sun({DetectionKind::Sun, r, c, cfg.radius});
    }
}

}  // namespace

DetectionSet parallel_detect(const Frame& frame, const DetectorConfig& cfg,
                             unsigned threads) {
    cfg.validate();
    const int side = 2 * cfg.radius + 1;
    if (frame.width < side || frame.height < side)
        throw std::invalid_argument("frame too small for the detection radius");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(frame.height));

    Accumulator acc(cfg);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int rows_per_chunk = (frame.height + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const int row_begin = static_cast<int>(t) * rows_per_chunk;
        const int row_end = std::min(frame.height, row_begin + rows_per_chunk);
        if (row_begin >= row_end) break;
        pool.emplace_back([&, row_begin, row_end] {
            for (int r = row_begin; r < row_end; ++r)
                for (int c = 0; c < frame.width; ++c)
                    process_pixel(frame, cfg, r, c, acc);
        });
    }
    for (auto& worker : pool) worker.join();
    return acc.finish();
}

DetectionSet parallel_detect_ordered(const Frame& frame, const DetectorConfig& cfg,
                                     std::span<const std::uint32_t> pixel_order) {
    cfg.validate();
    Accumulator acc(cfg);
    for (const std::uint32_t idx : pixel_order) {
        if (idx >= frame.pixel_count())
            throw std::invalid_argument("pixel index outside the frame");
        process_pixel(frame, cfg, static_cast<int>(idx) / frame.width,
                      static_cast<int>(idx) % frame.width, acc);
    }
    return acc.finish();
}

DetectionSet sort_detections(DetectionSet set) {
    auto key = [](const Detection& d) { return std::tuple(d.row, d.col, d.radius); };
    std::stable_sort(set.markers.begin(), set.markers.end(),
                     [&](const Detection& a, const Detection& b) { return key(a) < key(b); });
    std::stable_sort(set.sun_points.begin(), set.sun_points.end(),
                     [&](const Detection& a, const Detection& b) { return key(a) < key(b); });
    return set;
}

}  // namespace isomark
