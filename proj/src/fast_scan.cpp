#include "isomark/fast_scan.hpp"

#include <cstring>

#include "isomark/circle.hpp"

namespace isomark {

namespace {

// Hot path of the scan: advance until the look-ahead hits the termination
// pair or the central pixel exceeds the gate. Kept out of line so the
// three-instruction loop gets its own register allocation instead of
// inheriting the spills of the surrounding detection logic (~2x faster).
[[gnu::noinline]] std::size_t skip_to_candidate(const std::uint8_t* p,
                                                std::size_t i, std::size_t look,
                                                std::uint16_t sentinel, int gate) {
    for (;; ++i) {
        std::uint16_t window;
        std::memcpy(&window, p + i + look, 2);
        if (window == sentinel) return i;
        if (p[i] > gate) return i;
    }
}

}  // namespace

DetectionSet fast_scan_detect(const Frame& frame, const DetectorConfig& cfg) {
    cfg.validate();
    const int width = frame.width;
    const int rho = cfg.radius;
    if (width <= 2 * rho + 2 || frame.height <= 2 * rho + 2)
        throw std::invalid_argument("frame too small for the fast scan");

    const auto geom = NeighbourhoodOffsets::make(rho, width);
    const int centre_offset = geom.central_offset;  // O_c
    const auto& boundary = geom.boundary_offsets;
    const auto& interior = geom.interior_offsets;
    const int t_marker = cfg.thresholds.marker;
    const int t_sun = cfg.thresholds.sun;
    const int t_diff = cfg.thresholds.diff;

    std::vector<std::uint8_t> pixels = frame.pixels;  // private working copy
    const std::size_t total = pixels.size();
    pixels[total - 2] = kTerminationSequence[0];
    pixels[total - 1] = kTerminationSequence[1];

    std::vector<std::size_t> markers;
    std::vector<std::size_t> sun_points;
    markers.reserve(cfg.max_markers);
    sun_points.reserve(cfg.max_sun_points);
    bool truncated = false;

    // Early exit at a count limit: plant the termination pair where the next
    // iteration's look-ahead test will find it. Near the tail the genuine
    // end-of-frame sentinel is already in reach, so the write is skipped.
    auto write_termination = [&](std::size_t i) {
        if (i + centre_offset + 2 < total) {
            pixels[i + centre_offset + 1] = kTerminationSequence[0];
            pixels[i + centre_offset + 2] = kTerminationSequence[1];
        }
        truncated = true;
    };

    // The two sentinel bytes are tested as one 16-bit word: a single
    // comparison per pixel, and the branch stays predictable on noisy data
    // (a lone 0x00 never triggers it).
    std::uint16_t sentinel;
    std::memcpy(&sentinel, kTerminationSequence, 2);
    std::uint8_t* const p = pixels.data();

    for (std::size_t i = centre_offset;; ++i) {
        i = skip_to_candidate(p, i, centre_offset, sentinel, t_marker);
        std::uint16_t window;
        std::memcpy(&window, p + i + centre_offset, 2);
        if (window == sentinel) break;
        const int centre = p[i];

        if (centre - p[i + boundary[0]] > t_diff) {
            // MARKER TEST: the remaining boundary must stay dark.
            bool is_marker = true;
            for (std::size_t k = 1; k < boundary.size(); ++k) {
                if (centre - p[i + boundary[k]] < t_diff) {
                    is_marker = false;
                    break;
                }
            }
            if (!is_marker) continue;
            int peak = 0;
            std::size_t peak_addr = i;
            for (const int off : interior) {
                const std::size_t addr = i + off;
                if (p[addr] > peak) {
                    peak = p[addr];
                    peak_addr = addr;
                }
                p[addr] = 0;  // clear the interior
            }
            if (static_cast<int>(markers.size()) < cfg.max_markers) {
                markers.push_back(peak_addr);
                if (static_cast<int>(markers.size()) == cfg.max_markers)
                    write_termination(i);
            }
        } else if (centre > t_sun) {
            // SUN TEST: the whole boundary must be similarly bright.
            if (static_cast<int>(sun_points.size()) == cfg.max_sun_points) {
                write_termination(i);
                continue;
            }
            bool is_sun = true;
            for (std::size_t k = 1; k < boundary.size(); ++k) {
                if (centre - p[i + boundary[k]] > t_diff) {
                    is_sun = false;
                    break;
                }
            }
            if (!is_sun) continue;
            for (const int off : interior) p[i + off] = 0;
            sun_points.push_back(i);
        }
    }

    DetectionSet out;
    out.truncated = truncated;
    for (const std::size_t addr : markers)
        out.markers.push_back({DetectionKind::Marker, static_cast<int>(addr / width),
                               static_cast<int>(addr % width), rho});
    for (const std::size_t addr : sun_points)
        out.sun_points.push_back({DetectionKind::Sun, static_cast<int>(addr / width),
                                  static_cast<int>(addr % width), rho});
    return out;
}

}  // namespace isomark
