#include "isomark/streaming.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace isomark {

StreamingUnit::StreamingUnit(int radius, int width, Thresholds thresholds)
    : radius_(radius), width_(width), window_(2 * radius + 1),
      thresholds_(thresholds), boundary_(fsm_boundary(radius)),
      rows_(static_cast<std::size_t>(window_) * width, 0),
      central_(window_, 0), boundary_min_(window_, 255), boundary_max_(window_, 0) {
    if (radius < 1) throw std::domain_error("radius must be >= 1");
    if (width < 2 * window_) throw std::invalid_argument("row width too small");
    thresholds.validate();
}

std::optional<Emission> StreamingUnit::push_pixel(int r, int c, std::uint8_t value) {
    const std::uint64_t expected = tick_;
    if (static_cast<std::uint64_t>(r) * width_ + c != expected)
        throw std::logic_error("pixel pushed out of row-major order");

    const int slot_row = r % window_;
    rows_[static_cast<std::size_t>(slot_row) * width_ + c] = value;

    // Central value for the segment column this pixel completes (rho rows up).
    if (r >= radius_) {
        const int centre_row_slot = (r - radius_) % window_;
        central_[c % window_] = rows_[static_cast<std::size_t>(centre_row_slot) * width_ + c];
    }

    // Column c carries one boundary pixel of every overlapping segment whose
    // centre column is c - x; fold those contributions into the extrema slots.
    for (const auto& p : boundary_) {
        const int row_idx = ((r - radius_ + p.y) % window_ + window_) % window_;
        const std::uint8_t v = rows_[static_cast<std::size_t>(row_idx) * width_ + c];
        const int col_slot = ((c - p.x) % window_ + window_) % window_;
        if (v > boundary_max_[col_slot]) boundary_max_[col_slot] = v;
        if (v < boundary_min_[col_slot]) boundary_min_[col_slot] = v;
    }

    std::optional<Emission> emission;
    if (r >= 2 * radius_ && c >= 2 * radius_) {
        const int centre_col = c - radius_;
        const int slot = centre_col % window_;
        const int centre = central_[slot];
        if (centre > thresholds_.marker) {
            if (centre - boundary_max_[slot] >= thresholds_.diff) {
                emission = Emission{{DetectionKind::Marker, r - radius_, centre_col, radius_},
                                    expected};
            } else if (centre > thresholds_.sun &&
                       centre - boundary_min_[slot] < thresholds_.diff) {
                emission = Emission{{DetectionKind::Sun, r - radius_, centre_col, radius_},
                                    expected};
            }
        }
        boundary_min_[slot] = 255;
        boundary_max_[slot] = 0;
    }
    ++tick_;
    return emission;
}

StreamingResult streaming_run_frame(const Frame& frame, const DetectorConfig& cfg,
                                    std::span<const int> radii,
                                    double pixel_clock_hz) {
    cfg.validate();
    if (radii.empty()) throw std::invalid_argument("radii list must be non-empty");
    std::vector<StreamingUnit> units;
    units.reserve(radii.size());
    for (const int rho : radii) {
        if (frame.width < 2 * (2 * rho + 1) || frame.height < 2 * rho + 1)
            throw std::invalid_argument("frame too small for streaming radius");
        units.emplace_back(rho, frame.width, cfg.thresholds);
    }

    StreamingResult result;
    for (int r = 0; r < frame.height; ++r) {
        for (int c = 0; c < frame.width; ++c) {
            const std::uint8_t value = frame.at(r, c);
            for (auto& unit : units) {
                if (auto e = unit.push_pixel(r, c, value))
                    result.emissions.push_back(*e);
            }
        }
    }
    for (const auto& e : result.emissions) {
        if (e.detection.kind == DetectionKind::Marker)
            result.detections.markers.push_back(e.detection);
        else
            result.detections.sun_points.push_back(e.detection);
    }
    result.latency.pixel_clock_hz = pixel_clock_hz;
    result.latency.pixels_per_frame = frame.pixel_count();
    result.latency.frame_processing_seconds =
        static_cast<double>(frame.pixel_count()) / pixel_clock_hz;
    return result;
}

void write_emission_trace(std::ostream& out, std::span<const Emission> emissions,
                          double pixel_clock_hz) {
    for (const auto& e : emissions) {
        out << (e.detection.kind == DetectionKind::Marker ? "marker" : "sun") << ' '
            << e.detection.row << ' ' << e.detection.col << ' ' << e.detection.radius
            << ' ' << e.tick << ' ' << (static_cast<double>(e.tick) / pixel_clock_hz)
            << '\n';
    }
}

std::vector<Emission> read_emission_trace(std::istream& in) {
    std::vector<Emission> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        Emission e;
        double seconds = 0.0;
        if (!(ls >> kind >> e.detection.row >> e.detection.col >> e.detection.radius >>
              e.tick >> seconds))
            throw IoError("malformed emission trace line: " + line);
        if (kind == "marker") e.detection.kind = DetectionKind::Marker;
        else if (kind == "sun") e.detection.kind = DetectionKind::Sun;
        else throw IoError("unknown emission kind: " + kind);
        out.push_back(e);
    }
    return out;
}

}  // namespace isomark
