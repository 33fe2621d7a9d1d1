#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "isomark/circle.hpp"
#include "isomark/frame.hpp"

namespace isomark {

/// Nominal pixel clock of the sensor's parallel interface.
inline constexpr double kDefaultPixelClockHz = 26.67e6;
/// Measured frame-valid interval on the reference sensor, reported for
/// comparison only; the sensor's readout clocking differs from the nominal
/// pixel clock and the two are not reconciled here.
inline constexpr double kMeasuredVsyncSeconds = 9756.5e-6;

struct Emission {
    Detection detection;
    std::uint64_t tick = 0;  // 0-based index of the pixel whose arrival produced it
};

/// Tick-accurate model of one synchronous detection unit: consumes exactly
/// one pixel per tick in row-major order, keeps a ring buffer of 2*rho+1
/// rows plus per-column central/extrema slots, and emits detections with a
/// fixed pipeline delay of rho rows + rho columns. Bounded memory in the
/// frame height. Strictly single threaded.
class StreamingUnit {
  public:
    StreamingUnit(int radius, int width, Thresholds thresholds);

    /// Feed the next pixel. (r,c) must match the unit's tick counter.
    /// Returns the detection completed by this pixel, if any.
    std::optional<Emission> push_pixel(int r, int c, std::uint8_t value);

    std::uint64_t ticks() const { return tick_; }
    int radius() const { return radius_; }
    /// Intensity cells held by the unit: (2*rho+1)*W + 3*(2*rho+1).
    std::size_t buffered_cells() const {
        return rows_.size() + central_.size() + boundary_min_.size() + boundary_max_.size();
    }

  private:
    int radius_;
    int width_;
    int window_;  // 2*rho+1
    Thresholds thresholds_;
    std::vector<CirclePoint> boundary_;
    std::vector<std::uint8_t> rows_;          // ring buffer, window_ x width_
    std::vector<std::uint8_t> central_;       // P, one slot per window column
    std::vector<std::uint8_t> boundary_min_;  // B_min
    std::vector<std::uint8_t> boundary_max_;  // B_max
    std::uint64_t tick_ = 0;
};

struct LatencyReport {
    double pixel_clock_hz = kDefaultPixelClockHz;
    std::uint64_t pixels_per_frame = 0;
    /// Content-independent: pixels_per_frame / pixel_clock_hz.
    double frame_processing_seconds = 0.0;
    /// The measured frame-valid constant of the reference sensor, exposed
    /// for comparison, not used as a target.
    double reference_vsync_seconds = kMeasuredVsyncSeconds;
};

struct StreamingResult {
    DetectionSet detections;   // merged over all radii, tagged per radius
    std::vector<Emission> emissions;
    LatencyReport latency;
};

/// One unit per radius; every pixel is fed once, in row-major order, to all
/// units. Emissions are merged and tagged with their radius.
StreamingResult streaming_run_frame(const Frame& frame, const DetectorConfig& cfg,
                                    std::span<const int> radii,
                                    double pixel_clock_hz = kDefaultPixelClockHz);

/// Line-oriented trace: "kind row col radius tick time_seconds" per record.
void write_emission_trace(std::ostream& out, std::span<const Emission> emissions,
                          double pixel_clock_hz = kDefaultPixelClockHz);
std::vector<Emission> read_emission_trace(std::istream& in);

}  // namespace isomark
