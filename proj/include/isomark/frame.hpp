#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isomark {

/// Row-major 8-bit grayscale image.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Frame() = default;
    Frame(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("Frame dimensions must be positive");
    }

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    std::uint8_t& at(int r, int c) {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    bool in_bounds(int r, int c) const {
        return r >= 0 && r < height && c >= 0 && c < width;
    }
    std::size_t pixel_count() const { return pixels.size(); }

    bool operator==(const Frame&) const = default;
};

/// Intensity thresholds shared by all engines.
struct Thresholds {
    int marker = 120;  // T_m, central pixel must exceed this
    int sun = 240;     // T_s, sun candidate must exceed this
    int diff = 60;     // T_d, required contrast against the boundary

    void validate() const {
        if (marker <= 0 || marker > 255 || sun <= 0 || sun > 255 ||
            diff <= 0 || diff > 255)
            throw std::invalid_argument("thresholds must be in (0, 255]");
        if (marker > sun)
            throw std::invalid_argument("marker threshold must not exceed sun threshold");
    }
};

struct DetectorConfig {
    int radius = 3;
    Thresholds thresholds;
    int max_markers = 30;     // L_m
    int max_sun_points = 30;  // L_s
    double sun_filter_distance = 50.0;

    void validate() const {
        if (radius < 1) throw std::invalid_argument("radius must be >= 1");
        if (max_markers < 1 || max_sun_points < 1)
            throw std::invalid_argument("detection limits must be >= 1");
        if (sun_filter_distance < 0)
            throw std::invalid_argument("sun filter distance must be >= 0");
        thresholds.validate();
    }
};

enum class DetectionKind { Marker, Sun };

struct Detection {
    DetectionKind kind = DetectionKind::Marker;
    int row = 0;
    int col = 0;
    int radius = 0;  // radius the detection was produced with (0 if unspecified)

    bool operator==(const Detection&) const = default;
};

struct DetectionSet {
    std::vector<Detection> markers;
    std::vector<Detection> sun_points;
    bool truncated = false;  // a count limit was hit
};

/// One synthetic light blob: radially decaying bump with a given peak.
struct SynthBlob {
    int row = 0;
    int col = 0;
    int peak = 255;
    double sigma = 1.0;
};

struct SynthSun {
    int row = 0;
    int col = 0;
    int disc_radius = 5;
    int intensity = 255;
};

struct SynthSpec {
    std::vector<SynthBlob> blobs;
    std::optional<SynthSun> sun_disc;
    int noise_max = 0;
    std::uint64_t seed = 0;
    bool well_separated = false;  // enforce margins and pairwise separation
    int separation_radius = 3;    // rho used for the well-separated constraint
};

enum class FrameFormat { Raw8, Pgm };

/// I/O errors carry expected-vs-actual detail in the message.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Frame load_frame(const std::filesystem::path& path, FrameFormat format,
                 int width = 0, int height = 0);
void write_frame(const Frame& frame, const std::filesystem::path& path,
                 FrameFormat format);

Frame synthesize_frame(int width, int height, const SynthSpec& spec);

/// Deterministic random scene with up to max_blobs well-separated blobs,
/// margins wide enough for every engine's clean region at the given radius.
SynthSpec random_scene(int width, int height, int max_blobs, std::uint64_t seed,
                       int radius = 3, int noise_max = 0);

}  // namespace isomark
