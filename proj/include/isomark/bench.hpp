#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isomark/frame.hpp"

namespace isomark {

enum class EngineId { Reference, FastScan, Parallel, Streaming };

/// CLI engine tokens: uimd, cpu, parallel, stream.
EngineId parse_engine(std::string_view token);
std::string_view engine_token(EngineId id);

/// Run one engine on one frame. The reference and streaming engines run in
/// single-radius mode at cfg.radius so results are comparable across
/// engines.
DetectionSet run_engine(EngineId id, const Frame& frame, const DetectorConfig& cfg);

struct NamedFrame {
    std::string name;
    Frame frame;
};

/// Frames of a dataset directory in lexicographic order. ".pgm" files are
/// self-describing; anything else is headerless raw8 and needs dimensions.
std::vector<NamedFrame> load_dataset(const std::filesystem::path& dir,
                                     int raw_width = 0, int raw_height = 0);

/// One timed frame: warm-up run excluded, then `iterations` timed runs.
struct BenchRecord {
    std::string frame_id;
    std::string engine;
    int iterations = 1;
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
    std::uint64_t detected_pixels = 0;  // n_det: pixels passing the segment test
    std::uint64_t frame_pixels = 0;     // W*H
};

std::vector<BenchRecord> bench_run(std::span<const NamedFrame> frames, EngineId id,
                                   const DetectorConfig& cfg, int iterations);

void write_records_csv(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_records_csv(std::istream& in);

/// Linear per-pixel cost model: t_frame = (WH - n_det)*t_none + n_det*t_det.
struct CostModel {
    double t_none = 0.0;
    double t_det = 0.0;
    double r_squared = 1.0;
};

class DegenerateFitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares fit of (t_none, t_det); throws DegenerateFitError when the
/// records cannot identify both parameters (e.g. all n_det equal).
CostModel fit_time_model(std::span<const BenchRecord> records);

/// Bin per integer marker count, 0 through the observed maximum.
std::vector<std::pair<int, std::uint64_t>> marker_histogram(std::span<const int> counts);
std::string render_histogram(std::span<const std::pair<int, std::uint64_t>> bins);

struct EngineComparison {
    std::string engine;
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
    bool model_valid = false;
    CostModel model;
    std::vector<BenchRecord> records;
};

struct AgreementRow {
    std::string engine;                // compared against the reference engine
    std::size_t frames = 0;
    std::size_t marker_count_matches = 0;
    double max_centroid_distance = 0.0;  // L-inf, clustered vs reference peaks
};

struct CompareReport {
    std::vector<EngineComparison> engines;
    std::vector<AgreementRow> agreement;
    double streaming_frame_seconds = 0.0;  // content-independent
    double transfer_seconds = 0.0;         // configurable USB transfer constant
};

CompareReport compare_detectors(std::span<const NamedFrame> frames,
                                const DetectorConfig& cfg, int iterations,
                                double transfer_seconds = 3.8e-3);
std::string render_compare_report(const CompareReport& report);

}  // namespace isomark
