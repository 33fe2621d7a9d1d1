#include "isomark/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "isomark/fast_scan.hpp"
#include "isomark/parallel.hpp"
#include "isomark/postprocess.hpp"
#include "isomark/reference.hpp"
#include "isomark/streaming.hpp"

namespace isomark {

EngineId parse_engine(std::string_view token) {
    if (token == "uimd") return EngineId::Reference;
    if (token == "cpu") return EngineId::FastScan;
    if (token == "parallel") return EngineId::Parallel;
    if (token == "stream") return EngineId::Streaming;
    throw std::invalid_argument("unknown engine '" + std::string(token) +
                                "' (expected uimd, cpu, parallel or stream)");
}

std::string_view engine_token(EngineId id) {
    switch (id) {
        case EngineId::Reference: return "uimd";
        case EngineId::FastScan: return "cpu";
        case EngineId::Parallel: return "parallel";
        case EngineId::Streaming: return "stream";
    }
    return "?";
}

DetectionSet run_engine(EngineId id, const Frame& frame, const DetectorConfig& cfg) {
    const int radii[1] = {cfg.radius};
    switch (id) {
        case EngineId::Reference: return reference_detect(frame, cfg, radii);
        case EngineId::FastScan: return fast_scan_detect(frame, cfg);
        case EngineId::Parallel: return parallel_detect(frame, cfg);
        case EngineId::Streaming: return streaming_run_frame(frame, cfg, radii).detections;
    }
    throw std::invalid_argument("unknown engine id");
}

std::vector<NamedFrame> load_dataset(const std::filesystem::path& dir,
                                     int raw_width, int raw_height) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("dataset directory not found: " + dir.string());
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    std::vector<NamedFrame> frames;
    for (const auto& path : paths) {
        if (path.extension() == ".pgm") {
            frames.push_back({path.filename().string(),
                              load_frame(path, FrameFormat::Pgm)});
        } else {
            frames.push_back({path.filename().string(),
                              load_frame(path, FrameFormat::Raw8, raw_width, raw_height)});
        }
    }
    if (frames.empty()) throw IoError("dataset is empty: " + dir.string());
    return frames;
}

std::vector<BenchRecord> bench_run(std::span<const NamedFrame> frames, EngineId id,
                                   const DetectorConfig& cfg, int iterations) {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (frames.empty()) throw std::invalid_argument("dataset is empty");

    std::vector<BenchRecord> records;
    records.reserve(frames.size());
    for (const auto& [name, frame] : frames) {
        const DetectionSet warmup = run_engine(id, frame, cfg);
        std::vector<double> samples;
        samples.reserve(iterations);
        for (int it = 0; it < iterations; ++it) {
            const auto start = std::chrono::steady_clock::now();
            const DetectionSet result = run_engine(id, frame, cfg);
            const auto stop = std::chrono::steady_clock::now();
            (void)result;
            samples.push_back(std::chrono::duration<double>(stop - start).count());
        }
        double mean = 0.0;
        for (const double s : samples) mean += s;
        mean /= samples.size();
        double var = 0.0;
        for (const double s : samples) var += (s - mean) * (s - mean);
        var /= samples.size();

        BenchRecord rec;
        rec.frame_id = name;
        rec.engine = std::string(engine_token(id));
        rec.iterations = iterations;
        rec.mean_seconds = mean;
        rec.stddev_seconds = std::sqrt(var);
        rec.detected_pixels = warmup.markers.size() + warmup.sun_points.size();
        rec.frame_pixels = frame.pixel_count();
        records.push_back(std::move(rec));
    }
    return records;
}

void write_records_csv(std::ostream& out, std::span<const BenchRecord> records) {
    out << "frame,engine,iterations,mean_s,stddev_s,n_det,pixels\n";
    out << std::setprecision(12);
    for (const auto& r : records) {
        out << r.frame_id << ',' << r.engine << ',' << r.iterations << ','
            << r.mean_seconds << ',' << r.stddev_seconds << ',' << r.detected_pixels
            << ',' << r.frame_pixels << '\n';
    }
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
    std::vector<BenchRecord> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        BenchRecord r;
        std::string field;
        std::getline(ls, r.frame_id, ',');
        std::getline(ls, r.engine, ',');
        std::getline(ls, field, ',');
        r.iterations = std::stoi(field);
        std::getline(ls, field, ',');
        r.mean_seconds = std::stod(field);
        std::getline(ls, field, ',');
        r.stddev_seconds = std::stod(field);
        std::getline(ls, field, ',');
        r.detected_pixels = std::stoull(field);
        if (!std::getline(ls, field, ','))
            throw IoError("malformed records CSV line: " + line);
        r.frame_pixels = std::stoull(field);
        out.push_back(std::move(r));
    }
    return out;
}

CostModel fit_time_model(std::span<const BenchRecord> records) {
    if (records.size() < 2)
        throw DegenerateFitError("need at least 2 records to fit the cost model");

    // t = p*t_none + n*(t_det - t_none), regressors p = WH and n = n_det.
    double spp = 0, spn = 0, snn = 0, spt = 0, snt = 0;
    for (const auto& r : records) {
        const double p = static_cast<double>(r.frame_pixels);
        const double n = static_cast<double>(r.detected_pixels);
        spp += p * p;
        spn += p * n;
        snn += n * n;
        spt += p * r.mean_seconds;
        snt += n * r.mean_seconds;
    }
    const double det = spp * snn - spn * spn;
    if (std::abs(det) <= 1e-12 * spp * std::max(snn, 1.0))
        throw DegenerateFitError(
            "cost-model fit is degenerate (all n_det equal?); benchmark a dataset "
            "with varied detection counts");
    const double t_none = (snn * spt - spn * snt) / det;
    const double delta = (spp * snt - spn * spt) / det;

    CostModel model;
    model.t_none = t_none;
    model.t_det = t_none + delta;

    double t_mean = 0;
    for (const auto& r : records) t_mean += r.mean_seconds;
    t_mean /= records.size();
    double ss_res = 0, ss_tot = 0;
    for (const auto& r : records) {
        const double fit = r.frame_pixels * t_none + r.detected_pixels * delta;
        ss_res += (r.mean_seconds - fit) * (r.mean_seconds - fit);
        ss_tot += (r.mean_seconds - t_mean) * (r.mean_seconds - t_mean);
    }
    model.r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return model;
}

std::vector<std::pair<int, std::uint64_t>> marker_histogram(std::span<const int> counts) {
    std::vector<std::pair<int, std::uint64_t>> bins;
    if (counts.empty()) return bins;
    const int max_count = *std::max_element(counts.begin(), counts.end());
    bins.resize(max_count + 1);
    for (int i = 0; i <= max_count; ++i) bins[i] = {i, 0};
    for (const int c : counts) ++bins[c].second;
    return bins;
}

std::string render_histogram(std::span<const std::pair<int, std::uint64_t>> bins) {
    std::ostringstream out;
    for (const auto& [count, freq] : bins) out << count << '\t' << freq << '\n';
    return out.str();
}

CompareReport compare_detectors(std::span<const NamedFrame> frames,
                                const DetectorConfig& cfg, int iterations,
                                double transfer_seconds) {
    if (frames.empty()) throw std::invalid_argument("dataset is empty");
    CompareReport report;
    report.transfer_seconds = transfer_seconds;

    const EngineId ids[] = {EngineId::Reference, EngineId::FastScan,
                            EngineId::Parallel, EngineId::Streaming};
    for (const EngineId id : ids) {
        EngineComparison cmp;
        cmp.engine = std::string(engine_token(id));
        cmp.records = bench_run(frames, id, cfg, iterations);
        double mean = 0;
        for (const auto& r : cmp.records) mean += r.mean_seconds;
        cmp.mean_seconds = mean / cmp.records.size();
        double var = 0;
        for (const auto& r : cmp.records)
            var += (r.mean_seconds - cmp.mean_seconds) * (r.mean_seconds - cmp.mean_seconds);
        cmp.stddev_seconds = std::sqrt(var / cmp.records.size());
        try {
            cmp.model = fit_time_model(cmp.records);
            cmp.model_valid = true;
        } catch (const DegenerateFitError&) {
            cmp.model_valid = false;
        }
        report.engines.push_back(std::move(cmp));
    }

    // Detection agreement after clustering, against the reference engine.
    const int radii[1] = {cfg.radius};
    for (const EngineId id : {EngineId::FastScan, EngineId::Parallel, EngineId::Streaming}) {
        AgreementRow row;
        row.engine = std::string(engine_token(id));
        for (const auto& [name, frame] : frames) {
            const DetectionSet ref = reference_detect(frame, cfg, radii);
            DetectionSet got = run_engine(id, frame, cfg);
            if (id == EngineId::Parallel || id == EngineId::Streaming)
                got = concentrate_detections(got);
            ++row.frames;
            if (got.markers.size() == ref.markers.size()) ++row.marker_count_matches;
            for (const auto& m : got.markers) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& rm : ref.markers) {
                    const double d = std::max(std::abs(m.row - rm.row),
                                              std::abs(m.col - rm.col));
                    best = std::min(best, d);
                }
                if (!ref.markers.empty())
                    row.max_centroid_distance = std::max(row.max_centroid_distance, best);
            }
        }
        report.agreement.push_back(std::move(row));
    }

    report.streaming_frame_seconds =
        static_cast<double>(frames.front().frame.pixel_count()) / kDefaultPixelClockHz;
    return report;
}

std::string render_compare_report(const CompareReport& report) {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "engine comparison (" << report.engines.front().records.size() << " frames)\n\n";
    out << "per-engine frame times:\n";
    for (const auto& e : report.engines) {
        out << "  " << std::setw(8) << e.engine << "  mean " << e.mean_seconds * 1e3
            << " ms +- " << e.stddev_seconds * 1e3 << " ms";
        if (e.model_valid) {
            out << "  t_none " << e.model.t_none * 1e9 << " ns  t_det "
                << e.model.t_det * 1e9 << " ns  R2 " << e.model.r_squared;
        } else {
            out << "  (cost model degenerate: uniform n_det)";
        }
        out << '\n';
    }
    out << "\npairwise speedups (row mean / column mean):\n";
    for (const auto& a : report.engines) {
        for (const auto& b : report.engines) {
            if (a.engine == b.engine) continue;
            out << "  " << a.engine << "/" << b.engine << " = "
                << a.mean_seconds / b.mean_seconds << '\n';
        }
    }
    out << "\ndetection agreement vs uimd (marker counts, after clustering):\n";
    for (const auto& row : report.agreement) {
        out << "  " << std::setw(8) << row.engine << "  " << row.marker_count_matches
            << "/" << row.frames << " frames match";
        out << "  max centroid L-inf distance " << row.max_centroid_distance << '\n';
    }
    out << "\nstreaming pipeline: content-independent frame time "
        << report.streaming_frame_seconds * 1e3 << " ms at "
        << kDefaultPixelClockHz / 1e6 << " MHz pixel clock\n";
    out << "host transfer constant for comparison: " << report.transfer_seconds * 1e3
        << " ms (results available that much earlier in-stream)\n";
    return out.str();
}

}  // namespace isomark
