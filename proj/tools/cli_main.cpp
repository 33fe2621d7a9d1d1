#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "isomark/bench.hpp"
#include "isomark/fast_scan.hpp"
#include "isomark/parallel.hpp"
#include "isomark/postprocess.hpp"
#include "isomark/reference.hpp"
#include "isomark/streaming.hpp"

namespace {

using namespace isomark;

struct RawSize {
    int width = 0;
    int height = 0;
};

RawSize parse_size(const std::string& text) {
    RawSize size;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> size.width >> sep >> size.height) || sep != 'x' || size.width <= 0 ||
        size.height <= 0)
        throw CLI::ValidationError("size", "expected WxH, e.g. 752x480");
    return size;
}

std::vector<NamedFrame> load_input(const std::string& input, const RawSize& raw) {
    const std::filesystem::path path(input);
    if (std::filesystem::is_directory(path))
        return load_dataset(path, raw.width, raw.height);
    if (path.extension() == ".pgm")
        return {{path.filename().string(), load_frame(path, FrameFormat::Pgm)}};
    return {{path.filename().string(),
             load_frame(path, FrameFormat::Raw8, raw.width, raw.height)}};
}

void write_detections(const std::string& out_path, const std::string& engine,
                      const std::vector<std::pair<std::string, DetectionSet>>& results) {
    const bool json = std::filesystem::path(out_path).extension() == ".json";
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    if (json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& [frame_id, set] : results) {
            auto emit = [&](const Detection& d) {
                doc.push_back({{"frame", frame_id},
                               {"kind", d.kind == DetectionKind::Marker ? "marker" : "sun"},
                               {"row", d.row},
                               {"col", d.col},
                               {"radius", d.radius},
                               {"engine", engine}});
            };
            for (const auto& d : set.markers) emit(d);
            for (const auto& d : set.sun_points) emit(d);
        }
        out << doc.dump(2) << '\n';
    } else {
        out << "frame,kind,row,col,radius,engine\n";
        for (const auto& [frame_id, set] : results) {
            auto emit = [&](const Detection& d) {
                out << frame_id << ','
                    << (d.kind == DetectionKind::Marker ? "marker" : "sun") << ','
                    << d.row << ',' << d.col << ',' << d.radius << ',' << engine << '\n';
            };
            for (const auto& d : set.markers) emit(d);
            for (const auto& d : set.sun_points) emit(d);
        }
    }
}

void add_detector_flags(CLI::App* cmd, DetectorConfig& cfg) {
    cmd->add_option("--radius", cfg.radius, "Detection radius (pixels)");
    cmd->add_option("--tm", cfg.thresholds.marker, "Marker brightness threshold T_m");
    cmd->add_option("--ts", cfg.thresholds.sun, "Sun brightness threshold T_s");
    cmd->add_option("--td", cfg.thresholds.diff, "Differential contrast threshold T_d");
    cmd->add_option("--lm", cfg.max_markers, "Marker count limit L_m");
    cmd->add_option("--ls", cfg.max_sun_points, "Sun point count limit L_s");
}

int run(int argc, char** argv) {
    CLI::App app{"Isolated bright-marker and sun-point detection toolkit"};
    app.require_subcommand(1);

    DetectorConfig cfg;
    std::string input, out_path, engine_name = "cpu", raw_size_text;
    int iterations = 100;

    auto* detect = app.add_subcommand("detect", "Detect markers in a frame or directory");
    detect->add_option("input", input, "Frame file or dataset directory")->required();
    detect->add_option("--engine", engine_name, "uimd | cpu | parallel | stream");
    add_detector_flags(detect, cfg);
    detect->add_option("--raw-size", raw_size_text, "Raw frame size WxH");
    detect->add_option("--sun-filter", cfg.sun_filter_distance,
                       "Drop markers closer than this to any sun point");
    detect->add_option("--out", out_path, "Output file (.json for JSON, else CSV)")
        ->required();
    std::string trace_path;
    detect->add_option("--trace", trace_path,
                       "Write the streaming emission trace here (stream engine only)");

    auto* bench = app.add_subcommand("bench", "Time an engine over a dataset");
    bench->add_option("input", input, "Dataset directory")->required();
    bench->add_option("--engine", engine_name, "uimd | cpu | parallel | stream");
    add_detector_flags(bench, cfg);
    bench->add_option("--raw-size", raw_size_text, "Raw frame size WxH");
    bench->add_option("--iters", iterations, "Timed iterations per frame");
    bench->add_option("--out", out_path, "Records CSV path")->required();

    auto* fit = app.add_subcommand("fit", "Fit the per-pixel cost model to records");
    fit->add_option("input", input, "Records CSV from 'bench'")->required();
    fit->add_option("--out", out_path, "Model output path")->required();

    double transfer_ms = 3.8;
    auto* compare = app.add_subcommand("compare", "Run and compare all engines");
    compare->add_option("input", input, "Dataset directory")->required();
    add_detector_flags(compare, cfg);
    compare->add_option("--raw-size", raw_size_text, "Raw frame size WxH");
    compare->add_option("--iters", iterations, "Timed iterations per frame");
    compare->add_option("--transfer-ms", transfer_ms, "Host transfer constant (ms)");
    compare->add_option("--out", out_path, "Report path")->required();

    int frame_count = 10, max_blobs = 5, noise_max = 6;
    std::uint64_t seed = 1;
    std::string size_text = "752x480";
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--out", out_path, "Output directory")->required();
    synth->add_option("--frames", frame_count, "Number of frames");
    synth->add_option("--blobs", max_blobs, "Maximum blobs per frame");
    synth->add_option("--noise", noise_max, "Uniform noise ceiling");
    synth->add_option("--seed", seed, "Base RNG seed");
    synth->add_option("--size", size_text, "Frame size WxH");
    synth->add_option("--radius", cfg.radius, "Radius used for separation margins");

    auto* hist = app.add_subcommand("hist", "Histogram of per-frame detection counts");
    hist->add_option("input", input, "Records CSV from 'bench'")->required();
    hist->add_option("--out", out_path, "Histogram table path")->required();

    CLI11_PARSE(app, argc, argv);

    RawSize raw;
    if (!raw_size_text.empty()) raw = parse_size(raw_size_text);

    if (*detect) {
        const EngineId id = parse_engine(engine_name);
        const auto frames = load_input(input, raw);
        std::vector<std::pair<std::string, DetectionSet>> results;
        std::ofstream trace;
        if (!trace_path.empty()) {
            trace.open(trace_path);
            if (!trace) throw IoError("cannot write " + trace_path);
        }
        for (const auto& [name, frame] : frames) {
            DetectionSet set;
            if (id == EngineId::Streaming) {
                const int radii[1] = {cfg.radius};
                auto streamed = streaming_run_frame(frame, cfg, radii);
                if (trace.is_open())
                    write_emission_trace(trace, streamed.emissions);
                set = concentrate_detections(streamed.detections);
            } else {
                set = run_engine(id, frame, cfg);
                if (id == EngineId::Parallel) set = concentrate_detections(set);
            }
            set.markers =
                filter_markers_by_sun(set.markers, set.sun_points, cfg.sun_filter_distance);
            results.emplace_back(name, sort_detections(std::move(set)));
        }
        write_detections(out_path, engine_name, results);
    } else if (*bench) {
        const EngineId id = parse_engine(engine_name);
        const auto frames = load_dataset(input, raw.width, raw.height);
        const auto records = bench_run(frames, id, cfg, iterations);
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        write_records_csv(out, records);
    } else if (*fit) {
        std::ifstream in(input);
        if (!in) throw IoError("cannot read " + input);
        const auto records = read_records_csv(in);
        const CostModel model = fit_time_model(records);
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << "t_none_s " << model.t_none << "\nt_det_s " << model.t_det
            << "\nr_squared " << model.r_squared << '\n';
    } else if (*compare) {
        const auto frames = load_dataset(input, raw.width, raw.height);
        const auto report =
            compare_detectors(frames, cfg, iterations, transfer_ms * 1e-3);
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << render_compare_report(report);
    } else if (*synth) {
        const RawSize size = parse_size(size_text);
        std::filesystem::create_directories(out_path);
        for (int i = 0; i < frame_count; ++i) {
            const SynthSpec spec =
                random_scene(size.width, size.height, max_blobs, seed + i, cfg.radius,
                             noise_max);
            const Frame frame = synthesize_frame(size.width, size.height, spec);
            std::ostringstream name;
            name << "frame_" << std::setw(5) << std::setfill('0') << i << ".pgm";
            write_frame(frame, std::filesystem::path(out_path) / name.str(),
                        FrameFormat::Pgm);
        }
    } else if (*hist) {
        std::ifstream in(input);
        if (!in) throw IoError("cannot read " + input);
        const auto records = read_records_csv(in);
        std::vector<int> counts;
        counts.reserve(records.size());
        for (const auto& r : records) counts.push_back(static_cast<int>(r.detected_pixels));
        const auto bins = marker_histogram(counts);
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << render_histogram(bins);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        throw;  // handled by CLI11_PARSE
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
