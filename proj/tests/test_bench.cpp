#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "isomark/bench.hpp"
#include "isomark/streaming.hpp"

using namespace isomark;

namespace {

std::vector<BenchRecord> synthetic_records(double t_none, double t_det,
                                           std::initializer_list<std::uint64_t> dets,
                                           std::uint64_t pixels = 360960) {
    std::vector<BenchRecord> out;
    int i = 0;
    for (const std::uint64_t n : dets) {
        BenchRecord r;
        r.frame_id = "frame_" + std::to_string(i++);
        r.engine = "cpu";
        r.iterations = 100;
        r.detected_pixels = n;
        r.frame_pixels = pixels;
        r.mean_seconds = (pixels - n) * t_none + n * t_det;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

TEST_CASE("noise-free records recover the cost model exactly") {
    const double t_none = 2.5e-9, t_det = 8.0e-7;
    const auto records = synthetic_records(t_none, t_det, {0, 3, 7, 12, 19, 26});
    const auto model = fit_time_model(records);
    CHECK(model.t_none == doctest::Approx(t_none).epsilon(1e-9));
    CHECK(model.t_det == doctest::Approx(t_det).epsilon(1e-9));
    CHECK(model.r_squared == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform detection counts cannot identify both parameters") {
    const auto records = synthetic_records(2.5e-9, 8.0e-7, {5, 5, 5, 5});
    CHECK_THROWS_AS(fit_time_model(records), DegenerateFitError);
    CHECK_THROWS_AS(fit_time_model(std::vector<BenchRecord>{}), DegenerateFitError);
}

TEST_CASE("one percent timing noise moves the fit by a few percent at most") {
    const double t_none = 2.5e-9, t_det = 8.0e-7;
    // Small frames so the detection term is not drowned by the baseline term.
    auto records = synthetic_records(t_none, t_det, {0, 2, 5, 9, 13, 17, 21, 26}, 10000);
    // Deterministic +-1% multiplicative perturbation.
    int sign = 1;
    for (auto& r : records) {
        r.mean_seconds *= 1.0 + 0.01 * sign;
        sign = -sign;
    }
    const auto model = fit_time_model(records);
    CHECK(std::abs(model.t_none - t_none) / t_none < 0.05);
    CHECK(std::abs(model.t_det - t_det) / t_det < 0.05);
}

TEST_CASE("records survive the CSV round trip") {
    const auto records = synthetic_records(3e-9, 5e-7, {1, 4, 9});
    std::stringstream buffer;
    write_records_csv(buffer, records);
    CHECK(buffer.str().rfind("frame,engine,iterations,mean_s,stddev_s,n_det,pixels\n",
                             0) == 0);
    const auto parsed = read_records_csv(buffer);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].frame_id == records[i].frame_id);
        CHECK(parsed[i].engine == records[i].engine);
        CHECK(parsed[i].iterations == records[i].iterations);
        CHECK(parsed[i].mean_seconds == doctest::Approx(records[i].mean_seconds));
        CHECK(parsed[i].detected_pixels == records[i].detected_pixels);
        CHECK(parsed[i].frame_pixels == records[i].frame_pixels);
    }
}

TEST_CASE("histogram bins every count from zero to the maximum") {
    const int counts[] = {0, 2, 2, 5, 2};
    const auto bins = marker_histogram(counts);
    REQUIRE(bins.size() == 6);
    CHECK(bins[0] == std::pair(0, std::uint64_t{1}));
    CHECK(bins[1] == std::pair(1, std::uint64_t{0}));
    CHECK(bins[2] == std::pair(2, std::uint64_t{3}));
    CHECK(bins[5] == std::pair(5, std::uint64_t{1}));
    CHECK(render_histogram(bins) == "0\t1\n1\t0\n2\t3\n3\t0\n4\t0\n5\t1\n");
    CHECK(marker_histogram(std::vector<int>{}).empty());
}

TEST_CASE("engine tokens round trip") {
    for (const EngineId id : {EngineId::Reference, EngineId::FastScan,
                              EngineId::Parallel, EngineId::Streaming})
        CHECK(parse_engine(engine_token(id)) == id);
    CHECK_THROWS_AS(parse_engine("gpu"), std::invalid_argument);
}

TEST_CASE("benchmarking records detection counts and timings per frame") {
    std::vector<NamedFrame> frames;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const SynthSpec spec = random_scene(96, 64, 4, seed + 60, 3, 4);
        frames.push_back({"f" + std::to_string(seed), synthesize_frame(96, 64, spec)});
    }
    const auto records = bench_run(frames, EngineId::FastScan, DetectorConfig{}, 2);
    REQUIRE(records.size() == 3);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].frame_id == frames[i].name);
        CHECK(records[i].engine == "cpu");
        CHECK(records[i].iterations == 2);
        CHECK(records[i].mean_seconds > 0.0);
        CHECK(records[i].frame_pixels == 96 * 64);
        const auto check = run_engine(EngineId::FastScan, frames[i].frame, DetectorConfig{});
        CHECK(records[i].detected_pixels ==
              check.markers.size() + check.sun_points.size());
    }
    CHECK_THROWS_AS(bench_run(frames, EngineId::FastScan, DetectorConfig{}, 0),
                    std::invalid_argument);
}

TEST_CASE("all four engines run through the shared entry point") {
    const SynthSpec spec = random_scene(96, 64, 3, 123, 3, 0);
    const Frame frame = synthesize_frame(96, 64, spec);
    for (const EngineId id : {EngineId::Reference, EngineId::FastScan,
                              EngineId::Parallel, EngineId::Streaming})
        CHECK_NOTHROW(run_engine(id, frame, DetectorConfig{}));
}

TEST_CASE("comparison reports cover every engine") {
    std::vector<NamedFrame> frames;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const SynthSpec spec = random_scene(96, 64, 4, seed + 200, 3, 0);
        frames.push_back({"f" + std::to_string(seed), synthesize_frame(96, 64, spec)});
    }
    const auto report = compare_detectors(frames, DetectorConfig{}, 1);
    REQUIRE(report.engines.size() == 4);
    CHECK(report.agreement.size() == 3);
    CHECK(report.streaming_frame_seconds ==
          doctest::Approx(96.0 * 64.0 / kDefaultPixelClockHz));
    const std::string text = render_compare_report(report);
    for (const char* token : {"uimd", "cpu", "parallel", "stream"})
        CHECK(text.find(token) != std::string::npos);
}
