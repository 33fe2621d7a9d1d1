#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "isomark/parallel.hpp"
#include "isomark/reference.hpp"

using namespace isomark;
using testutil::positions;

namespace {

Frame noisy_frame(int width, int height, std::uint64_t seed) {
    Frame frame(width, height);
    std::mt19937_64 rng(seed);
    for (auto& px : frame.pixels) px = static_cast<std::uint8_t>(rng() % 256);
    return frame;
}

std::vector<std::uint32_t> row_major_order(const Frame& frame) {
    std::vector<std::uint32_t> order(frame.pixel_count());
    std::iota(order.begin(), order.end(), 0u);
    return order;
}

}  // namespace

TEST_CASE("boundary summary of a uniform frame is degenerate") {
    const Frame frame = testutil::blank(16, 16, 77);
    const auto summary = summarize_boundary(frame, 8, 8, 3);
    REQUIRE(summary.has_value());
    CHECK(summary->min_value == 77);
    CHECK(summary->max_value == 77);
}

TEST_CASE("boundary summary sees exactly the ring") {
    Frame frame = testutil::blank(16, 16, 100);
    frame.at(8, 8) = 255;   // centre is not part of the boundary
    frame.at(8, 9) = 0;     // neither is the interior
    frame.at(5, 8) = 200;   // topmost ring point
    frame.at(9, 11) = 30;   // ring point (1, 3)
    const auto summary = summarize_boundary(frame, 8, 8, 3);
    REQUIRE(summary.has_value());
    CHECK(summary->max_value == 200);
    CHECK(summary->min_value == 30);
}

TEST_CASE("boundary summary matches a brute-force oracle on noise") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Frame frame = noisy_frame(48, 40, seed);
        for (int rho : {3, 4}) {
            for (int r = rho; r < frame.height - rho; ++r) {
                for (int c = rho; c < frame.width - rho; ++c) {
                    const auto summary = summarize_boundary(frame, r, c, rho);
                    REQUIRE(summary.has_value());
                    int lo = 255, hi = 0;
                    for (const auto& p : testutil::oracle_ring(rho)) {
                        lo = std::min<int>(lo, frame.at(r + p.y, c + p.x));
                        hi = std::max<int>(hi, frame.at(r + p.y, c + p.x));
                    }
                    CHECK(summary->min_value == lo);
                    CHECK(summary->max_value == hi);
                }
            }
        }
    }
}

TEST_CASE("boundary summary declines when the ring leaves the frame") {
    const Frame frame = testutil::blank(16, 16);
    CHECK_FALSE(summarize_boundary(frame, 2, 8, 3).has_value());
    CHECK_FALSE(summarize_boundary(frame, 8, 13, 3).has_value());
    CHECK(summarize_boundary(frame, 3, 8, 3).has_value());
}

TEST_CASE("an isolated bright pixel is a marker") {
    Frame frame = testutil::blank(32, 32);
    frame.at(10, 12) = 255;
    const auto out = sort_detections(parallel_detect(frame, DetectorConfig{}));
    REQUIRE(out.markers.size() == 1);
    CHECK(out.markers[0].row == 10);
    CHECK(out.markers[0].col == 12);
    CHECK(out.sun_points.empty());
}

TEST_CASE("saturated plane: sun pixels are exactly the fully-enclosed ones") {
    const Frame frame = testutil::blank(16, 16, 255);
    DetectorConfig cfg;
    cfg.max_sun_points = 256;
    const auto out = sort_detections(parallel_detect(frame, cfg));
    CHECK(out.markers.empty());
    std::vector<std::pair<int, int>> expected;
    for (int r = 3; r <= 12; ++r)
        for (int c = 3; c <= 12; ++c) expected.emplace_back(r, c);
    CHECK(positions(out.sun_points) == expected);
}

TEST_CASE("thread counts do not change the sorted result") {
    const SynthSpec spec = random_scene(160, 120, 8, 3, 3, 6);
    const Frame frame = synthesize_frame(160, 120, spec);
    const auto one = sort_detections(parallel_detect(frame, DetectorConfig{}, 1));
    for (unsigned threads : {2u, 3u, 8u}) {
        const auto many = sort_detections(parallel_detect(frame, DetectorConfig{}, threads));
        CHECK(one.markers == many.markers);
        CHECK(one.sun_points == many.sun_points);
    }
}

TEST_CASE("explicit schedules below capacity agree with row-major order") {
    const SynthSpec spec = random_scene(160, 120, 6, 11, 3, 6);
    const Frame frame = synthesize_frame(160, 120, spec);
    auto order = row_major_order(frame);
    const auto base = sort_detections(parallel_detect_ordered(frame, DetectorConfig{}, order));
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        const auto got =
            sort_detections(parallel_detect_ordered(frame, DetectorConfig{}, order));
        CHECK(base.markers == got.markers);
        CHECK(base.sun_points == got.sun_points);
    }
}

TEST_CASE("over capacity every schedule keeps a bounded subset") {
    const Frame frame = testutil::blank(24, 24, 255);  // many sun pixels
    DetectorConfig cfg;
    cfg.max_sun_points = 7;
    auto order = row_major_order(frame);
    const auto universe = [&] {
        DetectorConfig roomy = cfg;
        roomy.max_sun_points = 1000;
        return positions(parallel_detect_ordered(frame, roomy, order).sun_points);
    }();
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        const auto got = parallel_detect_ordered(frame, cfg, order);
        CHECK(got.sun_points.size() <= 7);
        CHECK(got.truncated);
        for (const auto& [r, c] : positions(got.sun_points))
            CHECK(std::binary_search(universe.begin(), universe.end(), std::pair(r, c)));
    }
}

TEST_CASE("per-pixel marker predicate agrees with the reference segment test") {
    const int radii[1] = {3};
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const SynthSpec spec = random_scene(128, 96, 6, seed, 3, 6);
        const Frame frame = synthesize_frame(128, 96, spec);
        const Thresholds t;
        for (int r = 3; r < frame.height - 3; ++r) {
            for (int c = 3; c < frame.width - 3; ++c) {
                if (frame.at(r, c) <= t.marker) continue;
                const auto summary = summarize_boundary(frame, r, c, 3);
                REQUIRE(summary.has_value());
                const bool data_parallel = frame.at(r, c) - summary->max_value >= t.diff;
                const bool sequential =
                    reference_segment_test(frame, r, c, t, radii).marker;
                CHECK(data_parallel == sequential);
            }
        }
    }
}

TEST_CASE("sorting orders by row then column") {
    DetectionSet set;
    set.markers = {{DetectionKind::Marker, 5, 9, 3},
                   {DetectionKind::Marker, 2, 4, 3},
                   {DetectionKind::Marker, 5, 1, 3}};
    const auto sorted = sort_detections(set);
    CHECK(sorted.markers[0].row == 2);
    CHECK(sorted.markers[1] == Detection{DetectionKind::Marker, 5, 1, 3});
    CHECK(sorted.markers[2].col == 9);
}
