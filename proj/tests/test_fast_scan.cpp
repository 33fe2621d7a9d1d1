#include <doctest.h>

#include "helpers.hpp"
#include "isomark/fast_scan.hpp"
#include "isomark/parallel.hpp"
#include "isomark/reference.hpp"

using namespace isomark;
using testutil::positions;

TEST_CASE("an all-dark frame yields nothing") {
    const auto out = fast_scan_detect(testutil::blank(64, 48), DetectorConfig{});
    CHECK(out.markers.empty());
    CHECK(out.sun_points.empty());
    CHECK_FALSE(out.truncated);
}

TEST_CASE("frames barely larger than the neighbourhood are rejected") {
    CHECK_THROWS_AS(fast_scan_detect(testutil::blank(8, 64), DetectorConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fast_scan_detect(testutil::blank(64, 8), DetectorConfig{}),
                    std::invalid_argument);
    CHECK_NOTHROW(fast_scan_detect(testutil::blank(9, 9), DetectorConfig{}));
}

TEST_CASE("markers match the reference engine on random scenes") {
    const int radii[1] = {3};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CAPTURE(seed);
        const SynthSpec spec = random_scene(160, 120, 8, seed, 3, 6);
        const Frame frame = synthesize_frame(160, 120, spec);
        const auto fast = fast_scan_detect(frame, DetectorConfig{});
        const auto ref = reference_detect(frame, DetectorConfig{}, radii);
        CHECK(positions(fast.markers) == positions(ref.markers));
        CHECK(fast.sun_points.empty());
        CHECK(ref.sun_points.empty());
    }
}

TEST_CASE("the input frame is never mutated") {
    const SynthSpec spec = random_scene(128, 96, 6, 5, 3, 4);
    const Frame frame = synthesize_frame(128, 96, spec);
    const Frame copy = frame;
    (void)fast_scan_detect(frame, DetectorConfig{});
    CHECK(frame == copy);
}

TEST_CASE("interior clearing suppresses secondary peaks in one neighbourhood") {
    Frame frame = testutil::blank(48, 48);
    frame.at(20, 20) = 210;
    frame.at(20, 22) = 180;  // interior of the first detection
    const auto out = fast_scan_detect(frame, DetectorConfig{});
    CHECK(out.markers.size() == 1);
}

TEST_CASE("marker limit stops the scan and reports truncation") {
    SynthSpec spec;
    for (int row = 0; row < 5; ++row)
        for (int col = 0; col < 7; ++col)
            if (row * 7 + col < 31)
                spec.blobs.push_back({15 + 25 * row, 15 + 25 * col, 240, 1.0});
    const Frame frame = synthesize_frame(200, 160, spec);
    const auto out = fast_scan_detect(frame, DetectorConfig{});
    CHECK(out.markers.size() == 30);
    CHECK(out.truncated);
    DetectorConfig roomy;
    roomy.max_markers = 64;
    const auto full = fast_scan_detect(frame, roomy);
    CHECK(full.markers.size() == 31);
    CHECK_FALSE(full.truncated);
}

TEST_CASE("sun points are cleared interior-wide and stay within the plane") {
    const Frame frame = testutil::blank(24, 24, 255);
    DetectorConfig cfg;
    cfg.max_sun_points = 100;
    const auto out = fast_scan_detect(frame, cfg);
    CHECK(out.markers.empty());
    CHECK_FALSE(out.sun_points.empty());
    // Clearing spaces the accepted sun pixels out by more than the interior.
    const auto pos = positions(out.sun_points);
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const int dy = pos[i].first - pos[j].first;
            const int dx = pos[i].second - pos[j].second;
            CHECK(dy * dy + dx * dx > 4);
        }
    // Away from the left/right borders (where the 1-D addressing wraps the
    // ring into adjacent rows) every reported pixel satisfies the 2-D sun
    // predicate.
    for (const auto& [r, c] : pos) {
        const auto summary = summarize_boundary(frame, r, c, 3);
        if (!summary) {
            CHECK((c < 3 || c >= frame.width - 3));
            continue;
        }
        CHECK(255 - summary->min_value < 60);
    }
}

TEST_CASE("sun limit truncates") {
    const Frame frame = testutil::blank(32, 32, 255);
    DetectorConfig cfg;
    cfg.max_sun_points = 3;
    const auto out = fast_scan_detect(frame, cfg);
    CHECK(out.sun_points.size() == 3);
    CHECK(out.truncated);
}

TEST_CASE("detection is repeatable") {
    const SynthSpec spec = random_scene(160, 120, 8, 21, 3, 6);
    const Frame frame = synthesize_frame(160, 120, spec);
    const auto a = fast_scan_detect(frame, DetectorConfig{});
    const auto b = fast_scan_detect(frame, DetectorConfig{});
    CHECK(a.markers == b.markers);
    CHECK(a.sun_points == b.sun_points);
}
