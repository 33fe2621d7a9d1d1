#pragma once

// Shared test helpers. The circle oracle below replays the boundary column by
// column with the decision recomputed from a closed form each step, so it
// shares no incremental state with the generator under test.

#include <algorithm>
#include <set>
#include <vector>

#include "isomark/circle.hpp"
#include "isomark/frame.hpp"

namespace testutil {

using isomark::CirclePoint;

inline void emit_symmetric(std::set<CirclePoint>& out, int x, int y) {
    out.insert({+y, -x});
    out.insert({-y, +x});
    out.insert({+x, -y});
    out.insert({-x, +y});
    out.insert({+y, +x});
    out.insert({-y, -x});
    out.insert({+x, +y});
    out.insert({-x, -y});
}

/// Independent boundary oracle: walk columns x = 0, 1, ... and decide the
/// row drop from the closed-form residual
///   P(x, y) = 2(x^2 + y^2 - rho^2) + 8x - 6y + 4rho + 3
/// evaluated from scratch at every step.
inline std::set<CirclePoint> oracle_ring(int rho) {
    std::set<CirclePoint> out;
    int y = rho;
    emit_symmetric(out, 0, y);
    for (int x = 0;;) {
        const long long p = 2LL * (1LL * x * x + 1LL * y * y - 1LL * rho * rho) +
                            8LL * x - 6LL * y + 4LL * rho + 3;
        ++x;
        if (p >= 0) --y;
        if (x > y) break;
        emit_symmetric(out, x, y);
    }
    return out;
}

inline std::set<CirclePoint> as_set(const std::vector<CirclePoint>& pts) {
    return {pts.begin(), pts.end()};
}

inline isomark::Frame blank(int width, int height, std::uint8_t fill = 0) {
    return isomark::Frame(width, height, fill);
}

inline std::vector<std::pair<int, int>> positions(
    const std::vector<isomark::Detection>& dets) {
    std::vector<std::pair<int, int>> out;
    out.reserve(dets.size());
    for (const auto& d : dets) out.emplace_back(d.row, d.col);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testutil
