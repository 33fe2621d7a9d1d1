#include "isomark/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace isomark {

namespace {

// round-half-down for non-negative rationals sum/count.
int round_half_down(long long sum, long long count) {
    return static_cast<int>((2 * sum + count - 1) / (2 * count));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<Cluster> cluster_detections(std::span<const std::pair<int, int>> points) {
    // Canonical order first so the partition and centroids are
    // permutation-invariant.
    std::vector<std::pair<int, int>> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::map<std::pair<int, int>, int> index;
    for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);

    UnionFind uf(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto [r, c] = sorted[i];
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dy == 0 && dx == 0) continue;
                auto it = index.find({r + dy, c + dx});
                if (it != index.end()) uf.merge(static_cast<int>(i), it->second);
            }
        }
    }

    std::map<int, Cluster> by_root;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        Cluster& cl = by_root[uf.find(static_cast<int>(i))];
        cl.members.push_back(sorted[i]);
        cl.row_sum += sorted[i].first;
        cl.col_sum += sorted[i].second;
    }

    std::vector<Cluster> out;
    out.reserve(by_root.size());
    for (auto& [root, cl] : by_root) {
        const auto n = static_cast<long long>(cl.members.size());
        cl.centroid_row = static_cast<double>(cl.row_sum) / n;
        cl.centroid_col = static_cast<double>(cl.col_sum) / n;
        cl.rounded_row = round_half_down(cl.row_sum, n);
        cl.rounded_col = round_half_down(cl.col_sum, n);
        out.push_back(std::move(cl));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        return a.members.front() < b.members.front();
    });
    return out;
}

std::vector<Detection> filter_markers_by_sun(std::span<const Detection> markers,
                                             std::span<const Detection> sun_points,
                                             double min_distance) {
    if (min_distance < 0) throw std::invalid_argument("filter distance must be >= 0");
    const double limit2 = min_distance * min_distance;
    std::vector<Detection> out;
    out.reserve(markers.size());
    for (const auto& m : markers) {
        bool near_sun = false;
        for (const auto& s : sun_points) {
            const double dy = m.row - s.row, dx = m.col - s.col;
            if (dy * dy + dx * dx < limit2) {
                near_sun = true;
                break;
            }
        }
        if (!near_sun) out.push_back(m);
    }
    return out;
}

DetectionSet concentrate_detections(const DetectionSet& set) {
    auto concentrate = [](const std::vector<Detection>& dets, DetectionKind kind) {
        std::vector<std::pair<int, int>> pts;
        pts.reserve(dets.size());
        int radius = 0;
        for (const auto& d : dets) {
            pts.emplace_back(d.row, d.col);
            radius = std::max(radius, d.radius);
        }
        std::vector<Detection> out;
        for (const auto& cl : cluster_detections(pts))
            out.push_back({kind, cl.rounded_row, cl.rounded_col, radius});
        return out;
    };
    DetectionSet out;
    out.markers = concentrate(set.markers, DetectionKind::Marker);
    out.sun_points = concentrate(set.sun_points, DetectionKind::Sun);
    out.truncated = set.truncated;
    return out;
}

}  // namespace isomark
