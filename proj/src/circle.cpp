#include "isomark/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

namespace isomark {

CircleFsm::CircleFsm(int radius)
    : state_(1), x_(0), y_(radius), decision_(3 - 2 * radius), radius_(radius) {
    if (radius < 1) throw std::domain_error("circle radius must be >= 1");
}

std::optional<CirclePoint> CircleFsm::next() {
    if (state_ == 0) {
        ++x_;
        if (decision_ < 0) {
            decision_ += 4 * x_ + 6;
        } else {
            --y_;
            decision_ += 4 * (x_ - y_) + 10;
        }
        state_ = (x_ <= y_) ? 1 : 9;
    }
    switch (state_) {
        case 1:
            state_ = 2;
            return CirclePoint{+y_, -x_};
        case 2:
            if (x_ < y_)
                state_ = 3;
            else if (x_ > 0)
                state_ = 5;
            else
                state_ = 0;
            return CirclePoint{-y_, +x_};
        case 3:
            state_ = 4;
            return CirclePoint{+x_, -y_};
        case 4:
            state_ = (x_ > 0) ? 5 : 0;
            return CirclePoint{-x_, +y_};
        case 5:
            state_ = 6;
            return CirclePoint{+y_, +x_};
        case 6:
            state_ = (x_ < y_) ? 7 : 0;
            return CirclePoint{-y_, -x_};
        case 7:
            state_ = 8;
            return CirclePoint{+x_, +y_};
        case 8:
            state_ = 0;
            return CirclePoint{-x_, -y_};
        default:
            return std::nullopt;  // state 9: exhausted
    }
}

std::vector<CirclePoint> fsm_boundary(int radius) {
    CircleFsm fsm(radius);
    std::vector<CirclePoint> out;
    while (auto p = fsm.next()) out.push_back(*p);
    return out;
}

namespace {

// Clockwise angle from the topmost point, used for deterministic tie breaks.
double clockwise_angle(const CirclePoint& p) {
    double a = std::atan2(static_cast<double>(p.x), static_cast<double>(-p.y));
    if (a < 0) a += 2.0 * std::acos(-1.0);
    return a;
}

long long dist2(const CirclePoint& a, const CirclePoint& b) {
    long long dy = a.y - b.y, dx = a.x - b.x;
    return dy * dy + dx * dx;
}

}  // namespace

std::vector<CirclePoint> boundary_points(int radius) {
    std::vector<CirclePoint> pts = fsm_boundary(radius);
    std::sort(pts.begin(), pts.end(), [](const CirclePoint& a, const CirclePoint& b) {
        return clockwise_angle(a) < clockwise_angle(b);
    });

    // Greedy farthest-point ordering: start with the topmost point and its
    // antipode, then repeatedly take the point maximising the minimum
    // distance to all points already chosen. Ties resolve to the smaller
    // clockwise angle. The antipode is seeded explicitly because on the
    // lattice ring a neighbour of the antipode can be marginally farther.
    std::vector<CirclePoint> order;
    std::vector<bool> used(pts.size(), false);
    std::vector<long long> min_d(pts.size(), -1);
    order.reserve(pts.size());
    order.push_back(pts.front());
    used[0] = true;
    for (std::size_t i = 1; i < pts.size(); ++i) min_d[i] = dist2(pts[i], pts[0]);
    if (pts.size() > 1) {
        const CirclePoint antipode{-pts.front().y, -pts.front().x};
        const auto it = std::find(pts.begin(), pts.end(), antipode);
        const auto idx = static_cast<std::size_t>(it - pts.begin());
        used[idx] = true;
        order.push_back(pts[idx]);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!used[i]) min_d[i] = std::min(min_d[i], dist2(pts[i], pts[idx]));
    }
    while (order.size() < pts.size()) {
        std::size_t best = 0;
        long long best_d = -1;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (used[i]) continue;
            if (min_d[i] > best_d) {
                best_d = min_d[i];
                best = i;
            }
        }
        used[best] = true;
        order.push_back(pts[best]);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!used[i]) min_d[i] = std::min(min_d[i], dist2(pts[i], pts[best]));
        }
    }
    return order;
}

std::vector<CirclePoint> interior_points(int radius) {
    std::set<CirclePoint> ring;
    for (const auto& p : fsm_boundary(radius)) ring.insert(p);

    std::vector<CirclePoint> out;
    std::set<CirclePoint> seen;
    std::deque<CirclePoint> queue;
    queue.push_back({0, 0});
    seen.insert({0, 0});
    while (!queue.empty()) {
        CirclePoint p = queue.front();
        queue.pop_front();
        out.push_back(p);
        const CirclePoint steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : steps) {
            CirclePoint q{p.y + d.y, p.x + d.x};
            if (ring.count(q) || seen.count(q)) continue;
            // The ring encloses the fill; the bound below is a safety net only.
            if (std::abs(q.y) > radius || std::abs(q.x) > radius)
                throw std::logic_error("interior flood fill escaped the boundary ring");
            seen.insert(q);
            queue.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CirclePoint> lower_half(const std::vector<CirclePoint>& interior) {
    std::vector<CirclePoint> out;
    for (const auto& p : interior)
        if (p.y > 0 || (p.y == 0 && p.x >= 0)) out.push_back(p);
    return out;
}

std::vector<int> linear_offsets(std::span<const CirclePoint> points, int width) {
    std::vector<int> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(width * p.y + p.x);
    return out;
}

double uncovered_fraction(int max_radius) {
    if (max_radius < 1) throw std::domain_error("max radius must be >= 1");
    const int n = 2 * max_radius + 1;
    std::vector<std::uint8_t> covered(static_cast<std::size_t>(n) * n, 0);
    auto idx = [&](int y, int x) {
        return static_cast<std::size_t>(y + max_radius) * n + (x + max_radius);
    };
    for (int rho = 1; rho <= max_radius; ++rho) {
        CircleFsm fsm(rho);
        while (auto p = fsm.next()) covered[idx(p->y, p->x)] = 1;
    }
    const long long r2 = static_cast<long long>(max_radius) * max_radius;
    long long total = 0, uncovered = 0;
    for (int y = -max_radius; y <= max_radius; ++y) {
        for (int x = -max_radius; x <= max_radius; ++x) {
            if (x == 0 && y == 0) continue;
            if (static_cast<long long>(x) * x + static_cast<long long>(y) * y > r2)
                continue;
            ++total;
            if (!covered[idx(y, x)]) ++uncovered;
        }
    }
    return static_cast<double>(uncovered) / static_cast<double>(total);
}

NeighbourhoodOffsets NeighbourhoodOffsets::make(int radius, int width) {
    if (width <= 2 * radius)
        throw std::invalid_argument("width must exceed the circle diameter");
    NeighbourhoodOffsets n;
    n.radius = radius;
    n.width = width;
    n.boundary = boundary_points(radius);
    n.interior = interior_points(radius);
    n.interior_lower = lower_half(n.interior);
    n.central_offset = (width + 1) * radius;
    n.boundary_offsets = linear_offsets(n.boundary, width);
    n.interior_offsets = linear_offsets(n.interior, width);
    return n;
}

}  // namespace isomark
