#pragma once

#include <optional>
#include <span>
#include <vector>

namespace isomark {

/// Relative lattice coordinate, (row delta, column delta), +y downward.
struct CirclePoint {
    int y = 0;
    int x = 0;
    bool operator==(const CirclePoint&) const = default;
    auto operator<=>(const CirclePoint&) const = default;
};

/// Incremental generator of the boundary of a Bresenham circle.
/// Emits every boundary point exactly once, then reports exhaustion.
/// The radius is fixed for the generator's lifetime.
class CircleFsm {
  public:
    explicit CircleFsm(int radius);

    /// Next boundary point, or nullopt once the circle is complete.
    std::optional<CirclePoint> next();

    int radius() const { return radius_; }

  private:
    int state_;
    int x_;
    int y_;
    int decision_;
    int radius_;
};

/// All boundary points of the radius-rho circle, reordered so the most
/// mutually distant points come first (greedy farthest-point order starting
/// from the topmost point).
std::vector<CirclePoint> boundary_points(int radius);

/// Boundary points in raw generator emission order.
std::vector<CirclePoint> fsm_boundary(int radius);

/// Lattice points strictly enclosed by the boundary ring (flood fill from
/// the centre), excluding the ring itself. Includes (0,0).
std::vector<CirclePoint> interior_points(int radius);

/// Members with y > 0, plus members with y = 0 and x >= 0. These are the
/// positions at or after the current scan position in row-major order.
std::vector<CirclePoint> lower_half(const std::vector<CirclePoint>& interior);

/// Width-linearised 1-D offsets W*y + x, order preserved.
std::vector<int> linear_offsets(std::span<const CirclePoint> points, int width);

/// Fraction of lattice points in the disc of radius rho_max (origin
/// excluded) that lie on no circle boundary for any rho in [1, rho_max].
double uncovered_fraction(int max_radius);

/// Precomputed neighbourhood data shared by the detectors.
struct NeighbourhoodOffsets {
    int radius = 0;
    int width = 0;
    std::vector<CirclePoint> boundary;        // evaluation order
    std::vector<CirclePoint> interior;        // includes (0,0)
    std::vector<CirclePoint> interior_lower;  // lower half of interior
    int central_offset = 0;                   // O_c = (W+1)*rho
    std::vector<int> boundary_offsets;        // W*y + x per boundary point
    std::vector<int> interior_offsets;

    static NeighbourhoodOffsets make(int radius, int width);
};

}  // namespace isomark
