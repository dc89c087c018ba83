#ifndef QCHAN_PLANAR_HPP
#define QCHAN_PLANAR_HPP

#include <complex>
#include <vector>

namespace qchan {

using Point = std::complex<double>;

/// Convex hull in counter-clockwise order (monotone chain). Collinear points
/// on an edge are dropped; fewer than three points come back as-is, sorted.
std::vector<Point> convex_hull(std::vector<Point> pts);

/// Euclidean distance from the origin to conv(pts); 0 if the origin is inside
/// or on the boundary.
double hull_distance_to_origin(const std::vector<Point>& pts);

struct Disc {
  Point center;
  double radius = 0.0;
};

/// Smallest disc containing every point (Welzl, randomized incremental).
/// The shuffle uses a fixed seed, so the result is reproducible.
Disc smallest_enclosing_disc(std::vector<Point> pts);

}  // namespace qchan

#endif  // QCHAN_PLANAR_HPP
