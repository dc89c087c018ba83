#include "qchan/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qchan {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool inside(const Disc& c, Point p) {
  return std::abs(p - c.center) <= c.radius * (1.0 + 1e-12) + 1e-15;
}

Disc from_two(Point a, Point b) { return {(a + b) * 0.5, std::abs(a - b) * 0.5}; }

Disc from_three(Point a, Point b, Point c) {
  const Point ab = b - a, ac = c - a;
  const double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
  if (std::abs(d) < 1e-300) {
    // Collinear: the farthest pair spans the disc.
    Disc best = from_two(a, b);
    for (const Disc& cand : {from_two(a, c), from_two(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = std::norm(ab), c2 = std::norm(ac);
  const Point off((ac.imag() * b2 - ab.imag() * c2) / d, (ab.real() * c2 - ac.real() * b2) / d);
  return {a + off, std::abs(off)};
}

}  // namespace

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double hull_distance_to_origin(const std::vector<Point>& pts) {
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  const std::vector<Point> h = convex_hull(pts);
  const Point origin(0.0, 0.0);
  if (h.size() == 1) return std::abs(h[0]);
  if (h.size() == 2) return segment_distance(origin, h[0], h[1]);
  bool in = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point a = h[i], b = h[(i + 1) % h.size()];
    if (cross(a, b, origin) < 0) in = false;
    best = std::min(best, segment_distance(origin, a, b));
  }
  return in ? 0.0 : best;
}

Disc smallest_enclosing_disc(std::vector<Point> pts) {
  if (pts.empty()) return {};
  std::mt19937_64 gen(0x5EEDu);
  std::shuffle(pts.begin(), pts.end(), gen);
  Disc c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k)
        if (!inside(c, pts[k])) c = from_three(pts[i], pts[j], pts[k]);
    }
  }
  return c;
}

}  // namespace qchan
