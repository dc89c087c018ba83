#include "qchan/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qchan/types.hpp"

namespace qchan {

namespace {

using std::numbers::pi;
using cd = std::complex<double>;

using Poly = std::vector<double>;  // lowest degree first

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly add(Poly a, const Poly& b, double scale = 1.0) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

double horner(const Poly& p, double u) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * u + *it;
  return v;
}

// Linear coefficient pairs (constant, slope in u) for the cubic's a, b, c, d.
std::array<Poly, 4> cubic_in_u(const SmpParams& p) {
  const double x = p.x, y = p.y;
  if (p.scaling == SmpScaling::normalized) {
    return {Poly{0.0, 1.0}, Poly{x + y - 1.0, -(x - y)}, Poly{x - y, -x * y}, Poly{x * y, 0.0}};
  }
  return {Poly{0.0, 1.0}, Poly{x + y - 1.0, 0.0}, Poly{x - y, -1.0}, Poly{1.0, 0.0}};
}

// Real roots of a polynomial via companion-matrix eigenvalues.
std::vector<double> real_roots(Poly p) {
  double scale = 0.0;
  for (double c : p) scale = std::max(scale, std::abs(c));
  while (!p.empty() && std::abs(p.back()) <= 1e-14 * scale) p.pop_back();
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const cd r = es.eigenvalues()(i);
    if (std::abs(r.imag()) <= 1e-6 * (1.0 + std::abs(r.real()))) out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Refines r to a sign change of p within a small bracket; nullopt if the
// sign does not change there (touching root).
std::optional<double> polish_root(const Poly& p, double r) {
  double h = 1e-9 * (1.0 + std::abs(r));
  double lo = r - h, hi = r + h;
  while (h < 1e-3 * (1.0 + std::abs(r))) {
    lo = r - h;
    hi = r + h;
    if ((horner(p, lo) > 0.0) != (horner(p, hi) > 0.0)) break;
    h *= 4.0;
  }
  double flo = horner(p, lo), fhi = horner(p, hi);
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = horner(p, mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

cd eval_cubic(const std::array<cd, 4>& c, cd g) { return ((c[0] * g + c[1]) * g + c[2]) * g + c[3]; }

cd eval_cubic_prime(const std::array<cd, 4>& c, cd g) {
  return (3.0 * c[0] * g + 2.0 * c[1]) * g + c[2];
}

}  // namespace

double mp_atom(double x) {
  if (!(x > 0.0)) throw DomainError(detail::concat("MP parameter must be positive, got ", x));
  return std::max(1.0 - x, 0.0);
}

std::array<double, 2> mp_support(double x) {
  if (!(x > 0.0)) throw DomainError(detail::concat("MP parameter must be positive, got ", x));
  const double s = std::sqrt(x);
  return {(s - 1.0) * (s - 1.0), (s + 1.0) * (s + 1.0)};
}

double mp_density(double x, double u) {
  const auto [a, b] = mp_support(x);
  if (u <= a || u >= b || u <= 0.0) return 0.0;
  const double r = 4.0 * x - (u - 1.0 - x) * (u - 1.0 - x);
  return r > 0.0 ? std::sqrt(r) / (2.0 * pi * u) : 0.0;
}

void SmpParams::validate() const {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError(detail::concat("SMP parameters must be positive and finite, got x=", x,
                                     " y=", y));
  }
}

std::array<double, 4> smp_cubic(const SmpParams& p, double u) {
  p.validate();
  const auto c = cubic_in_u(p);
  return {horner(c[0], u), horner(c[1], u), horner(c[2], u), horner(c[3], u)};
}

std::vector<double> smp_support_polynomial(const SmpParams& p) {
  p.validate();
  const auto [a, b, c, d] = cubic_in_u(p);
  // disc = 18abcd - 4b^3 d + b^2 c^2 - 4 a c^3 - 27 a^2 d^2; return -disc.
  const Poly b2 = mul(b, b), c2 = mul(c, c);
  Poly disc = mul(mul(mul(a, b), c), d);
  for (double& v : disc) v *= 18.0;
  disc = add(disc, mul(mul(b2, b), d), -4.0);
  disc = add(disc, mul(b2, c2));
  disc = add(disc, mul(a, mul(c2, c)), -4.0);
  disc = add(disc, mul(mul(a, a), mul(d, d)), -27.0);
  for (double& v : disc) v = -v;
  return disc;
}

std::vector<Interval> smp_support(const SmpParams& p) {
  const Poly q = smp_support_polynomial(p);
  std::vector<double> edges;
  for (double r : real_roots(q))
    if (auto e = polish_root(q, r)) edges.push_back(*e);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              edges.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (horner(q, 0.5 * (edges[i] + edges[i + 1])) <= 0.0) continue;
    if (!out.empty() && edges[i] - out.back().hi < 1e-9) {
      out.back().hi = edges[i + 1];
    } else {
      out.push_back({edges[i], edges[i + 1]});
    }
  }
  if (out.empty() || out.size() > 2) {
    throw NumericError(detail::concat("SMP support search found ", out.size(),
                                      " intervals for x=", p.x, " y=", p.y));
  }
  return out;
}

double smp_yc(double x) {
  if (!(x > 0.0)) throw DomainError(detail::concat("y_c needs x > 0, got ", x));
  const double c = std::cbrt(2.0 * x);
  return 4.0 - x + 3.0 * c * c - 6.0 * c;
}

double smp_symmetric_edge(double x) {
  if (!(x > 0.0)) throw DomainError(detail::concat("edge needs x > 0, got ", x));
  return std::sqrt(10.0 * x - x * x + std::pow(x + 4.0, 1.5) * std::sqrt(x) + 2.0) /
         std::numbers::sqrt2;
}

double smp_atom(const SmpParams& p) {
  p.validate();
  return std::max(1.0 - p.x - p.y, 0.0);
}

double smp_density(const SmpParams& p, double u) {
  if (u == 0.0) {
    throw DomainError("smp_density is undefined at u = 0; the mass there is smp_atom()");
  }
  const auto [a, b, c, d] = smp_cubic(p, u);
  const double t = b * b - 3.0 * a * c;
  const double uu = 2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d;
  const double disc = uu * uu - 4.0 * t * t * t;
  if (disc < 0.0) return 0.0;
  const cd big_y = cd(uu + std::sqrt(disc), 0.0);
  if (std::abs(big_y) == 0.0) return 0.0;
  const cd y13 = std::exp(std::log(big_y) / 3.0);
  const cd num = y13 * y13 - std::cbrt(4.0) * t;
  const cd den = std::pow(2.0, 4.0 / 3.0) * std::sqrt(3.0) * pi * a * y13;
  return std::abs(num / den);
}

double smp_cauchy_density(const SmpParams& p, double u, double eps) {
  p.validate();
  const auto poly = cubic_in_u(p);
  const cd z(u, eps);
  std::array<cd, 4> c;
  for (int i = 0; i < 4; ++i) c[i] = poly[i][0] + poly[i][1] * z;
  // Companion roots of the monic cubic, then two Newton steps each.
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  for (int i = 0; i < 3; ++i) comp(i, 2) = -c[3 - i] / c[0];
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  double best = 0.0;
  for (int i = 0; i < 3; ++i) {
    cd g = es.eigenvalues()(i);
    for (int k = 0; k < 2; ++k) {
      const cd dp = eval_cubic_prime(c, g);
      if (std::abs(dp) == 0.0) break;
      g -= eval_cubic(c, g) / dp;
    }
    best = std::max(best, -g.imag());
  }
  if (best <= 1e3 * eps) return 0.0;
  return best / pi;
}

SmpDistribution::SmpDistribution(SmpParams p)
    : p_(p), atom_(smp_atom(p)), support_(smp_support(p)) {}

double SmpDistribution::density(double u) const {
  for (const Interval& iv : support_)
    if (u > iv.lo && u < iv.hi) return u == 0.0 ? 0.0 : smp_density(p_, u);
  return 0.0;
}

std::vector<double> SmpDistribution::breaks() const {
  std::vector<double> b;
  for (const Interval& iv : support_) {
    b.push_back(iv.lo);
    b.push_back(iv.hi);
  }
  b.push_back(0.0);
  std::sort(b.begin(), b.end());
  return b;
}

QuadratureResult SmpDistribution::integrate(const std::function<double(double)>& f,
                                            const QuadratureOptions& opts) const {
  QuadratureResult out;
  for (const Interval& iv : support_) {
    std::vector<double> br{iv.lo, iv.hi};
    if (iv.lo < 0.0 && 0.0 < iv.hi) br.push_back(0.0);
    const QuadratureResult r = integrate_pieces(
        [&](double u) { return f(u) * smp_density(p_, u); }, br, opts);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error_estimate;
    out.subdivisions += r.subdivisions;
  }
  return out;
}

namespace {

std::vector<double> continuous_cdf(const SmpDistribution& dist, const std::vector<double>& pts) {
  std::vector<double> out(pts.size());
  double acc = 0.0;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && pts[i] < pts[i - 1]) throw DomainError("cdf: points must be ascending");
    for (const Interval& iv : dist.support()) {
      const double a = std::max(prev, iv.lo), b = std::min(pts[i], iv.hi);
      if (!(a < b)) continue;
      std::vector<double> br{a, b};
      if (a < 0.0 && 0.0 < b) br.push_back(0.0);
      acc += integrate_pieces([&](double u) { return smp_density(dist.params(), u); }, br).value;
    }
    prev = pts[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::vector<double> SmpDistribution::cdf(const std::vector<double>& pts) const {
  std::vector<double> out = continuous_cdf(*this, pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] >= 0.0) out[i] += atom_;
  return out;
}

std::vector<double> SmpDistribution::cdf_left(const std::vector<double>& pts) const {
  std::vector<double> out = continuous_cdf(*this, pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] > 0.0) out[i] += atom_;
  return out;
}

QuadratureResult delta(const SmpParams& p) {
  const SmpDistribution dist(p);
  const QuadratureResult r = dist.integrate([](double u) { return std::abs(u); });
  if (!(r.abs_error_estimate <= 1e-8)) {
    throw NumericError(detail::concat("Delta quadrature error estimate ", r.abs_error_estimate,
                                      " after ", r.subdivisions, " subdivisions"));
  }
  return r;
}

double depol_g(double x) {
  if (!(x > 0.25)) throw DomainError(detail::concat("g(x) is defined for x > 1/4, got ", x));
  const double s = std::sqrt(4.0 * x - 1.0);
  // (x - 1) atan((3x - 1)/((x - 1) s)) is bounded and tends to 0 at x = 1.
  const double t1 = x == 1.0 ? 0.0 : (x - 1.0) * std::atan((3.0 * x - 1.0) / ((x - 1.0) * s));
  return 1.5 - x + s * (2.0 * x + 1.0) / (2.0 * pi * x) -
         (t1 + std::atan(s) + x * std::atan(1.0 / s)) / pi;
}

double depol_distance(double x) {
  if (!(x > 0.0)) throw DomainError(detail::concat("depol_distance needs x > 0, got ", x));
  if (x <= 0.25) return 2.0 * (1.0 - x);
  if (x < 1.0) return depol_g(x);
  return depol_g(x) + x - 1.0;
}

double brownian_halfangle(double t) {
  if (!(t >= 0.0)) throw DomainError(detail::concat("Brownian time must be >= 0, got ", t));
  if (t >= 4.0) return pi;
  return 0.5 * std::sqrt(t * (4.0 - t)) + std::acos(1.0 - t / 2.0);
}

double brownian_tau() {
  static const double tau = [] {
    double lo = 0.0, hi = 4.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (brownian_halfangle(mid) < pi / 2 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return tau;
}

double brownian_diamond_limit(double st) {
  if (!(st >= 0.0)) throw DomainError(detail::concat("s + t must be >= 0, got ", st));
  if (st >= brownian_tau()) return 2.0;
  return 2.0 * std::sin(brownian_halfangle(st));
}

}  // namespace qchan
