#ifndef QCHAN_FREEPROB_HPP
#define QCHAN_FREEPROB_HPP

#include <array>
#include <functional>
#include <vector>

#include "qchan/quadrature.hpp"

namespace qchan {

// Marchenko-Pastur law of parameter x: mean x, atom max(1 - x, 0) at 0.

double mp_density(double x, double u);
double mp_atom(double x);
std::array<double, 2> mp_support(double x);

/// Which random variable the (x, y) pair describes.
///   normalized: a/x - b/y, a ~ MP_x and b ~ MP_y free (mean 0, the law of
///               the rescaled Wishart difference).
///   raw:        a - b, the unscaled difference.
/// Both share the atom max(1 - x - y, 0) at 0.
enum class SmpScaling { normalized, raw };

struct SmpParams {
  double x = 1.0;
  double y = 1.0;
  SmpScaling scaling = SmpScaling::normalized;

  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Coefficients (a, b, c, d) of a G^3 + b G^2 + c G + d = 0, the equation
/// K(G) = u for the inverse Cauchy transform.
std::array<double, 4> smp_cubic(const SmpParams& p, double u);

/// Coefficients, lowest degree first, of minus the discriminant of the cubic
/// as a polynomial in u. The support is where it is >= 0.
std::vector<double> smp_support_polynomial(const SmpParams& p);

/// Closure of the absolutely continuous part's support: one or two intervals.
std::vector<Interval> smp_support(const SmpParams& p);

/// Threshold below which the raw family has a two-interval support (y <= x).
double smp_yc(double x);

/// Right edge u_+ of the raw family at y = x; the left edge is -u_+.
double smp_symmetric_edge(double x);

double smp_atom(const SmpParams& p);

/// Closed-form Cardano density at u != 0; zero outside the support.
double smp_density(const SmpParams& p, double u);

/// Density from Stieltjes inversion: solve the cubic at u + i eps and
/// take max(0, -Im G) / pi over the roots.
double smp_cauchy_density(const SmpParams& p, double u, double eps = 1e-9);

/// Distribution object bundling support, atom and density.
class SmpDistribution {
 public:
  explicit SmpDistribution(SmpParams p);

  const SmpParams& params() const { return p_; }
  double atom_mass() const { return atom_; }
  const std::vector<Interval>& support() const { return support_; }

  double density(double u) const;

  /// Support endpoints plus 0, sorted: natural quadrature breaks.
  std::vector<double> breaks() const;

  /// Integral of f * density over the support (atom excluded).
  QuadratureResult integrate(const std::function<double(double)>& f,
                             const QuadratureOptions& opts = {}) const;

  /// P(X <= u) for each u in `sorted_points` (must be ascending).
  std::vector<double> cdf(const std::vector<double>& sorted_points) const;

  /// P(X < u), i.e. the CDF without the atom when u = 0.
  std::vector<double> cdf_left(const std::vector<double>& sorted_points) const;

 private:
  SmpParams p_;
  double atom_;
  std::vector<Interval> support_;
};

/// Delta(x, y) = integral of |u| dSMP_{x,y}; the atom contributes nothing.
QuadratureResult delta(const SmpParams& p);

// Distance to the maximally depolarizing channel, integral |u/x - 1| dMP_x.
double depol_g(double x);
double depol_distance(double x);

// Unitary Brownian motion.
double brownian_halfangle(double t);
double brownian_diamond_limit(double st);
double brownian_tau();

}  // namespace qchan

#endif  // QCHAN_FREEPROB_HPP
