#ifndef QCHAN_QUADRATURE_HPP
#define QCHAN_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace qchan {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t subdivisions = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The integrand is
/// never evaluated at the endpoints, so integrable edge singularities are
/// fine. Throws NumericError when the budget runs out above tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [breaks.front(), breaks.back()], treating every break point
/// as a panel boundary. Each panel gets the full tolerance.
QuadratureResult integrate_pieces(const std::function<double(double)>& f,
                                  std::vector<double> breaks,
                                  const QuadratureOptions& opts = {});

}  // namespace qchan

#endif  // QCHAN_QUADRATURE_HPP
