#include "qchan/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "qchan/types.hpp"

namespace qchan {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-Legendre 7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kron * h;
  double err = std::abs((kron - gauss) * h);
  if (!std::isfinite(value)) {
    throw NumericError(detail::concat("integrand is not finite on [", a, ", ", b, "]"));
  }
  return {a, b, value, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  heap.push(first);
  double total = first.value, err = first.error;
  std::size_t panels = 1;
  auto done = [&] { return err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!done()) {
    if (panels >= opts.max_subdivisions) {
      throw NumericError(detail::concat("quadrature on [", a, ", ", b, "] did not converge: ",
                                        panels, " panels, error estimate ", err,
                                        " above tolerance ", opts.abs_tol));
    }
    const Panel p = heap.top();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      // Panel is at floating-point resolution; accept what we have.
      break;
    }
    heap.pop();
    const Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    total += l.value + r.value - p.value;
    heap.push(l);
    heap.push(r);
    ++panels;
    err += l.error + r.error - p.error;
    if (done() || panels % 256 == 0) {
      // Recompute from scratch so cancellation drift cannot fake convergence.
      err = 0.0;
      std::priority_queue<Panel> copy = heap;
      while (!copy.empty()) {
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  // Final value summed from the panels, largest error first.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  out.value = sign * sum;
  out.abs_error_estimate = err;
  out.subdivisions = panels;
  return out;
}

QuadratureResult integrate_pieces(const std::function<double(double)>& f,
                                  std::vector<double> breaks, const QuadratureOptions& opts) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  QuadratureResult out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const QuadratureResult r = integrate(f, breaks[i], breaks[i + 1], opts);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error_estimate;
    out.subdivisions += r.subdivisions;
  }
  return out;
}

}  // namespace qchan
