// Reference implementations used only by the tests. Everything here is
// written from the definitions with plain loops and std::mt19937, so it
// shares no code path with the library.
#ifndef QCHAN_TESTS_ORACLES_HPP
#define QCHAN_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat random_matrix(int rows, int cols, std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = C(n(g), n(g));
  return m;
}

inline Mat random_hermitian(int n, std::mt19937_64& g) {
  const Mat a = random_matrix(n, n, g);
  return (a + a.adjoint()) / 2.0;
}

inline Mat random_psd(int n, int rank, std::mt19937_64& g) {
  const Mat a = random_matrix(n, rank, g);
  return a * a.adjoint();
}

/// Unitary from Gram-Schmidt on a Gaussian matrix.
inline Mat random_unitary(int n, std::mt19937_64& g) {
  Mat q = random_matrix(n, n, g);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

/// (A (x) B)_{(i,k),(j,l)} = A_ij B_kl with row index i*db + k.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat trace_second(const Mat& a, int d1, int d2) {
  Mat out = Mat::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < d2; ++k) out(i, j) += a(i * d2 + k, j * d2 + k);
  return out;
}

inline Mat trace_first(const Mat& a, int d1, int d2) {
  Mat out = Mat::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i) out(k, l) += a(i * d2 + k, i * d2 + l);
  return out;
}

/// Sum of singular values through the Jacobi SVD.
inline double trace_norm(const Mat& a) {
  return Eigen::JacobiSVD<Mat>(a).singularValues().sum();
}

/// Matrix square root of a PSD matrix through Jacobi SVD (U S U^*).
inline Mat psd_sqrt(const Mat& p) {
  Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.singularValues().cwiseSqrt().cast<C>().asDiagonal() *
         svd.matrixU().adjoint();
}

/// Two-sided Kolmogorov distance between a sample and a continuous CDF.
inline double ks(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
  }
  return d;
}

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Density of a/x - b/y (or a - b when raw) for free a ~ MP_x, b ~ MP_y.
/// The Cauchy transform solves R(G) + 1/G = u with
///   R(z) = x/(x - z) - y/(y + z)   (scaled)
///   R(z) = x/(1 - z) - y/(1 + z)   (raw).
/// Clearing denominators gives a cubic in G; on the real axis inside the
/// support it has a conjugate pair and the density is |Im G| / pi.
inline double smp_density(double x, double y, bool raw, double u) {
  std::array<double, 4> c;  // c0 + c1 G + c2 G^2 + c3 G^3
  if (raw) {
    c = {1.0, x - y - u, x + y - 1.0, u};
  } else {
    c = {x * y, x - y - u * x * y, x + y - 1.0 - u * (x - y), u};
  }
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(1, 0) = comp(2, 1) = 1.0;
  for (int i = 0; i < 3; ++i) comp(i, 2) = -c[i] / c[3];
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp);
  double best = 0.0;
  for (int i = 0; i < 3; ++i) {
    C g = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const C f = ((c[3] * g + c[2]) * g + c[1]) * g + c[0];
      const C df = (3.0 * c[3] * g + 2.0 * c[2]) * g + c[1];
      if (std::abs(df) == 0.0) break;
      g -= f / df;
    }
    best = std::max(best, std::abs(g.imag()));
  }
  const double scale = std::max(1.0, std::abs(u));
  return best > 1e-9 * scale ? best / std::acos(-1.0) : 0.0;
}

}  // namespace oracle

#endif  // QCHAN_TESTS_ORACLES_HPP
