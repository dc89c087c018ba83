#ifndef QCHAN_MATRIX_CORE_HPP
#define QCHAN_MATRIX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qchan/types.hpp"

namespace qchan {

/// Relative threshold below which eigenvalues of a PSD matrix are treated
/// as rounding noise and clipped to zero before functional calculus.
inline constexpr double kPsdClip = 1e-10;

/// Eigenvalues below -kPsdReject * lambda_max mean the input was not PSD.
inline constexpr double kPsdReject = 1e-8;

/// Eigendecomposition of a Hermitian matrix. Only the lower triangle is read.
template <class Real>
Spectrum<Real> eigh(const CMatrix<Real>& h, bool vectors = true) {
  if (h.rows() != h.cols()) {
    throw DimensionError(detail::concat("eigh needs a square matrix, got ", h.rows(), "x",
                                        h.cols()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(
      h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError(detail::concat("Hermitian eigensolver failed on a ", h.rows(), "x",
                                      h.cols(), " matrix"));
  }
  Spectrum<Real> s;
  s.eigenvalues = es.eigenvalues();
  if (vectors) s.eigenvectors = es.eigenvectors();
  return s;
}

template <class Real>
Spectrum<Real> eigh(const BipartiteOperator<Real>& a, bool vectors = true) {
  if (!a.is_hermitian()) throw DomainError("eigh requires a Hermitian-flagged operator");
  return eigh<Real>(a.mat(), vectors);
}

/// V f(diag) V^* for a spectrum with eigenvectors.
template <class Real, class F>
CMatrix<Real> apply_function(const Spectrum<Real>& s, F&& f) {
  if (!s.has_vectors()) throw DomainError("functional calculus needs eigenvectors");
  const RVector<Real> fv = s.eigenvalues.unaryExpr(std::forward<F>(f));
  const CMatrix<Real>& v = s.eigenvectors;
  CMatrix<Real> out = v * fv.template cast<Complex<Real>>().asDiagonal() * v.adjoint();
  return out;
}

/// Partial trace over one tensor factor of an operator on C^{d1} (x) C^{d2}.
template <class Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& a, Index d1, Index d2, Factor traced) {
  if (d1 < 1 || d2 < 1 || a.rows() != d1 * d2 || a.cols() != d1 * d2) {
    throw DimensionError(detail::concat("partial_trace: matrix is ", a.rows(), "x", a.cols(),
                                        " but d1*d2 = ", d1, "*", d2));
  }
  if (traced == Factor::second) {
    CMatrix<Real> out(d1, d1);
    for (Index j = 0; j < d1; ++j)
      for (Index i = 0; i < d1; ++i) out(i, j) = a.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) out += a.block(i * d2, i * d2, d2, d2);
  return out;
}

template <class Real>
CMatrix<Real> partial_trace(const BipartiteOperator<Real>& a, Factor traced) {
  return partial_trace<Real>(a.mat(), a.d1(), a.d2(), traced);
}

/// (Y (x) I_{d2}) W (Y (x) I_{d2})^* without forming the Kronecker product.
template <class Real>
CMatrix<Real> conjugate_first_factor(const CMatrix<Real>& y, const CMatrix<Real>& w, Index d2) {
  const Index d1 = y.rows();
  if (y.cols() != d1 || w.rows() != d1 * d2 || w.cols() != d1 * d2) {
    throw DimensionError(detail::concat("conjugate_first_factor: Y is ", y.rows(), "x",
                                        y.cols(), ", W is ", w.rows(), "x", w.cols(),
                                        ", d2=", d2));
  }
  const Index n = d1 * d2;
  CMatrix<Real> left = CMatrix<Real>::Zero(n, n);
  for (Index i = 0; i < d1; ++i)
    for (Index k = 0; k < d1; ++k)
      if (y(i, k) != Complex<Real>(0)) left.middleRows(i * d2, d2) += y(i, k) * w.middleRows(k * d2, d2);
  CMatrix<Real> out = CMatrix<Real>::Zero(n, n);
  for (Index j = 0; j < d1; ++j)
    for (Index l = 0; l < d1; ++l)
      if (y(j, l) != Complex<Real>(0))
        out.middleCols(j * d2, d2) += std::conj(y(j, l)) * left.middleCols(l * d2, d2);
  return out;
}

/// |A| for Hermitian A.
template <class Real>
BipartiteOperator<Real> hermitian_abs(const BipartiteOperator<Real>& a) {
  if (!a.is_hermitian()) throw DomainError("hermitian_abs requires a Hermitian-flagged operator");
  const Spectrum<Real> s = eigh(a);
  CMatrix<Real> m = apply_function(s, [](Real v) { return std::abs(v); });
  m = (m + m.adjoint()).eval() * Real(0.5);
  return BipartiteOperator<Real>::hermitian(a.d1(), a.d2(), std::move(m));
}

/// Right and left absolute values sqrt(A^*A) = V S V^*, sqrt(AA^*) = U S U^*.
template <class Real>
std::pair<BipartiteOperator<Real>, BipartiteOperator<Real>> right_left_abs(
    const BipartiteOperator<Real>& a) {
  Eigen::BDCSVD<CMatrix<Real>> svd(a.mat(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericError(detail::concat("SVD failed on a ", a.dim(), "x", a.dim(),
                                      " operator (max |entry| = ",
                                      a.mat().cwiseAbs().maxCoeff(), ")"));
  }
  const auto sv = svd.singularValues().template cast<Complex<Real>>().asDiagonal();
  CMatrix<Real> right = svd.matrixV() * sv * svd.matrixV().adjoint();
  CMatrix<Real> left = svd.matrixU() * sv * svd.matrixU().adjoint();
  right = (right + right.adjoint()).eval() * Real(0.5);
  left = (left + left.adjoint()).eval() * Real(0.5);
  return {BipartiteOperator<Real>::hermitian(a.d1(), a.d2(), std::move(right)),
          BipartiteOperator<Real>::hermitian(a.d1(), a.d2(), std::move(left))};
}

template <class Real>
RVector<Real> singular_values(const CMatrix<Real>& a) {
  Eigen::BDCSVD<CMatrix<Real>> svd(a);
  if (svd.info() != Eigen::Success) throw NumericError("SVD failed");
  return svd.singularValues();
}

/// Schatten 1-norm.
template <class Real>
Real trace_norm(const CMatrix<Real>& a) {
  if (a.size() == 0) return Real(0);
  return singular_values<Real>(a).sum();
}

/// Largest singular value.
template <class Real>
Real operator_norm(const CMatrix<Real>& a) {
  if (a.size() == 0) return Real(0);
  return singular_values<Real>(a).maxCoeff();
}

/// Hermitian operators go through the eigenvalues, which is cheaper.
template <class Real>
Real trace_norm(const BipartiteOperator<Real>& a) {
  if (a.is_hermitian()) return eigh(a, false).eigenvalues.cwiseAbs().sum();
  return trace_norm<Real>(a.mat());
}

template <class Real>
Real operator_norm(const BipartiteOperator<Real>& a) {
  if (a.is_hermitian()) return eigh(a, false).eigenvalues.cwiseAbs().maxCoeff();
  return operator_norm<Real>(a.mat());
}

/// Phi(X) = Tr_1[(X^T (x) I) J] = sum_ij X_ij Phi(|i><j|).
template <class Real>
CMatrix<Real> apply_channel(const BipartiteOperator<Real>& j, const CMatrix<Real>& x) {
  const Index d1 = j.d1(), d2 = j.d2();
  if (x.rows() != d1 || x.cols() != d1) {
    throw DimensionError(detail::concat("apply_channel: input must be ", d1, "x", d1, ", got ",
                                        x.rows(), "x", x.cols()));
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(d2, d2);
  for (Index c = 0; c < d1; ++c)
    for (Index r = 0; r < d1; ++r)
      if (x(r, c) != Complex<Real>(0)) out += x(r, c) * j.mat().block(r * d2, c * d2, d2, d2);
  return out;
}

/// J(Phi) = sum_ij |i><j| (x) Phi(|i><j|) for any callable Phi: d1xd1 -> d2xd2.
template <class Real, class Map>
BipartiteOperator<Real> choi_matrix(Map&& phi, Index d1, Index d2) {
  CMatrix<Real> j(d1 * d2, d1 * d2);
  for (Index c = 0; c < d1; ++c) {
    for (Index r = 0; r < d1; ++r) {
      CMatrix<Real> e = CMatrix<Real>::Zero(d1, d1);
      e(r, c) = Complex<Real>(1);
      const CMatrix<Real> img = phi(e);
      if (img.rows() != d2 || img.cols() != d2) {
        throw DimensionError(detail::concat("choi_matrix: map returned ", img.rows(), "x",
                                            img.cols(), ", expected ", d2, "x", d2));
      }
      j.block(r * d2, c * d2, d2, d2) = img;
    }
  }
  return BipartiteOperator<Real>(d1, d2, std::move(j));
}

/// Choi matrix of X -> U X U^*: the rank-one |U>><<U| with |U>> = sum_i |i> (x) U|i>.
template <class Real>
BipartiteOperator<Real> unitary_choi(const CMatrix<Real>& u) {
  const Index d = u.rows();
  if (u.cols() != d) throw DimensionError("unitary_choi needs a square matrix");
  CVector<Real> v(d * d);
  for (Index i = 0; i < d; ++i) v.segment(i * d, d) = u.col(i);
  CMatrix<Real> j = v * v.adjoint();
  return BipartiteOperator<Real>::hermitian(d, d, std::move(j));
}

/// Choi matrix of the maximally depolarizing channel X -> Tr(X)/d2 I: I/d2.
template <class Real>
BipartiteOperator<Real> depolarizing_choi(Index d1, Index d2) {
  return BipartiteOperator<Real>::hermitian(
      d1, d2, CMatrix<Real>::Identity(d1 * d2, d1 * d2) / Complex<Real>(Real(d2)));
}

/// Moore-Penrose P^{-1/2}. Eigenvalues at or below rel_tol * lambda_max are
/// treated as zero; anything below -kPsdReject * lambda_max is an error.
template <class Real>
CMatrix<Real> pinv_sqrt(const CMatrix<Real>& p, Real rel_tol = Real(1e-12)) {
  const Spectrum<Real> s = eigh<Real>(p);
  const Real lmax = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : Real(0);
  const Real lmin = s.eigenvalues.size() ? s.eigenvalues.minCoeff() : Real(0);
  if (lmin < -Real(kPsdReject) * lmax) {
    throw DomainError(detail::concat("pinv_sqrt: matrix is not PSD (lambda_min = ", lmin,
                                     ", lambda_max = ", lmax, ")"));
  }
  const Real cut = std::max(rel_tol, Real(kPsdClip)) * lmax;
  CMatrix<Real> out = apply_function(s, [cut](Real v) {
    return v > cut ? Real(1) / std::sqrt(v) : Real(0);
  });
  return (out + out.adjoint()) * Real(0.5);
}

template <class Real>
bool is_unitary(const CMatrix<Real>& u, Real tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix<Real> defect = u.adjoint() * u - CMatrix<Real>::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

/// A (x) B, for tests and small constructions.
template <class Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qchan

#endif  // QCHAN_MATRIX_CORE_HPP
