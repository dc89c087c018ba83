#ifndef QCHAN_DIAMOND_HPP
#define QCHAN_DIAMOND_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qchan/ensembles.hpp"
#include "qchan/matrix_core.hpp"
#include "qchan/planar.hpp"
#include "qchan/rng.hpp"
#include "qchan/types.hpp"

namespace qchan {

struct DiamondBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> seesaw;  // absent when J is not Hermitian
  double gap = 0.0;              // upper - max(lower, seesaw)
  int iterations = 0;
  bool converged = false;

  std::string to_json() const;
};

/// Both closed-form bounds from a single eigendecomposition of Hermitian J:
/// lower = sum |lambda| / d1, upper = ||Tr_2 |J| ||_inf.
template <class Real>
std::pair<Real, Real> hermitian_diamond_bounds(const BipartiteOperator<Real>& j) {
  if (!j.is_hermitian()) throw DomainError("hermitian_diamond_bounds needs a Hermitian operator");
  const Index d1 = j.d1(), d2 = j.d2();
  const Spectrum<Real> s = eigh(j);
  const Real lower = s.eigenvalues.cwiseAbs().sum() / Real(d1);
  // Tr_2 (V |L| V^*) = sum_k V_k |L| V_k^*, V_k the rows (i d2 + k) of V.
  CMatrix<Real> scaled = s.eigenvectors;
  for (Index c = 0; c < scaled.cols(); ++c) scaled.col(c) *= std::sqrt(std::abs(s.eigenvalues(c)));
  CMatrix<Real> reduced = CMatrix<Real>::Zero(d1, d1);
  for (Index k = 0; k < d2; ++k) {
    CMatrix<Real> vk(d1, scaled.cols());
    for (Index i = 0; i < d1; ++i) vk.row(i) = scaled.row(i * d2 + k);
    reduced.template selfadjointView<Eigen::Lower>().rankUpdate(vk);
  }
  reduced.template triangularView<Eigen::StrictlyUpper>() = reduced.adjoint();
  const Real upper = eigh<Real>(reduced, false).eigenvalues.cwiseAbs().maxCoeff();
  return {lower, upper};
}

/// (1/d1) ||J||_1.
template <class Real>
Real diamond_lower(const BipartiteOperator<Real>& j) {
  return trace_norm(j) / Real(j.d1());
}

/// ||Tr_2 |J| ||_inf for Hermitian J; otherwise the average of the operator
/// norms of Tr_2 sqrt(J^*J) and Tr_2 sqrt(JJ^*).
template <class Real>
Real diamond_upper(const BipartiteOperator<Real>& j) {
  if (j.is_hermitian()) return hermitian_diamond_bounds(j).second;
  const auto [right, left] = right_left_abs(j);
  const Real r = operator_norm<Real>(partial_trace(right, Factor::second));
  const Real l = operator_norm<Real>(partial_trace(left, Factor::second));
  return (r + l) / Real(2);
}

/// One see-saw run from a given K (the input state is rho = K^* K, ||K||_F = 1).
template <class Real>
struct SeesawTrace {
  std::vector<Real> values;  // objective after each step, starting with K0
  CMatrix<Real> k;
  int iterations = 0;
  bool converged = false;
};

/// Value of ||(K (x) I) J (K (x) I)^*||_1.
template <class Real>
Real seesaw_objective(const BipartiteOperator<Real>& j, const CMatrix<Real>& k) {
  const CMatrix<Real> m = conjugate_first_factor<Real>(k, j.mat(), j.d2());
  const CMatrix<Real> h = (m + m.adjoint()) * Real(0.5);
  return eigh<Real>(h, false).eigenvalues.cwiseAbs().sum();
}

/// Alternating ascent. Given K, S = sign(M) for M = (K (x) I) J (K (x) I)^*;
/// Tr(S M) is then a Hermitian form k^* Q k in vec(K), and the next K is the
/// top eigenvector of Q. Each step can only increase ||M||_1.
template <class Real>
SeesawTrace<Real> seesaw_ascent(const BipartiteOperator<Real>& j, CMatrix<Real> k, double tol,
                                int max_iter) {
  if (!j.is_hermitian()) throw DomainError("see-saw requires a Hermitian-flagged Choi matrix");
  const Index d1 = j.d1(), d2 = j.d2();
  if (k.rows() != d1 || k.cols() != d1) {
    throw DimensionError(detail::concat("see-saw start must be ", d1, "x", d1));
  }
  k /= k.norm();
  SeesawTrace<Real> out;
  CMatrix<Real> q(d1 * d1, d1 * d1);
  Real best = -std::numeric_limits<Real>::infinity();
  for (int it = 0;; ++it) {
    CMatrix<Real> m = conjugate_first_factor<Real>(k, j.mat(), d2);
    m = (m + m.adjoint()).eval() * Real(0.5);
    const Spectrum<Real> sp = eigh<Real>(m);
    const Real value = sp.eigenvalues.cwiseAbs().sum();
    out.values.push_back(value);
    const Real prev = best;
    if (value > best) {
      best = value;
      out.k = k;
    }
    if (it > 0 && value - prev <= Real(tol) * std::max(Real(1), std::abs(prev))) {
      out.converged = true;
      break;
    }
    if (it >= max_iter) break;
    out.iterations = it + 1;

    const CMatrix<Real> sign =
        apply_function(sp, [](Real v) { return v >= Real(0) ? Real(1) : Real(-1); });
    // Q_{(q,j),(p,i)} = Tr(S_{qp} J_{ij}) with vec index p * d1 + i.
    for (Index p = 0; p < d1; ++p) {
      for (Index r = 0; r < d1; ++r) {
        const auto sblk = sign.block(r * d2, p * d2, d2, d2);
        for (Index i = 0; i < d1; ++i) {
          for (Index c = 0; c < d1; ++c) {
            const auto jblk = j.mat().block(i * d2, c * d2, d2, d2);
            q(r * d1 + c, p * d1 + i) = sblk.cwiseProduct(jblk.transpose()).sum();
          }
        }
      }
    }
    q = (q + q.adjoint()).eval() * Real(0.5);
    const Spectrum<Real> qs = eigh<Real>(q);
    const Index top = qs.eigenvalues.size() - 1;
    for (Index p = 0; p < d1; ++p)
      for (Index i = 0; i < d1; ++i) k(p, i) = qs.eigenvectors(p * d1 + i, top);
  }
  return out;
}

struct SeesawOptions {
  double tol = 1e-9;
  int max_iter = 500;
  int restarts = 4;
};

/// Certified sandwich plus see-saw primal value. The first run starts at
/// rho = I/d1 (the lower bound itself); restarts begin at random pure states.
template <class Real>
DiamondBounds seesaw_diamond(const BipartiteOperator<Real>& j, const SeesawOptions& opts,
                             RngStream& rng) {
  if (!j.is_hermitian()) throw DomainError("see-saw requires a Hermitian-flagged Choi matrix");
  const Index d1 = j.d1();
  const auto [lower, upper] = hermitian_diamond_bounds(j);
  DiamondBounds b;
  b.lower = static_cast<double>(lower);
  b.upper = static_cast<double>(upper);
  double best = -1.0;
  for (int r = 0; r <= opts.restarts; ++r) {
    CMatrix<Real> k0;
    if (r == 0) {
      k0 = CMatrix<Real>::Identity(d1, d1);
    } else {
      CVector<Real> psi = sample_ginibre<Real>(d1, 1, rng);
      psi /= psi.norm();
      k0 = psi * psi.adjoint();
    }
    const SeesawTrace<Real> t = seesaw_ascent(j, std::move(k0), opts.tol, opts.max_iter);
    double v = 0.0;
    for (Real x : t.values) v = std::max(v, static_cast<double>(x));
    if (v > best) {
      best = v;
      b.iterations = t.iterations;
      b.converged = t.converged;
    }
  }
  b.seesaw = best;
  b.gap = b.upper - std::max(b.lower, best);
  return b;
}

/// Closed-form bounds only (no see-saw); works for non-Hermitian J.
template <class Real>
DiamondBounds diamond_bounds(const BipartiteOperator<Real>& j) {
  DiamondBounds b;
  if (j.is_hermitian()) {
    const auto [lo, up] = hermitian_diamond_bounds(j);
    b.lower = static_cast<double>(lo);
    b.upper = static_cast<double>(up);
  } else {
    b.lower = static_cast<double>(diamond_lower(j));
    b.upper = static_cast<double>(diamond_upper(j));
  }
  b.gap = b.upper - b.lower;
  b.converged = true;
  return b;
}

struct UnitaryPairStats {
  std::vector<double> phases;  // eigenphases of U^* V in [0, 2 pi), ascending
  double alpha = 0.0;          // half of the smallest arc holding the spectrum
  double nu = 0.0;             // distance from 0 to the convex hull of the spectrum
  double R = 0.0;              // radius of the smallest enclosing disc
  double diamond = 0.0;
};

/// 2 sin(alpha) when alpha < pi/2, else 2.
inline double arc_diamond(double alpha) {
  return alpha < std::numbers::pi / 2 ? 2.0 * std::sin(alpha) : 2.0;
}

/// Geometry of a set of eigenphases (any order, any range).
UnitaryPairStats phase_stats(std::vector<double> phases);

template <class Real>
UnitaryPairStats unitary_pair_stats(const CMatrix<Real>& u, const CMatrix<Real>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError(detail::concat("unitary_pair_stats: shapes ", u.rows(), "x", u.cols(),
                                        " and ", v.rows(), "x", v.cols()));
  }
  if (!is_unitary<Real>(u, Real(1e-8)) || !is_unitary<Real>(v, Real(1e-8))) {
    throw DomainError("unitary_pair_stats: inputs must be unitary within 1e-8");
  }
  const CMatrix<Real> w = u.adjoint() * v;
  Eigen::ComplexEigenSolver<CMatrix<Real>> es(w, false);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on U^* V");
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(w.rows()));
  for (Index i = 0; i < w.rows(); ++i) phases.push_back(static_cast<double>(std::arg(es.eigenvalues()(i))));
  return phase_stats(std::move(phases));
}

/// Optimal probability of telling two channels apart in one use.
double success_probability(double diamond);

/// 2 - 2 ||J||_inf / d for PSD J with d1 = d2 = d.
template <class Real>
Real nearest_unitary_lower(const BipartiteOperator<Real>& j) {
  if (j.d1() != j.d2()) {
    throw DimensionError(detail::concat("nearest_unitary_lower needs d1 == d2, got ", j.d1(), " and ",
                                        j.d2()));
  }
  return Real(2) - Real(2) * operator_norm(j) / Real(j.d1());
}

}  // namespace qchan

#endif  // QCHAN_DIAMOND_HPP
