#ifndef QCHAN_ENSEMBLES_HPP
#define QCHAN_ENSEMBLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "qchan/ensemble_spec.hpp"
#include "qchan/matrix_core.hpp"
#include "qchan/rng.hpp"
#include "qchan/types.hpp"

namespace qchan {

/// A random Choi matrix and the recipe that produced it.
template <class Real>
struct ChannelSample {
  BipartiteOperator<Real> choi;
  EnsembleSpec spec;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

template <class Real>
CMatrix<Real> sample_ginibre(Index rows, Index cols, RngStream& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionError(detail::concat("sample_ginibre: shape ", rows, "x", cols));
  }
  CMatrix<Real> g(rows, cols);
  // Fill column by column so the draw order matches the storage order.
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) g(r, c) = Complex<Real>(rng.complex_normal());
  return g;
}

/// G G^* for an n x s Ginibre G, any s >= 1 (rank min(n, s)).
template <class Real>
CMatrix<Real> sample_wishart_matrix(Index n, Index s, RngStream& rng) {
  const CMatrix<Real> g = sample_ginibre<Real>(n, s, rng);
  CMatrix<Real> w = CMatrix<Real>::Zero(n, n);
  w.template selfadjointView<Eigen::Lower>().rankUpdate(g);
  w.template triangularView<Eigen::StrictlyUpper>() = w.adjoint();
  w.diagonal() = w.diagonal().real().template cast<Complex<Real>>();
  return w;
}

/// W = G G^* with G of size (d1 d2) x s, s >= d1 d2.
template <class Real>
BipartiteOperator<Real> sample_wishart(Index d1, Index d2, Index s, RngStream& rng) {
  EnsembleSpec{EnsembleKind::wishart, d1, d2, s, 0.0}.validate();
  return BipartiteOperator<Real>::hermitian(d1, d2, sample_wishart_matrix<Real>(d1 * d2, s, rng));
}

/// D = (X^{-1/2} (x) I) W (X^{-1/2} (x) I) with X = Tr_2 W, so Tr_2 D = I.
template <class Real>
BipartiteOperator<Real> partially_normalize(const BipartiteOperator<Real>& w,
                                            Real rel_tol = Real(1e-12)) {
  const CMatrix<Real> x = partial_trace(w, Factor::second);
  const CMatrix<Real> y = pinv_sqrt<Real>(x, rel_tol);
  CMatrix<Real> d = conjugate_first_factor<Real>(y, w.mat(), w.d2());
  d = (d + d.adjoint()).eval() * Real(0.5);
  return BipartiteOperator<Real>::hermitian(w.d1(), w.d2(), std::move(d));
}

template <class Real>
ChannelSample<Real> sample_hs_channel(Index d1, Index d2, Index s, RngStream& rng) {
  EnsembleSpec spec{EnsembleKind::hs_channel, d1, d2, s, 0.0};
  spec.validate();
  const BipartiteOperator<Real> w = sample_wishart<Real>(d1, d2, s, rng);
  return {partially_normalize(w), spec, rng.master_seed(), rng.stream_index()};
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) moved into Q.
template <class Real>
CMatrix<Real> sample_haar_unitary(Index d, RngStream& rng) {
  if (d < 1) throw DimensionError(detail::concat("sample_haar_unitary: d = ", d));
  const CMatrix<Real> g = sample_ginibre<Real>(d, d, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real>& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const Complex<Real> rjj = r(j, j);
    const Real mag = std::abs(rjj);
    if (mag > Real(0)) q.col(j) *= rjj / mag;
  }
  return q;
}

/// Phi(X) = Tr_env(V X V^*) with V the first d1 columns of a Haar unitary on
/// C^{d2} (x) C^{s}. The Choi matrix is K K^* where row (i, k) of K holds
/// the environment amplitudes of output k for input i.
template <class Real>
ChannelSample<Real> sample_stinespring_channel(Index d1, Index d2, Index s, RngStream& rng) {
  EnsembleSpec spec{EnsembleKind::stinespring_channel, d1, d2, s, 0.0};
  spec.validate();
  const CMatrix<Real> u = sample_haar_unitary<Real>(d2 * s, rng);
  CMatrix<Real> k(d1 * d2, s);
  for (Index i = 0; i < d1; ++i)
    for (Index o = 0; o < d2; ++o) k.row(i * d2 + o) = u.col(i).segment(o * s, s).transpose();
  CMatrix<Real> j = CMatrix<Real>::Zero(d1 * d2, d1 * d2);
  j.template selfadjointView<Eigen::Lower>().rankUpdate(k);
  j.template triangularView<Eigen::StrictlyUpper>() = j.adjoint();
  j.diagonal() = j.diagonal().real().template cast<Complex<Real>>();
  return {BipartiteOperator<Real>::hermitian(d1, d2, std::move(j)), spec, rng.master_seed(),
          rng.stream_index()};
}

inline Index brownian_default_steps(double t) {
  return std::max<Index>(100, static_cast<Index>(std::ceil(200.0 * t)));
}

/// Geometric Euler scheme U <- exp(i sqrt(t/steps) H) U, H from the GUE
/// normalized so that E Tr H^2 / d = 1. Exactly unitary at every step.
template <class Real>
CMatrix<Real> sample_unitary_brownian(Index d, double t, Index steps, RngStream& rng) {
  if (d < 1) throw DimensionError(detail::concat("sample_unitary_brownian: d = ", d));
  if (!(t >= 0.0)) throw DomainError(detail::concat("Brownian time must be >= 0, got ", t));
  if (steps < 1) throw DomainError(detail::concat("Brownian steps must be >= 1, got ", steps));
  CMatrix<Real> u = CMatrix<Real>::Identity(d, d);
  if (t == 0.0) return u;
  const Real h = static_cast<Real>(std::sqrt(t / static_cast<double>(steps)));
  const Real scale = Real(1) / std::sqrt(Real(2) * Real(d));
  for (Index step = 0; step < steps; ++step) {
    const CMatrix<Real> g = sample_ginibre<Real>(d, d, rng);
    const CMatrix<Real> herm = (g + g.adjoint()) * scale;
    const Spectrum<Real> sp = eigh<Real>(herm);
    CVector<Real> phase(d);
    for (Index i = 0; i < d; ++i) phase(i) = std::polar(Real(1), h * sp.eigenvalues(i));
    const CMatrix<Real> inc = sp.eigenvectors * phase.asDiagonal() * sp.eigenvectors.adjoint();
    u = (inc * u).eval();
  }
  return u;
}

/// Draws the channel described by `spec`. Haar and Brownian unitaries are
/// returned as the Choi matrix of the conjugation channel (d1 = d2 needed).
template <class Real>
ChannelSample<Real> sample_channel(const EnsembleSpec& spec, RngStream& rng) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::hs_channel:
      return sample_hs_channel<Real>(spec.d1, spec.d2, spec.s, rng);
    case EnsembleKind::stinespring_channel:
      return sample_stinespring_channel<Real>(spec.d1, spec.d2, spec.s, rng);
    case EnsembleKind::haar_unitary:
    case EnsembleKind::unitary_brownian: {
      if (spec.d1 != spec.d2) {
        throw DomainError(detail::concat(to_string(spec.kind), " channel needs d1 == d2, got ",
                                         spec.d1, " and ", spec.d2));
      }
      const CMatrix<Real> u =
          spec.kind == EnsembleKind::haar_unitary
              ? sample_haar_unitary<Real>(spec.d1, rng)
              : sample_unitary_brownian<Real>(spec.d1, spec.t, brownian_default_steps(spec.t), rng);
      return {unitary_choi<Real>(u), spec, rng.master_seed(), rng.stream_index()};
    }
    default:
      throw DomainError(detail::concat(to_string(spec.kind), " does not describe a channel"));
  }
}

}  // namespace qchan

#endif  // QCHAN_ENSEMBLES_HPP
