#ifndef QCHAN_WEINGARTEN_HPP
#define QCHAN_WEINGARTEN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qchan/matrix_core.hpp"
#include "qchan/types.hpp"

namespace qchan {

// Haar moments of reduced states. For a Haar unitary U on C^{d1} (x) C^{d2}
// with columns |u_i>, rho_i = Tr_2 |u_i><u_i| and
//   M(i, j, k, l) = E Tr(rho_i rho_j) Tr(rho_k rho_l).
// The value depends only on the equality pattern of the labels, up to
// i <-> j, k <-> l and (i, j) <-> (k, l); the seven classes are
//   0000 0001 0011 0012 0101 0102 0123.

/// Canonical class name of a label tuple, e.g. {3, 1, 1, 3} -> "0101".
std::string canonical_class(const std::array<int, 4>& labels);

struct MomentPattern {
  std::array<int, 4> indices{};

  std::string canonical() const { return canonical_class(indices); }
  /// Number of distinct columns the pattern touches.
  int distinct() const;

  static MomentPattern from_class(std::string_view cls);
};

inline constexpr std::array<std::string_view, 7> kMomentClasses = {
    "0000", "0001", "0011", "0012", "0101", "0102", "0123"};

double mixed_moment(const MomentPattern& pattern, Index d1, Index d2);

/// E Tr(rho_0 rho_0) when `equal`, else E Tr(rho_0 rho_1).
double pair_expectation(bool equal, Index d1, Index d2);

/// E Tr rho_0^3.
double third_moment_expectation(Index d1, Index d2);

/// mu_k = (1/(d1 d2)) sum_i lambda_i^k.
struct SpectralMoments {
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0, mu4 = 0.0;

  static SpectralMoments of(const VectorXd& lambda);
};

/// Exact Var_U(v), where v is the eigenvalue variance of
/// B = Tr_2(U diag(lambda) U^*) / d2 and mu are the moments of lambda.
double var_v_exact(Index d1, Index d2, const SpectralMoments& mu);

/// Leading term 2 (mu1^2 - mu2)^2 / (d1^2 d2^4).
double var_v_leading(Index d1, Index d2, const SpectralMoments& mu);

struct FlatnessStats {
  double b = 0.0;  // mean eigenvalue of B
  double v = 0.0;  // eigenvalue variance of B
  double lambda_max = 0.0;
  double lambda_min = 0.0;

  /// b + sqrt(v d1): Chebyshev bound on lambda_max.
  double chebyshev_bound(Index d1) const;
};

/// Statistics of B = Tr_2(A) / d2 for Hermitian A.
template <class Real>
FlatnessStats flatness_stats(const BipartiteOperator<Real>& a) {
  if (!a.is_hermitian()) throw DomainError("flatness_stats needs a Hermitian operator");
  const CMatrix<Real> b = partial_trace(a, Factor::second) / Complex<Real>(Real(a.d2()));
  const RVector<Real> ev = eigh<Real>(b, false).eigenvalues;
  FlatnessStats s;
  const double n = static_cast<double>(ev.size());
  s.b = static_cast<double>(ev.sum()) / n;
  s.v = static_cast<double>((ev.array() - Real(s.b)).square().sum()) / n;
  s.lambda_min = static_cast<double>(ev.minCoeff());
  s.lambda_max = static_cast<double>(ev.maxCoeff());
  return s;
}

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean of Tr(rho_i rho_j) Tr(rho_k rho_l) over n Haar unitaries,
/// trial t drawing from stream (seed, t).
McEstimate mc_mixed_moment(const MomentPattern& pattern, Index d1, Index d2, std::size_t n,
                           std::uint64_t seed, unsigned threads = 1);

/// Several patterns from the same unitaries.
std::vector<McEstimate> mc_mixed_moments(const std::vector<MomentPattern>& patterns, Index d1,
                                         Index d2, std::size_t n, std::uint64_t seed,
                                         unsigned threads = 1);

/// Sample variance of v over n Haar unitaries; the standard error uses the
/// fourth central moment.
McEstimate mc_var_v(Index d1, Index d2, const VectorXd& lambda, std::size_t n,
                    std::uint64_t seed, unsigned threads = 1);

}  // namespace qchan

#endif  // QCHAN_WEINGARTEN_HPP
