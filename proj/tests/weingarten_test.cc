#include "qchan/weingarten.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qchan/ensembles.hpp"

#include "oracles.hpp"

using namespace qchan;

namespace {

double M(const char* cls, Index d1, Index d2) {
  return mixed_moment(MomentPattern::from_class(cls), d1, d2);
}

// Covariance of Tr(rho_i rho_j) and Tr(rho_k rho_l).
double SM(const char* cls, Index d1, Index d2) {
  const auto p = MomentPattern::from_class(cls).indices;
  return M(cls, d1, d2) - pair_expectation(p[0] == p[1], d1, d2) *
                              pair_expectation(p[2] == p[3], d1, d2);
}

// Var(v) assembled from the symmetrized moments before simplification.
double var_from_moments(Index d1_, Index d2_, const SpectralMoments& m) {
  const double d1 = double(d1_), d2 = double(d2_), n = d1 * d2;
  auto s = [&](const char* c) { return SM(c, d1_, d2_); };
  const double m1 = m.mu1, m2 = m.mu2, m3 = m.mu3, m4 = m.mu4;
  const double sum =
      std::pow(n, 4) * std::pow(m1, 4) * s("0123") +
      2 * std::pow(n, 3) * m2 * m1 * m1 * (s("0012") + 2 * s("0102") - 3 * s("0123")) +
      4 * n * n * m3 * m1 * (s("0001") - s("0012") - 2 * s("0102") + 2 * s("0123")) +
      n * n * m2 * m2 *
          (s("0011") - 2 * s("0012") + 2 * s("0101") - 4 * s("0102") + 3 * s("0123")) +
      n * m4 *
          (s("0000") - 4 * s("0001") - s("0011") + 4 * s("0012") - 2 * s("0101") + 8 * s("0102") -
           6 * s("0123"));
  return sum / (d1 * d1 * std::pow(d2, 4));
}

}  // namespace

TEST(canonical_class, symmetries) {
  EXPECT_EQ(canonical_class({3, 3, 3, 3}), "0000");
  EXPECT_EQ(canonical_class({5, 2, 2, 2}), "0001");
  EXPECT_EQ(canonical_class({1, 0, 1, 0}), "0101");
  EXPECT_EQ(canonical_class({1, 2, 0, 0}), "0012");
  EXPECT_EQ(canonical_class({2, 1, 0, 1}), "0102");
  EXPECT_EQ(canonical_class({4, 7, 1, 9}), "0123");
  EXPECT_THROW(MomentPattern::from_class("0120"), DomainError);
}

TEST(mixed_moment, known_values) {
  EXPECT_NEAR(M("0000", 2, 2), 23.0 / 35.0, 1e-15);
  for (auto cls : kMomentClasses)
    for (Index d2 : {2, 3, 5}) {
      const std::string c(cls);
      if (c == "0123" && d2 < 4) continue;
      if (c == "0102" && d2 < 3) continue;
      EXPECT_NEAR(M(c.c_str(), 1, d2), 1.0, 1e-13) << c << " d2=" << d2;
    }
}

TEST(mixed_moment, undefined_denominators) {
  EXPECT_THROW(M("0123", 1, 3), DomainError);
  EXPECT_NO_THROW(M("0123", 2, 2));
}

TEST(single_moments, values_and_sum_rule) {
  EXPECT_NEAR(pair_expectation(true, 2, 2), 0.8, 1e-15);
  EXPECT_NEAR(pair_expectation(true, 1, 4), 1.0, 1e-15);
  EXPECT_NEAR(third_moment_expectation(2, 2), 0.7, 1e-15);
  EXPECT_NEAR(third_moment_expectation(1, 3), 1.0, 1e-15);
  for (Index d1 : {2, 3})
    for (Index d2 : {2, 4}) {
      const double n = double(d1 * d2);
      EXPECT_NEAR(pair_expectation(true, d1, d2) + (n - 1) * pair_expectation(false, d1, d2),
                  double(d2), 1e-13);
    }
}

TEST(mixed_moment, independent_monte_carlo) {
  // Haar unitaries from Gram-Schmidt with std::mt19937, not the library sampler.
  std::mt19937_64 g(2024);
  const int d1 = 2, d2 = 3, n = 100000;
  std::vector<double> xs(n);
  for (int t = 0; t < n; ++t) {
    const auto u = oracle::random_unitary(d1 * d2, g);
    auto rho = [&](int c) {
      oracle::Mat r(d1, d2);
      for (int i = 0; i < d1; ++i)
        for (int k = 0; k < d2; ++k) r(i, k) = u(i * d2 + k, c);
      return oracle::Mat(r * r.adjoint());
    };
    const oracle::Mat r0 = rho(0), r1 = rho(1);
    xs[t] = (r0 * r0).trace().real() * (r0 * r1).trace().real();
  }
  double m = 0, v = 0;
  for (double x : xs) m += x;
  m /= n;
  for (double x : xs) v += (x - m) * (x - m);
  const double se = std::sqrt(v / (n - 1) / n);
  EXPECT_NEAR(m, M("0001", d1, d2), 4 * se);
}

TEST(mc_mixed_moment, gate_and_scaling) {
  const auto e = mc_mixed_moment(MomentPattern::from_class("0000"), 2, 2, 100000, 3);
  EXPECT_NEAR(e.estimate, 23.0 / 35.0, 4 * e.std_error);
  const auto a = mc_mixed_moment(MomentPattern::from_class("0011"), 2, 3, 4000, 4);
  const auto b = mc_mixed_moment(MomentPattern::from_class("0011"), 2, 3, 16000, 4);
  EXPECT_NEAR(a.std_error / b.std_error, 2.0, 0.2);
  EXPECT_THROW(mc_mixed_moment(MomentPattern::from_class("0123"), 1, 2, 1000, 1), DimensionError);
  EXPECT_NO_THROW(mc_mixed_moment(MomentPattern::from_class("0123"), 2, 2, 100, 1));
  EXPECT_THROW(mc_mixed_moment(MomentPattern::from_class("0000"), 2, 2, 10, 1), DomainError);
}

TEST(var_v, matches_symmetrized_moments) {
  const VectorXd lin = VectorXd::LinSpaced(6, 0, 5);
  EXPECT_NEAR(var_v_exact(2, 3, SpectralMoments::of(lin)),
              var_from_moments(2, 3, SpectralMoments::of(lin)), 1e-12);
  const VectorXd sq = VectorXd::LinSpaced(12, 1, 12).array().square();
  const auto mu = SpectralMoments::of(sq);
  EXPECT_NEAR(var_v_exact(3, 4, mu) / var_from_moments(3, 4, mu), 1.0, 1e-9);
}

TEST(var_v, flat_spectrum_is_zero) {
  EXPECT_NEAR(var_v_exact(2, 3, SpectralMoments::of(VectorXd::Constant(6, 2.5))), 0.0, 1e-15);
}

TEST(var_v, asymptotic_ratio) {
  const Index d = 40;
  const VectorXd lin = VectorXd::LinSpaced(d * d, 0.0, 1.0);
  const auto mu = SpectralMoments::of(lin);
  const double r = var_v_exact(d, d, mu) / var_v_leading(d, d, mu);
  EXPECT_GE(r, 0.9);
  EXPECT_LE(r, 1.1);
}

TEST(var_v, monte_carlo) {
  const VectorXd lin = VectorXd::LinSpaced(6, 0, 5);
  const auto e = mc_var_v(2, 3, lin, 100000, 5, 4);
  EXPECT_NEAR(e.estimate, var_v_exact(2, 3, SpectralMoments::of(lin)), 4 * e.std_error);
  EXPECT_THROW(var_v_exact(1, 3, SpectralMoments::of(VectorXd::Ones(3))), DomainError);
}

TEST(flatness, identity) {
  const auto s = flatness_stats(BipartiteOperator<double>::hermitian(3, 2, MatrixXcd::Identity(6, 6)));
  EXPECT_NEAR(s.b, 1.0, 1e-15);
  EXPECT_NEAR(s.v, 0.0, 1e-15);
}

TEST(flatness, chebyshev_bound_holds) {
  std::mt19937_64 g(6);
  for (int k = 0; k < 100; ++k) {
    const auto a = BipartiteOperator<double>::hermitian(4, 4, oracle::random_hermitian(16, g));
    const auto s = flatness_stats(a);
    EXPECT_LE(s.lambda_max, s.chebyshev_bound(4) + 1e-12);
  }
}
