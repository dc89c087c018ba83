#include "qchan/ensembles.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qchan;
using std::numbers::pi;

namespace {

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// P(X <= u) for the Marchenko-Pastur law of parameter 1, by substituting
// u = 4 sin^2 theta in the density sqrt(u (4 - u)) / (2 pi u).
double mp1_cdf(double u) {
  if (u <= 0) return 0.0;
  if (u >= 4) return 1.0;
  const double th = std::asin(std::sqrt(u) / 2.0);
  return 2.0 / pi * (th + std::sin(th) * std::cos(th));
}

void expect_channel(const BipartiteOperator<double>& j, double tol) {
  const VectorXd ev = eigh(j, false).eigenvalues;
  EXPECT_GE(ev.minCoeff(), -1e-10 * ev.maxCoeff());
  EXPECT_LT(max_abs(oracle::trace_second(j.mat(), int(j.d1()), int(j.d2())) -
                    MatrixXcd::Identity(j.d1(), j.d1())),
            tol);
}

}  // namespace

TEST(ensemble_spec, validation) {
  EXPECT_NO_THROW((EnsembleSpec{EnsembleKind::hs_channel, 2, 3, 6, 0.0}.validate()));
  EXPECT_THROW((EnsembleSpec{EnsembleKind::hs_channel, 2, 3, 5, 0.0}.validate()), DomainError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::stinespring_channel, 2, 3, 7, 0.0}.validate()),
               DomainError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::unitary_brownian, 2, 2, 1, -1.0}.validate()),
               DomainError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::wishart, 0, 3, 6, 0.0}.validate()), Error);
  EXPECT_EQ(parse_ensemble_kind("hs_channel"), EnsembleKind::hs_channel);
  EXPECT_FALSE(parse_ensemble_kind("nope").has_value());
}

TEST(ginibre, shape_and_determinism) {
  RngStream a(1, 0), b(1, 0);
  const MatrixXcd g = sample_ginibre<double>(3, 5, a);
  EXPECT_EQ(g.rows(), 3);
  EXPECT_EQ(g.cols(), 5);
  EXPECT_EQ(g, sample_ginibre<double>(3, 5, b));
}

TEST(wishart, scalar_case_mean) {
  RngStream r(2, 0);
  const int n = 100000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double w = sample_wishart<double>(1, 1, 1, r).mat()(0, 0).real();
    s += w;
    s2 += w * w;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, 1.0, 4 * std::sqrt(var / n));
  EXPECT_NEAR(var, 1.0, 0.05);  // exponential law
}

TEST(wishart, psd_and_marchenko_pastur) {
  RngStream r(3, 0);
  const auto w = sample_wishart<double>(8, 8, 64, r);
  const VectorXd ev = eigh(w, false).eigenvalues;
  EXPECT_GE(ev.minCoeff(), -1e-10 * ev.maxCoeff());
  std::vector<double> xs(ev.data(), ev.data() + ev.size());
  for (double& x : xs) x /= 64.0;
  EXPECT_LT(oracle::ks(xs, mp1_cdf), 0.1);
}

TEST(hs_channel, is_a_channel) {
  for (std::uint64_t k = 0; k < 5; ++k) {
    RngStream r(4, k);
    const auto c = sample_hs_channel<double>(3, 4, 12 + Index(k), r);
    expect_channel(c.choi, 1e-9);
    EXPECT_NEAR(c.choi.mat().trace().real(), 3.0, 1e-8);
    EXPECT_EQ(c.stream_index, k);
  }
}

TEST(hs_channel, single_input_is_a_state) {
  RngStream r(5, 0);
  const auto c = sample_hs_channel<double>(1, 5, 5, r);
  EXPECT_NEAR(c.choi.mat().trace().real(), 1.0, 1e-12);
}

TEST(partially_normalize, matches_direct_formula) {
  RngStream r(6, 0);
  const auto w = sample_wishart<double>(2, 3, 6, r);
  const MatrixXcd x = oracle::trace_second(w.mat(), 2, 3);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(x);
  const MatrixXcd xi = es.operatorInverseSqrt();
  const MatrixXcd k = oracle::kron(xi, MatrixXcd::Identity(3, 3));
  EXPECT_LT(max_abs(partially_normalize(w).mat() - k * w.mat() * k), 1e-10);
}

TEST(haar, unitary_and_moments) {
  RngStream r(7, 0);
  const int n = 10000, d = 3;
  std::vector<double> first(n);
  for (int i = 0; i < n; ++i) {
    const MatrixXcd u = sample_haar_unitary<double>(d, r);
    ASSERT_TRUE(is_unitary<double>(u, 1e-12));
    first[i] = std::norm(u(0, 0));
  }
  double m = 0, v = 0;
  for (double x : first) m += x;
  m /= n;
  for (double x : first) v += (x - m) * (x - m);
  v /= n - 1;
  EXPECT_NEAR(m, 1.0 / d, 4 * std::sqrt(v / n));
}

TEST(haar, scalar_phase_uniform) {
  RngStream r(8, 0);
  std::vector<double> ph(10000);
  for (double& p : ph) {
    const auto u = sample_haar_unitary<double>(1, r)(0, 0);
    ASSERT_NEAR(std::abs(u), 1.0, 1e-14);
    p = std::arg(u);
  }
  EXPECT_LT(oracle::ks(ph, [](double t) { return (t + pi) / (2 * pi); }), 0.02);
}

TEST(stinespring, unitary_case) {
  RngStream r(9, 0);
  const auto c = sample_stinespring_channel<double>(3, 3, 1, r);
  const VectorXd ev = eigh(c.choi, false).eigenvalues;
  EXPECT_NEAR(ev(ev.size() - 1), 3.0, 1e-10);
  EXPECT_NEAR(ev.head(ev.size() - 1).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  expect_channel(c.choi, 1e-10);
}

TEST(stinespring, is_a_channel_and_averages_to_depolarizing) {
  const int n = 10000;
  MatrixXcd sum = MatrixXcd::Zero(4, 4), sum2 = MatrixXcd::Zero(4, 4);
  for (int i = 0; i < n; ++i) {
    RngStream r(10, std::uint64_t(i));
    const auto c = sample_stinespring_channel<double>(2, 2, 4, r);
    if (i < 20) expect_channel(c.choi, 1e-10);
    sum += c.choi.mat();
    sum2 += c.choi.mat().cwiseAbs2().cast<std::complex<double>>();
  }
  const MatrixXcd mean = sum / double(n);
  const Eigen::MatrixXd var = (sum2 / double(n)).real() - mean.cwiseAbs2();
  const MatrixXcd target = MatrixXcd::Identity(4, 4) / 2.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_LE(std::abs(mean(i, j) - target(i, j)), 4 * std::sqrt(var(i, j) / n) + 1e-12);
}

TEST(brownian, zero_time_is_identity) {
  RngStream r(11, 0);
  EXPECT_EQ(sample_unitary_brownian<double>(5, 0.0, 100, r), MatrixXcd::Identity(5, 5));
}

namespace {

std::vector<double> phases(const MatrixXcd& u) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(u, false);
  std::vector<double> p;
  for (Index i = 0; i < u.rows(); ++i) p.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

TEST(brownian, support_at_time_one) {
  RngStream r(12, 0);
  const MatrixXcd u = sample_unitary_brownian<double>(64, 1.0, 200, r);
  EXPECT_TRUE(is_unitary<double>(u, 1e-10));
  const double edge = 0.5 * std::sqrt(3.0) + std::acos(0.5);
  for (double p : phases(u)) EXPECT_LE(std::abs(p), edge + 0.15);
}

TEST(brownian, fills_circle_at_time_five) {
  RngStream r(13, 0);
  const auto p = phases(sample_unitary_brownian<double>(64, 5.0, 400, r));
  double gap = p.front() + 2 * pi - p.back();
  for (std::size_t i = 1; i < p.size(); ++i) gap = std::max(gap, p[i] - p[i - 1]);
  EXPECT_LE(gap, 0.5);
}

TEST(sample_channel, dispatch) {
  RngStream r(14, 0);
  const auto h = sample_channel<double>({EnsembleKind::haar_unitary, 3, 3, 1, 0.0}, r);
  expect_channel(h.choi, 1e-10);
  EXPECT_THROW(sample_channel<double>({EnsembleKind::haar_unitary, 2, 3, 1, 0.0}, r), DomainError);
  EXPECT_THROW(sample_channel<double>({EnsembleKind::wishart, 2, 2, 4, 0.0}, r), Error);
}
