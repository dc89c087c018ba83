#include "qchan/diamond.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"

using namespace qchan;
using std::numbers::pi;

namespace {

using Op = BipartiteOperator<double>;

// Upper bound computed the long way: |J| from an SVD, then Tr_2 by index loops.
double upper_oracle(const MatrixXcd& j, int d1, int d2) {
  const MatrixXcd a = oracle::psd_sqrt(j.adjoint() * j);
  const MatrixXcd t = oracle::trace_second(a, d1, d2);
  return Eigen::JacobiSVD<MatrixXcd>(t).singularValues()(0);
}

Op hs_difference(Index d, RngStream& rng) {
  const auto a = sample_hs_channel<double>(d, d, d * d, rng);
  const auto b = sample_hs_channel<double>(d, d, d * d, rng);
  return Op::hermitian(d, d, a.choi.mat() - b.choi.mat());
}

}  // namespace

TEST(bounds, zero) {
  const Op z = Op::hermitian(2, 2, MatrixXcd::Zero(4, 4));
  const auto [lo, up] = hermitian_diamond_bounds(z);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(up, 0.0);
}

TEST(bounds, identity_channel) {
  const auto j = unitary_choi<double>(MatrixXcd::Identity(3, 3));
  EXPECT_NEAR(oracle::trace_norm(j.mat()), 3.0, 1e-12);
  EXPECT_NEAR(diamond_lower(j), 1.0, 1e-12);
  EXPECT_NEAR(diamond_upper(j), 1.0, 1e-12);
}

TEST(bounds, agree_with_oracles) {
  std::mt19937_64 g(1);
  for (int k = 0; k < 10; ++k) {
    const MatrixXcd h = oracle::random_hermitian(6, g);
    const auto [lo, up] = hermitian_diamond_bounds(Op::hermitian(2, 3, h));
    EXPECT_NEAR(lo, oracle::trace_norm(h) / 2.0, 1e-10);
    EXPECT_NEAR(up, upper_oracle(h, 2, 3), 1e-9);
    EXPECT_LE(lo, up + 1e-9);
  }
}

TEST(bounds, non_hermitian) {
  std::mt19937_64 g(2);
  const MatrixXcd a = oracle::random_matrix(6, 6, g);
  const Op j(3, 2, a);
  EXPECT_NEAR(diamond_lower(j), oracle::trace_norm(a) / 3.0, 1e-10);
  const MatrixXcd r = oracle::psd_sqrt(a.adjoint() * a), l = oracle::psd_sqrt(a * a.adjoint());
  auto top = [](const MatrixXcd& m) { return Eigen::JacobiSVD<MatrixXcd>(m).singularValues()(0); };
  const double expected =
      0.5 * (top(oracle::trace_second(r, 3, 2)) + top(oracle::trace_second(l, 3, 2)));
  EXPECT_NEAR(diamond_upper(j), expected, 1e-9);
  const DiamondBounds b = diamond_bounds(j);
  EXPECT_FALSE(b.seesaw.has_value());
  EXPECT_LE(b.lower, b.upper + 1e-9);
}

TEST(bounds, flat_partial_trace_closes_gap) {
  // Difference of two unitary channels: |J| has a flat partial trace only
  // when the difference is orthogonal; here J = |U>><<U| - |V>><<V| for
  // commuting diagonal unitaries with orthogonal Choi vectors.
  const int d = 2;
  MatrixXcd u = MatrixXcd::Identity(d, d), v = MatrixXcd::Identity(d, d);
  v(1, 1) = -1.0;
  const MatrixXcd j = unitary_choi<double>(u).mat() - unitary_choi<double>(v).mat();
  const auto [lo, up] = hermitian_diamond_bounds(Op::hermitian(d, d, j));
  EXPECT_NEAR(lo, up, 1e-12);
  EXPECT_NEAR(lo, 2.0, 1e-12);
}

TEST(bounds, hs_difference_near_limit) {
  RngStream rng(3, 0);
  const Op j = hs_difference(40, rng);
  const auto [lo, up] = hermitian_diamond_bounds(j);
  EXPECT_NEAR(lo, 0.5 + 2 / pi, 0.06);
  EXPECT_NEAR(up, 0.5 + 2 / pi, 0.08);
}

TEST(seesaw, single_channel_is_one) {
  RngStream rng(4, 0);
  const auto c = sample_hs_channel<double>(3, 3, 9, rng);
  const DiamondBounds b = seesaw_diamond(c.choi, SeesawOptions{}, rng);
  ASSERT_TRUE(b.seesaw.has_value());
  EXPECT_NEAR(*b.seesaw, 1.0, 1e-8);
}

TEST(seesaw, sandwich_on_random_differences) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    RngStream rng(5, k);
    const Op j = hs_difference(3, rng);
    const DiamondBounds b = seesaw_diamond(j, SeesawOptions{}, rng);
    EXPECT_LE(b.lower, *b.seesaw + 1e-12);
    EXPECT_LE(*b.seesaw, b.upper + 1e-7);
    EXPECT_GE(b.gap, -1e-7);
  }
}

TEST(seesaw, monotone_ascent) {
  RngStream rng(6, 0);
  const Op j = hs_difference(3, rng);
  const auto t = seesaw_ascent(j, MatrixXcd(MatrixXcd::Identity(3, 3) / std::sqrt(3.0)), 1e-12, 200);
  for (std::size_t i = 1; i < t.values.size(); ++i) EXPECT_GE(t.values[i], t.values[i - 1] - 1e-12);
}

TEST(seesaw, objective_is_trace_norm_at_state) {
  // For K = sqrt(rho), the objective is ||(K (x) I) J (K (x) I)||_1.
  std::mt19937_64 g(7);
  const MatrixXcd h = oracle::random_hermitian(6, g);
  const MatrixXcd rho = oracle::random_psd(2, 2, g);
  const MatrixXcd k = oracle::psd_sqrt(rho / rho.trace());
  const MatrixXcd kk = oracle::kron(k, MatrixXcd::Identity(3, 3));
  EXPECT_NEAR(seesaw_objective(Op::hermitian(2, 3, h), k), oracle::trace_norm(kk * h * kk), 1e-10);
}

TEST(seesaw, tensor_products_saturate_upper) {
  std::mt19937_64 g(8);
  for (int k = 0; k < 5; ++k) {
    const MatrixXcd j = oracle::kron(oracle::random_hermitian(2, g), oracle::random_hermitian(3, g));
    RngStream rng(8, std::uint64_t(k));
    const DiamondBounds b = seesaw_diamond(Op::hermitian(2, 3, j), SeesawOptions{}, rng);
    EXPECT_NEAR(*b.seesaw, b.upper, 1e-4);
  }
}

TEST(seesaw, unitary_pairs_match_arc_formula) {
  for (std::uint64_t k = 0; k < 10; ++k) {
    RngStream rng(9, k);
    const MatrixXcd u = sample_haar_unitary<double>(4, rng);
    // A nearby V keeps the spectrum of U^* V inside a half circle.
    const MatrixXcd v = u * sample_unitary_brownian<double>(4, 0.1, 100, rng);
    const Op j = Op::hermitian(4, 4, unitary_choi<double>(u).mat() - unitary_choi<double>(v).mat());
    SeesawOptions o;
    o.tol = 1e-13;
    o.max_iter = 5000;
    const DiamondBounds b = seesaw_diamond(j, o, rng);
    EXPECT_NEAR(*b.seesaw, unitary_pair_stats<double>(u, v).diamond, 1e-5);
  }
}

TEST(unitary_pair, identical) {
  RngStream rng(10, 0);
  const MatrixXcd u = sample_haar_unitary<double>(3, rng);
  const auto s = unitary_pair_stats<double>(u, u);
  EXPECT_NEAR(s.diamond, 0.0, 1e-12);
  EXPECT_NEAR(s.nu, 1.0, 1e-12);
  EXPECT_NEAR(s.R, 0.0, 1e-12);
}

TEST(unitary_pair, two_phases) {
  const auto s = phase_stats({pi / 6, -pi / 6});
  EXPECT_NEAR(s.alpha, pi / 6, 1e-14);
  EXPECT_NEAR(s.diamond, 1.0, 1e-14);
  EXPECT_NEAR(2 * std::sqrt(1 - s.nu * s.nu), 1.0, 1e-12);
  EXPECT_NEAR(2 * s.R, 1.0, 1e-12);
}

TEST(unitary_pair, spread_spectrum) {
  const auto s = phase_stats({0.0, pi / 2, pi});
  EXPECT_EQ(s.diamond, 2.0);
  EXPECT_NEAR(s.nu, 0.0, 1e-15);
}

TEST(unitary_pair, formulas_agree_on_random_pairs) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    RngStream rng(11, k);
    const Index d = 2 + Index(k % 6);
    const MatrixXcd u = sample_haar_unitary<double>(d, rng);
    const MatrixXcd v = u * sample_unitary_brownian<double>(d, 0.3, 100, rng);
    const auto s = unitary_pair_stats<double>(u, v);
    EXPECT_GE(s.alpha, 0.0);
    EXPECT_LE(s.alpha, pi);
    if (s.alpha < pi / 2) {
      EXPECT_NEAR(s.diamond, 2 * std::sqrt(1 - s.nu * s.nu), 1e-8);
      EXPECT_NEAR(s.diamond, 2 * s.R, 1e-8);
    }
  }
}

TEST(unitary_pair, rejects_non_unitary) {
  EXPECT_THROW(unitary_pair_stats<double>(MatrixXcd::Identity(2, 2) * 2.0, MatrixXcd::Identity(2, 2)),
               DomainError);
}

TEST(success_probability, values) {
  EXPECT_EQ(success_probability(0.0), 0.5);
  EXPECT_EQ(success_probability(2.0), 1.0);
  EXPECT_NEAR(success_probability(0.5 + 2 / pi), 5.0 / 8 + 1 / (2 * pi), 1e-15);
  EXPECT_THROW(success_probability(2.5), DomainError);
}

TEST(nearest_unitary, values) {
  RngStream rng(12, 0);
  const auto u = unitary_choi<double>(sample_haar_unitary<double>(3, rng));
  EXPECT_NEAR(nearest_unitary_lower(u), 0.0, 1e-12);
  EXPECT_NEAR(nearest_unitary_lower(depolarizing_choi<double>(3, 3)), 2.0 - 2.0 / 9, 1e-14);
  const auto c = sample_hs_channel<double>(48, 48, 48 * 48, rng);
  EXPECT_GE(nearest_unitary_lower(c.choi), 1.7);
}

TEST(bounds_json, fields) {
  DiamondBounds b;
  b.lower = 1;
  b.upper = 2;
  const auto j = nlohmann::json::parse(b.to_json());
  EXPECT_TRUE(j["seesaw"].is_null());
  EXPECT_EQ(j["upper"], 2.0);
}
