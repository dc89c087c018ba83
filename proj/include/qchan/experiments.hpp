#ifndef QCHAN_EXPERIMENTS_HPP
#define QCHAN_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qchan/report.hpp"
#include "qchan/types.hpp"

namespace qchan {

// Each experiment is a pure function of its config: trial t of grid point g
// draws from RngStream(seed, trial_stream(g, t)), results are gathered by
// index and reduced in a fixed order, so the thread count never changes
// the numbers.

inline std::uint64_t trial_stream(std::size_t point, std::size_t trial) {
  return (static_cast<std::uint64_t>(point) << 32) | static_cast<std::uint64_t>(trial);
}

struct RunOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Bounds on the distance between two independent random channels.

struct ConvergenceConfig {
  std::vector<Index> d_grid{2, 4, 8, 16, 32, 48};
  std::size_t n = 100;
  double x = 1.0;
  double y = 1.0;
};

struct ConvergenceRow {
  Index d = 0;
  double mean_lower = 0.0, std_lower = 0.0;
  double mean_upper = 0.0, std_upper = 0.0;
  double mean_gap = 0.0;
  std::size_t n_samples = 0;
};

std::vector<ConvergenceRow> cmd_convergence(const ConvergenceConfig& cfg, const RunOptions& run);
Table convergence_table(const std::vector<ConvergenceRow>& rows, double limit);

// Spectrum of Z = W_x/(x d1 d2) - W_y/(y d1 d2) against the limit law.

struct SmpHistogramConfig {
  double x = 1.0;
  double y = 1.0;
  Index d1 = 20;
  Index d2 = 20;
  std::size_t bins = 80;
  std::size_t n = 1;  // independent Z samples pooled together
};

struct SmpHistogramResult {
  std::vector<double> eigenvalues;  // pooled, ascending, near-zeros snapped to 0
  double ks_distance = 0.0;
  double atom_empirical = 0.0;
  double atom_theory = 0.0;
  Table histogram;
  Table density;
};

SmpHistogramResult cmd_smp_histogram(const SmpHistogramConfig& cfg, const RunOptions& run);

/// sup_u |F_emp(u) - F(u)| for ascending samples and a CDF that may jump at 0.
double ks_distance_smp(const std::vector<double>& sorted, double x, double y);

// Distance from a random channel to the maximally depolarizing one.

struct DepolConfig {
  std::vector<double> x_grid{0.1, 0.2, 0.25, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0};
  Index d = 16;
  std::size_t n = 20;
};

struct DepolRow {
  double x = 0.0;
  double closed_form = 0.0;
  double mc_mean = 0.0, mc_std = 0.0;
  double mc_lower_mean = 0.0;
  std::size_t n = 0;
};

std::vector<DepolRow> cmd_depol_curve(const DepolConfig& cfg, const RunOptions& run);
Table depol_table(const std::vector<DepolRow>& rows);

// Two independent unitary Brownian motions at times s = t = st/2.

struct BrownianConfig {
  std::vector<double> st_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.65, 0.7, 0.8, 1.0};
  Index d = 64;
  Index steps = 0;  // 0: default rule for each half-time
  std::size_t n = 20;
};

struct BrownianRow {
  double st = 0.0;
  double closed_form = 0.0;
  double mc_mean = 0.0, mc_std = 0.0;
  double frac_two = 0.0;  // share of trials with diamond norm exactly 2
  std::size_t n = 0;
};

std::vector<BrownianRow> cmd_brownian_curve(const BrownianConfig& cfg, const RunOptions& run);
Table brownian_table(const std::vector<BrownianRow>& rows);

// Partial normalization against plain rescaling.

struct ApproxConfig {
  std::vector<Index> d_grid{8, 16, 32};
  double x = 1.0;
  std::size_t n = 10;
};

struct ApproxRow {
  Index d = 0;
  double median_scaled_error = 0.0;  // d2^2 ||D - W/(x d1 d2^2)||_inf
  double median_edge_max = 0.0;      // sqrt(x) d2 (lambda_max(X) - 1)
  double median_edge_min = 0.0;      // sqrt(x) d2 (lambda_min(X) - 1)
  double growth = 0.0;               // ratio to the previous row's error; 0 on the first
  std::size_t n = 0;
};

struct ApproxResult {
  std::vector<ApproxRow> rows;
  bool flagged = false;  // some consecutive growth above 1.5
};

ApproxResult cmd_approximation_check(const ApproxConfig& cfg, const RunOptions& run);
Table approx_table(const std::vector<ApproxRow>& rows);

// Haar moments against Monte Carlo.

struct WeingartenConfig {
  Index d1 = 2;
  Index d2 = 3;
  std::size_t n = 100000;
};

struct WeingartenRow {
  std::string pattern;
  Index d1 = 0, d2 = 0;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
};

std::vector<WeingartenRow> cmd_weingarten_check(const WeingartenConfig& cfg,
                                                const RunOptions& run);
nlohmann::json weingarten_json(const std::vector<WeingartenRow>& rows);

/// (estimate - target) / std_error; 0 when the two agree to 1e-12.
double z_score(double estimate, double target, double std_error);

}  // namespace qchan

#endif  // QCHAN_EXPERIMENTS_HPP
