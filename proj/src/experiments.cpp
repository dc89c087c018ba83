#include "qchan/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "qchan/diamond.hpp"
#include "qchan/ensembles.hpp"
#include "qchan/freeprob.hpp"
#include "qchan/parallel.hpp"
#include "qchan/rng.hpp"
#include "qchan/weingarten.hpp"

namespace qchan {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Index wishart_columns(double ratio, Index n) {
  const double s = std::round(ratio * static_cast<double>(n));
  if (!(s >= 1.0)) {
    throw DomainError(detail::concat("Wishart parameter ", ratio, " gives no columns at size ", n));
  }
  return static_cast<Index>(s);
}

MatrixXcd smp_sample(double x, double y, Index n, RngStream& rng) {
  const MatrixXcd wx = sample_wishart_matrix<double>(n, wishart_columns(x, n), rng);
  const MatrixXcd wy = sample_wishart_matrix<double>(n, wishart_columns(y, n), rng);
  return wx / (x * double(n)) - wy / (y * double(n));
}

}  // namespace

std::vector<ConvergenceRow> cmd_convergence(const ConvergenceConfig& cfg, const RunOptions& run) {
  if (cfg.n < 2) throw DomainError("convergence needs n >= 2 samples per dimension");
  std::vector<ConvergenceRow> rows;
  for (std::size_t g = 0; g < cfg.d_grid.size(); ++g) {
    const Index d = cfg.d_grid[g];
    if (d < 2) throw DomainError(detail::concat("convergence needs d >= 2, got ", d));
    const Index sx = wishart_columns(cfg.x, d * d), sy = wishart_columns(cfg.y, d * d);
    EnsembleSpec{EnsembleKind::hs_channel, d, d, sx, 0.0}.validate();
    EnsembleSpec{EnsembleKind::hs_channel, d, d, sy, 0.0}.validate();
    const auto bounds = parallel_map(cfg.n, run.threads, [&](std::size_t t) {
      RngStream rng(run.seed, trial_stream(g, t));
      const auto phi = sample_hs_channel<double>(d, d, sx, rng);
      const auto psi = sample_hs_channel<double>(d, d, sy, rng);
      const auto diff = BipartiteOperator<double>::hermitian(d, d, phi.choi.mat() - psi.choi.mat());
      return hermitian_diamond_bounds(diff);
    });
    std::vector<double> lo, up, gap;
    for (const auto& [l, u] : bounds) {
      lo.push_back(l);
      up.push_back(u);
      gap.push_back(u - l);
    }
    const MeanStd ml = mean_std(lo), mu = mean_std(up), mg = mean_std(gap);
    rows.push_back({d, ml.mean, ml.std, mu.mean, mu.std, mg.mean, cfg.n});
  }
  return rows;
}

Table convergence_table(const std::vector<ConvergenceRow>& rows, double limit) {
  Table t{{"d[count]", "n_samples[count]", "mean_lower[1]", "std_lower[1]", "mean_upper[1]",
           "std_upper[1]", "mean_gap[1]", "limit[1]"},
          {}};
  for (const auto& r : rows)
    t.add_row({double(r.d), double(r.n_samples), r.mean_lower, r.std_lower, r.mean_upper,
               r.std_upper, r.mean_gap, limit});
  return t;
}

double ks_distance_smp(const std::vector<double>& sorted, double x, double y) {
  if (sorted.empty()) throw DomainError("KS distance of an empty sample");
  const SmpDistribution dist(SmpParams{x, y});
  std::vector<double> uniq;
  std::vector<std::size_t> upto;  // samples <= uniq[k]
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] < sorted[i - 1]) throw DomainError("KS: samples must be ascending");
    if (!uniq.empty() && sorted[i] == uniq.back()) {
      ++upto.back();
    } else {
      uniq.push_back(sorted[i]);
      upto.push_back(i + 1);
    }
  }
  const std::vector<double> f = dist.cdf(uniq), fl = dist.cdf_left(uniq);
  const double n = static_cast<double>(sorted.size());
  double ks = 0.0;
  for (std::size_t k = 0; k < uniq.size(); ++k) {
    const double before = k ? double(upto[k - 1]) / n : 0.0;
    ks = std::max({ks, std::abs(f[k] - double(upto[k]) / n), std::abs(fl[k] - before)});
  }
  return ks;
}

SmpHistogramResult cmd_smp_histogram(const SmpHistogramConfig& cfg, const RunOptions& run) {
  if (cfg.bins < 1 || cfg.n < 1) throw DomainError("smp-hist needs bins >= 1 and n >= 1");
  const SmpParams params{cfg.x, cfg.y};
  const SmpDistribution dist(params);
  const Index dim = cfg.d1 * cfg.d2;
  if (dim < 1) throw DomainError("smp-hist needs positive dimensions");
  const auto spectra = parallel_map(cfg.n, run.threads, [&](std::size_t t) {
    RngStream rng(run.seed, trial_stream(0, t));
    const MatrixXcd z = smp_sample(cfg.x, cfg.y, dim, rng);
    VectorXd ev = eigh<double>(z, false).eigenvalues;
    const double scale = ev.cwiseAbs().maxCoeff();
    for (Index i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i)) <= 1e-8 * scale) ev(i) = 0.0;
    return ev;
  });
  SmpHistogramResult res;
  for (const auto& ev : spectra) res.eigenvalues.insert(res.eigenvalues.end(), ev.begin(), ev.end());
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
  const double total = static_cast<double>(res.eigenvalues.size());
  res.atom_empirical =
      static_cast<double>(std::count(res.eigenvalues.begin(), res.eigenvalues.end(), 0.0)) / total;
  res.atom_theory = dist.atom_mass();
  res.ks_distance = ks_distance_smp(res.eigenvalues, cfg.x, cfg.y);

  const double lo = std::min(dist.support().front().lo, res.eigenvalues.front());
  const double hi = std::max(dist.support().back().hi, res.eigenvalues.back());
  const double width = (hi - lo) / double(cfg.bins);
  std::vector<double> counts(cfg.bins, 0.0);
  for (double v : res.eigenvalues) {
    const auto b = std::min<std::size_t>(cfg.bins - 1, static_cast<std::size_t>((v - lo) / width));
    counts[b] += 1.0;
  }
  res.histogram.columns = {"bin_lo[1]", "bin_hi[1]", "count[count]", "density[1/unit]"};
  for (std::size_t b = 0; b < cfg.bins; ++b)
    res.histogram.add_row(
        {lo + width * double(b), lo + width * double(b + 1), counts[b], counts[b] / (total * width)});
  res.density.columns = {"u[1]", "density[1/unit]"};
  const std::size_t grid = 400;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double u = lo + (hi - lo) * double(i) / double(grid);
    res.density.add_row({u, u == 0.0 ? 0.0 : dist.density(u)});
  }
  return res;
}

std::vector<DepolRow> cmd_depol_curve(const DepolConfig& cfg, const RunOptions& run) {
  const Index d = cfg.d;
  if (d < 1) throw DomainError("depol-curve needs d >= 1");
  std::vector<DepolRow> rows;
  for (std::size_t g = 0; g < cfg.x_grid.size(); ++g) {
    const double x = cfg.x_grid[g];
    DepolRow row{x, depol_distance(x), 0.0, 0.0, 0.0, cfg.n};
    if (cfg.n > 0) {
      const Index s = wishart_columns(x, d * d);
      const MatrixXcd depol = MatrixXcd::Identity(d * d, d * d) / double(d);
      const auto vals = parallel_map(cfg.n, run.threads, [&](std::size_t t) {
        RngStream rng(run.seed, trial_stream(g, t));
        const auto w = BipartiteOperator<double>::hermitian(
            d, d, sample_wishart_matrix<double>(d * d, s, rng));
        const auto dch = partially_normalize(w);
        return hermitian_diamond_bounds(
            BipartiteOperator<double>::hermitian(d, d, dch.mat() - depol));
      });
      std::vector<double> up, lo;
      for (const auto& [l, u] : vals) {
        lo.push_back(l);
        up.push_back(u);
      }
      const MeanStd mu = mean_std(up);
      row.mc_mean = mu.mean;
      row.mc_std = mu.std;
      row.mc_lower_mean = mean_std(lo).mean;
    }
    rows.push_back(row);
  }
  return rows;
}

Table depol_table(const std::vector<DepolRow>& rows) {
  Table t{{"x[1]", "closed_form[1]", "mc_upper_mean[1]", "mc_upper_std[1]", "mc_lower_mean[1]",
           "n_samples[count]"},
          {}};
  for (const auto& r : rows)
    t.add_row({r.x, r.closed_form, r.mc_mean, r.mc_std, r.mc_lower_mean, double(r.n)});
  return t;
}

std::vector<BrownianRow> cmd_brownian_curve(const BrownianConfig& cfg, const RunOptions& run) {
  if (cfg.d < 1) throw DomainError("brownian-curve needs d >= 1");
  std::vector<BrownianRow> rows;
  for (std::size_t g = 0; g < cfg.st_grid.size(); ++g) {
    const double st = cfg.st_grid[g];
    BrownianRow row{st, brownian_diamond_limit(st), 0.0, 0.0, 0.0, cfg.n};
    if (cfg.n > 0) {
      const double half = st / 2.0;
      const Index steps = cfg.steps > 0 ? cfg.steps : brownian_default_steps(half);
      const std::vector<double> vals = parallel_map(cfg.n, run.threads, [&](std::size_t t) {
        RngStream rng(run.seed, trial_stream(g, t));
        const MatrixXcd u = sample_unitary_brownian<double>(cfg.d, half, steps, rng);
        const MatrixXcd v = sample_unitary_brownian<double>(cfg.d, half, steps, rng);
        return unitary_pair_stats<double>(u, v).diamond;
      });
      const MeanStd ms = mean_std(vals);
      row.mc_mean = ms.mean;
      row.mc_std = ms.std;
      row.frac_two =
          static_cast<double>(std::count(vals.begin(), vals.end(), 2.0)) / double(vals.size());
    }
    rows.push_back(row);
  }
  return rows;
}

Table brownian_table(const std::vector<BrownianRow>& rows) {
  Table t{{"st[time]", "closed_form[1]", "mc_mean[1]", "mc_std[1]", "frac_two[1]",
           "n_samples[count]"},
          {}};
  for (const auto& r : rows)
    t.add_row({r.st, r.closed_form, r.mc_mean, r.mc_std, r.frac_two, double(r.n)});
  return t;
}

ApproxResult cmd_approximation_check(const ApproxConfig& cfg, const RunOptions& run) {
  if (cfg.n < 1) throw DomainError("approx-check needs n >= 1");
  ApproxResult res;
  for (std::size_t g = 0; g < cfg.d_grid.size(); ++g) {
    const Index d = cfg.d_grid[g];
    const Index s = wishart_columns(cfg.x, d * d);
    EnsembleSpec{EnsembleKind::wishart, d, d, s, 0.0}.validate();
    const double t = double(s) / double(d * d);
    struct Trial {
      double err, emax, emin;
    };
    const auto trials = parallel_map(cfg.n, run.threads, [&](std::size_t k) {
      RngStream rng(run.seed, trial_stream(g, k));
      const auto w = sample_wishart<double>(d, d, s, rng);
      const auto dch = partially_normalize(w);
      const double c = t * double(d) * double(d) * double(d);
      const MatrixXcd diff = dch.mat() - w.mat() / c;
      const double err = eigh<double>(diff, false).eigenvalues.cwiseAbs().maxCoeff();
      const MatrixXcd xn = partial_trace(w, Factor::second) / c;
      const VectorXd ev = eigh<double>(xn, false).eigenvalues;
      const double k2 = std::sqrt(t) * double(d);
      return Trial{double(d) * double(d) * err, k2 * (ev.maxCoeff() - 1.0),
                   k2 * (ev.minCoeff() - 1.0)};
    });
    std::vector<double> e, hi, lo;
    for (const Trial& tr : trials) {
      e.push_back(tr.err);
      hi.push_back(tr.emax);
      lo.push_back(tr.emin);
    }
    ApproxRow row{d, median(e), median(hi), median(lo), 0.0, cfg.n};
    if (!res.rows.empty()) {
      row.growth = row.median_scaled_error / res.rows.back().median_scaled_error;
      if (row.growth > 1.5) res.flagged = true;
    }
    res.rows.push_back(row);
  }
  return res;
}

Table approx_table(const std::vector<ApproxRow>& rows) {
  Table t{{"d[count]", "median_scaled_error[1]", "median_edge_max[1]", "median_edge_min[1]",
           "growth[1]", "n_samples[count]"},
          {}};
  for (const auto& r : rows)
    t.add_row({double(r.d), r.median_scaled_error, r.median_edge_max, r.median_edge_min, r.growth,
               double(r.n)});
  return t;
}

double z_score(double estimate, double target, double std_error) {
  const double diff = estimate - target;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(target))) return 0.0;
  if (!(std_error > 0.0)) return diff > 0 ? HUGE_VAL : -HUGE_VAL;
  return diff / std_error;
}

std::vector<WeingartenRow> cmd_weingarten_check(const WeingartenConfig& cfg,
                                                const RunOptions& run) {
  if (cfg.n == 0) throw DomainError("weingarten-check needs n > 0");
  if (cfg.d1 < 1 || cfg.d2 < 1 || cfg.d1 * cfg.d2 < 4) {
    throw DomainError(detail::concat("weingarten-check needs d1*d2 >= 4, got d1=", cfg.d1,
                                     " d2=", cfg.d2));
  }
  std::vector<MomentPattern> patterns;
  for (auto cls : kMomentClasses) patterns.push_back(MomentPattern::from_class(cls));
  const auto est = mc_mixed_moments(patterns, cfg.d1, cfg.d2, cfg.n, run.seed, run.threads);
  std::vector<WeingartenRow> rows;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const double target = mixed_moment(patterns[i], cfg.d1, cfg.d2);
    rows.push_back({patterns[i].canonical(), cfg.d1, cfg.d2, target, est[i].estimate,
                    est[i].std_error, z_score(est[i].estimate, target, est[i].std_error)});
  }
  const Index dim = cfg.d1 * cfg.d2;
  const VectorXd flat = VectorXd::Constant(dim, 1.0);
  const VectorXd linear = VectorXd::LinSpaced(dim, 0.0, double(dim - 1));
  std::uint64_t sub = 1;
  for (const auto& [name, lambda] : {std::pair{"var_v:flat", flat}, std::pair{"var_v:linear", linear}}) {
    const double target = var_v_exact(cfg.d1, cfg.d2, SpectralMoments::of(lambda));
    const McEstimate m =
        mc_var_v(cfg.d1, cfg.d2, lambda, cfg.n, mix64(run.seed + sub++), run.threads);
    rows.push_back({name, cfg.d1, cfg.d2, target, m.estimate, m.std_error,
                    z_score(m.estimate, target, m.std_error)});
  }
  return rows;
}

nlohmann::json weingarten_json(const std::vector<WeingartenRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"pattern", r.pattern},
                   {"d1", r.d1},
                   {"d2", r.d2},
                   {"closed_form", r.closed_form},
                   {"mc_estimate", r.mc_estimate},
                   {"std_error", r.std_error},
                   {"z_score", r.z_score}});
  }
  return arr;
}

}  // namespace qchan
