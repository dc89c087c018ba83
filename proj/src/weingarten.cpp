#include "qchan/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qchan/ensembles.hpp"
#include "qchan/parallel.hpp"
#include "qchan/rng.hpp"

namespace qchan {

namespace {

std::array<int, 4> relabel(const std::array<int, 4>& t) {
  std::map<int, int> seen;
  std::array<int, 4> out{};
  for (int i = 0; i < 4; ++i) {
    auto [it, fresh] = seen.try_emplace(t[i], static_cast<int>(seen.size()));
    out[i] = it->second;
  }
  return out;
}

void require_nonzero(double den, std::string_view cls, Index d1, Index d2) {
  if (den == 0.0) {
    throw DomainError(detail::concat("M(", cls, ") is undefined at d1=", d1, " d2=", d2,
                                     " (needs d1*d2 > ", cls == "0123" ? 3 : cls == "0102" ? 2 : 1,
                                     ")"));
  }
}

}  // namespace

std::string canonical_class(const std::array<int, 4>& t) {
  const auto [i, j, k, l] = t;
  const std::array<std::array<int, 4>, 8> images = {{{i, j, k, l}, {j, i, k, l}, {i, j, l, k},
                                                    {j, i, l, k}, {k, l, i, j}, {l, k, i, j},
                                                    {k, l, j, i}, {l, k, j, i}}};
  std::array<int, 4> best = relabel(images[0]);
  for (const auto& im : images) best = std::min(best, relabel(im));
  std::string s;
  for (int v : best) s.push_back(static_cast<char>('0' + v));
  return s;
}

int MomentPattern::distinct() const {
  std::array<int, 4> s = indices;
  std::sort(s.begin(), s.end());
  return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

MomentPattern MomentPattern::from_class(std::string_view cls) {
  if (std::find(kMomentClasses.begin(), kMomentClasses.end(), cls) == kMomentClasses.end()) {
    throw DomainError(detail::concat("unknown moment class '", cls, "'"));
  }
  MomentPattern p;
  for (int i = 0; i < 4; ++i) p.indices[i] = cls[i] - '0';
  return p;
}

double mixed_moment(const MomentPattern& pattern, Index d1_, Index d2_) {
  if (d1_ < 1 || d2_ < 1) throw DomainError("mixed_moment needs positive dimensions");
  const std::string cls = pattern.canonical();
  const double d1 = static_cast<double>(d1_), d2 = static_cast<double>(d2_);
  const double n = d1 * d2;
  const double e = d2 * d2 - 1.0;
  double num = 0.0, den = 1.0;
  if (cls == "0000") {
    num = d2 * d1 * d1 * d1 + 2.0 * (d2 * d2 + 2.0) * d1 * d1 + d2 * (d2 * d2 + 10.0) * d1 +
          4.0 * d2 * d2 + 2.0;
    den = (n + 1.0) * (n + 2.0) * (n + 3.0);
  } else if (cls == "0001") {
    num = e * (d1 * (d1 + d2) * (n + 4.0) + 2.0);
    den = (n - 1.0) * (n + 1.0) * (n + 2.0) * (n + 3.0);
  } else if (cls == "0011") {
    num = (n * (n + 2.0) - 4.0) * (d1 + d2) * (d1 + d2) + 4.0;
    den = n * (n - 1.0) * (n + 2.0) * (n + 3.0);
  } else if (cls == "0012") {
    num = e * (d1 * (d1 + d2) * (n * (n + 4.0) + 2.0) - 2.0);
    den = n * (n - 1.0) * (n + 1.0) * (n + 2.0) * (n + 3.0);
  } else if (cls == "0101") {
    num = e * (d1 * (6.0 * d2 + d1 * (d2 * d2 * (n + 5.0) - 2.0)) + 2.0);
    den = n * (n - 1.0) * (n + 1.0) * (n + 2.0) * (n + 3.0);
  } else if (cls == "0102") {
    num = e * (d1 * (d1 * (d2 * (d1 * (3.0 * d2 * d2 + d1 * e * d2 - 4.0) - 3.0 * d2) + 2.0) -
                     8.0 * d2) -
               2.0);
    den = n * (n - 2.0) * (n - 1.0) * (n + 1.0) * (n + 2.0) * (n + 3.0);
  } else {  // 0123
    num = e * (d2 * d2 * e * d1 * d1 * d1 * d1 + 2.0 * (7.0 - 6.0 * d2 * d2) * d1 * d1 + 22.0);
    den = n * n * (n * n - 7.0) * (n * n - 7.0) - 36.0;
  }
  require_nonzero(den, cls, d1_, d2_);
  return num / den;
}

double pair_expectation(bool equal, Index d1_, Index d2_) {
  const double d1 = static_cast<double>(d1_), d2 = static_cast<double>(d2_);
  const double purity = (d1 + d2) / (d1 * d2 + 1.0);
  if (equal) return purity;
  if (d1 * d2 <= 1.0) throw DomainError("unequal pair needs d1*d2 > 1");
  return (d2 - purity) / (d1 * d2 - 1.0);
}

double third_moment_expectation(Index d1_, Index d2_) {
  const double d1 = static_cast<double>(d1_), d2 = static_cast<double>(d2_);
  const double n = d1 * d2;
  return ((d1 + d2) * (d1 + d2) + n + 1.0) / ((n + 1.0) * (n + 2.0));
}

SpectralMoments SpectralMoments::of(const VectorXd& lambda) {
  if (lambda.size() == 0) throw DimensionError("spectral moments of an empty vector");
  const double n = static_cast<double>(lambda.size());
  const auto a = lambda.array();
  return {a.sum() / n, a.square().sum() / n, a.cube().sum() / n, a.square().square().sum() / n};
}

double var_v_exact(Index d1_, Index d2_, const SpectralMoments& m) {
  const double d1 = static_cast<double>(d1_), d2 = static_cast<double>(d2_);
  const double n2 = d1 * d1 * d2 * d2;
  const double quartic = n2 * n2 - 13.0 * n2 + 36.0;
  if (d1_ * d2_ <= 3 || quartic == 0.0) {
    throw DomainError(detail::concat("var_v_exact needs d1*d2 > 3, got d1=", d1_, " d2=", d2_));
  }
  const double pre = 2.0 * (d1 * d1 - 1.0) * (d2 * d2 - 1.0) /
                     (d2 * d2 * (n2 - 1.0) * (n2 - 1.0) * quartic);
  const double m1 = m.mu1, m2 = m.mu2, m3 = m.mu3, m4 = m.mu4;
  const double flat = m1 * m1 - m2;
  return pre * (n2 * n2 * flat * flat +
                n2 * (11.0 * m1 * m1 * m1 * m1 - 22.0 * m2 * m1 * m1 + 20.0 * m3 * m1 -
                      4.0 * m2 * m2 - 5.0 * m4) +
                5.0 * (3.0 * m2 * m2 - 4.0 * m1 * m3 + m4));
}

double var_v_leading(Index d1_, Index d2_, const SpectralMoments& m) {
  const double d1 = static_cast<double>(d1_), d2 = static_cast<double>(d2_);
  const double flat = m.mu1 * m.mu1 - m.mu2;
  return 2.0 * flat * flat / (d1 * d1 * d2 * d2 * d2 * d2);
}

double FlatnessStats::chebyshev_bound(Index d1) const {
  return b + std::sqrt(std::max(v, 0.0)) * std::sqrt(static_cast<double>(d1));
}

std::vector<McEstimate> mc_mixed_moments(const std::vector<MomentPattern>& patterns, Index d1,
                                         Index d2, std::size_t n, std::uint64_t seed,
                                         unsigned threads) {
  if (n < 100) throw DomainError(detail::concat("Monte Carlo needs n >= 100, got ", n));
  const Index dim = d1 * d2;
  int columns = 0;
  for (const auto& p : patterns)
    for (int v : p.indices) {
      if (v < 0) throw DomainError("moment labels must be non-negative");
      columns = std::max(columns, v + 1);
    }
  if (columns > dim) {
    throw DimensionError(detail::concat("pattern needs ", columns, " columns but d1*d2 = ", dim));
  }
  const auto samples = parallel_map(n, threads, [&](std::size_t t) {
    RngStream rng(seed, t);
    const MatrixXcd u = sample_haar_unitary<double>(dim, rng);
    std::vector<MatrixXcd> r(static_cast<std::size_t>(columns));
    for (int c = 0; c < columns; ++c) {
      MatrixXcd m(d1, d2);
      for (Index i = 0; i < d1; ++i) m.row(i) = u.col(c).segment(i * d2, d2).transpose();
      r[static_cast<std::size_t>(c)] = std::move(m);
    }
    // Tr(rho_a rho_b) = ||R_a^* R_b||_F^2
    auto tr = [&](int a, int b) {
      return (r[static_cast<std::size_t>(a)].adjoint() * r[static_cast<std::size_t>(b)])
          .squaredNorm();
    };
    std::vector<double> out;
    out.reserve(patterns.size());
    for (const auto& p : patterns) {
      const auto [i, j, k, l] = p.indices;
      out.push_back(tr(i, j) * tr(k, l));
    }
    return out;
  });
  std::vector<McEstimate> est;
  for (std::size_t q = 0; q < patterns.size(); ++q) {
    std::vector<double> col(n);
    for (std::size_t t = 0; t < n; ++t) col[t] = samples[t][q];
    const MeanStd ms = mean_std(col);
    est.push_back({ms.mean, ms.std_error, n});
  }
  return est;
}

McEstimate mc_mixed_moment(const MomentPattern& pattern, Index d1, Index d2, std::size_t n,
                           std::uint64_t seed, unsigned threads) {
  return mc_mixed_moments({pattern}, d1, d2, n, seed, threads).front();
}

McEstimate mc_var_v(Index d1, Index d2, const VectorXd& lambda, std::size_t n,
                    std::uint64_t seed, unsigned threads) {
  if (n < 100) throw DomainError(detail::concat("Monte Carlo needs n >= 100, got ", n));
  const Index dim = d1 * d2;
  if (lambda.size() != dim) {
    throw DimensionError(detail::concat("spectrum has ", lambda.size(), " entries, d1*d2 = ", dim));
  }
  const std::vector<double> vs = parallel_map(n, threads, [&](std::size_t t) {
    RngStream rng(seed, t);
    const MatrixXcd u = sample_haar_unitary<double>(dim, rng);
    const MatrixXcd a = u * lambda.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    const MatrixXcd b = partial_trace<double>(a, d1, d2, Factor::second) / double(d2);
    const double tr = b.trace().real() / double(d1);
    const double tr2 = (b * b).trace().real() / double(d1);
    return tr2 - tr * tr;
  });
  const MeanStd ms = mean_std(vs);
  std::vector<double> c4(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double c = vs[t] - ms.mean;
    c4[t] = c * c * c * c;
  }
  const double m4 = pairwise_sum(c4.begin(), c4.end()) / double(n);
  const double s2 = ms.std * ms.std;
  return {s2, std::sqrt(std::max(m4 - s2 * s2, 0.0) / double(n)), n};
}

}  // namespace qchan
