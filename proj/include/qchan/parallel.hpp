#ifndef QCHAN_PARALLEL_HPP
#define QCHAN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <iterator>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace qchan {

/// Worker count: QCHAN_THREADS wins over `requested`; 0 means all cores.
inline unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("QCHAN_THREADS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v > 0) requested = static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Runs f(i) for i in [0, n) on up to `threads` workers and returns the
/// results in index order. The output never depends on scheduling.
template <class F>
auto parallel_map(std::size_t n, unsigned threads, F&& f) {
  using T = decltype(f(std::size_t{0}));
  std::vector<std::optional<T>> slots(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Pairwise summation; the tree depends only on the length.
template <class It>
double pairwise_sum(It first, It last) {
  const auto n = std::distance(first, last);
  if (n <= 8) {
    double s = 0.0;
    for (; first != last; ++first) s += *first;
    return s;
  }
  const It mid = std::next(first, n / 2);
  return pairwise_sum(first, mid) + pairwise_sum(mid, last);
}

/// Mean and standard error of the mean with a fixed reduction order.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;      // sample standard deviation (n - 1)
  double std_error = 0.0;
  std::size_t n = 0;
};

inline MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  r.n = v.size();
  if (v.empty()) return r;
  r.mean = pairwise_sum(v.begin(), v.end()) / static_cast<double>(v.size());
  if (v.size() > 1) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - r.mean) * (v[i] - r.mean);
    r.std = std::sqrt(pairwise_sum(sq.begin(), sq.end()) / static_cast<double>(v.size() - 1));
    r.std_error = r.std / std::sqrt(static_cast<double>(v.size()));
  }
  return r;
}

}  // namespace qchan

#endif  // QCHAN_PARALLEL_HPP
