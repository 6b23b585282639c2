#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>
#include <vector>

#include "latrec/rng.hpp"
#include "latrec/udg.hpp"

namespace latrec {

// Column-major sample matrix; one column per observed variable.
struct SampleMatrix {
  std::vector<std::vector<double>> cols;

  int num_cols() const { return static_cast<int>(cols.size()); }
  std::size_t num_rows() const { return cols.empty() ? 0 : cols.front().size(); }
};

namespace detail {

// Ranks r[i] = #{j : v[j] <= v[i]}.
inline std::vector<int> y_ranks(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });
  std::vector<int> ranks(static_cast<std::size_t>(n));
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[static_cast<std::size_t>(order[static_cast<std::size_t>(j + 1)])] ==
                            v[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    for (int k = i; k <= j; ++k) ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = j + 1;
    i = j + 1;
  }
  return ranks;
}

// Stable sort order by value; the stable tie-break pins the statistic down.
inline std::vector<int> sort_order(const std::vector<double>& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });
  return order;
}

// xi from precomputed pieces: y-ranks visited in x-sorted order.
inline double xi_from_parts(const std::vector<int>& x_order, const std::vector<int>& yr) {
  const std::size_t n = x_order.size();
  long long sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    sum += std::llabs(static_cast<long long>(yr[static_cast<std::size_t>(x_order[i + 1])]) -
                      static_cast<long long>(yr[static_cast<std::size_t>(x_order[i])]));
  const double nn = static_cast<double>(n);
  return 1.0 - 3.0 * static_cast<double>(sum) / (nn * nn - 1.0);
}

}  // namespace detail

// Chatterjee's rank coefficient xi(x, y); asymmetric, near 1 when y is a
// measurable function of x, near 0 under independence.
inline double chatterjee_xi(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("chatterjee_xi: length mismatch");
  if (x.size() < 2) throw InputError("chatterjee_xi: need at least 2 samples");
  return detail::xi_from_parts(detail::sort_order(x), detail::y_ranks(y));
}

inline double chatterjee_sym(const std::vector<double>& x, const std::vector<double>& y) {
  return std::max(chatterjee_xi(x, y), chatterjee_xi(y, x));
}

// Permutation calibration of the symmetrized statistic. For continuous data
// the null law of max(xi(pi), xi(pi^-1)) depends only on n, so the cutoff is
// computed once per sample size: the k-th largest of `permutations` null
// draws with k = floor(level * (permutations + 1)). Rejecting when the
// observed statistic exceeds it gives a level-`level` permutation test.
inline double chatterjee_cutoff(int num_samples, int permutations = 199, double level = 0.05,
                                std::uint64_t seed = 0) {
  if (num_samples < 2) throw InputError("chatterjee_cutoff: need at least 2 samples");
  static std::map<std::tuple<int, int, double, std::uint64_t>, double> cache;
  static std::mutex cache_mutex;
  const std::tuple<int, int, double, std::uint64_t> key{num_samples, permutations, level, seed};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rng rng(seed, {0x636861747465ULL, static_cast<std::uint64_t>(num_samples)});
  std::vector<double> null_stats;
  null_stats.reserve(static_cast<std::size_t>(permutations));
  std::vector<int> inverse(static_cast<std::size_t>(num_samples));
  for (int p = 0; p < permutations; ++p) {
    const std::vector<int> perm = rng.permutation(num_samples);
    for (int i = 0; i < num_samples; ++i)
      inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    // Ranks are 1-based permutation values; identity x-order.
    long long fwd = 0, bwd = 0;
    for (int i = 0; i + 1 < num_samples; ++i) {
      fwd += std::abs(perm[static_cast<std::size_t>(i + 1)] - perm[static_cast<std::size_t>(i)]);
      bwd += std::abs(inverse[static_cast<std::size_t>(i + 1)] - inverse[static_cast<std::size_t>(i)]);
    }
    const double nn = static_cast<double>(num_samples);
    const double xi_fwd = 1.0 - 3.0 * static_cast<double>(fwd) / (nn * nn - 1.0);
    const double xi_bwd = 1.0 - 3.0 * static_cast<double>(bwd) / (nn * nn - 1.0);
    null_stats.push_back(std::max(xi_fwd, xi_bwd));
  }
  const int k = std::max(1, static_cast<int>(level * (permutations + 1)));
  std::nth_element(null_stats.begin(), null_stats.begin() + (k - 1), null_stats.end(),
                   std::greater<double>());
  const double cutoff = null_stats[static_cast<std::size_t>(k - 1)];
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, cutoff);
  return cutoff;
}

struct UdgFromSamplesResult {
  Udg udg;
  std::vector<int> degenerate_columns;  // zero-variance columns, independent of everything
};

// Empirical UDG: an edge where the symmetrized Chatterjee statistic exceeds
// the threshold. Marginal dependence only.
inline UdgFromSamplesResult udg_from_samples(const SampleMatrix& data, double threshold) {
  const int n = data.num_cols();
  if (n <= 0) throw InputError("udg_from_samples: no columns");
  if (data.num_rows() < 20) throw InputError("udg_from_samples: need at least 20 samples");
  UdgFromSamplesResult res{Udg(n), {}};

  std::vector<bool> degenerate(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> ranks(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& col = data.cols[static_cast<std::size_t>(i)];
    if (col.size() != data.num_rows()) throw InputError("udg_from_samples: ragged columns");
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    if (*mn == *mx) {
      degenerate[static_cast<std::size_t>(i)] = true;
      res.degenerate_columns.push_back(i);
      continue;
    }
    orders[static_cast<std::size_t>(i)] = detail::sort_order(col);
    ranks[static_cast<std::size_t>(i)] = detail::y_ranks(col);
  }

  for (int i = 0; i < n; ++i) {
    if (degenerate[static_cast<std::size_t>(i)]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (degenerate[static_cast<std::size_t>(j)]) continue;
      const double stat =
          std::max(detail::xi_from_parts(orders[static_cast<std::size_t>(i)], ranks[static_cast<std::size_t>(j)]),
                   detail::xi_from_parts(orders[static_cast<std::size_t>(j)], ranks[static_cast<std::size_t>(i)]));
      if (stat > threshold) res.udg.add_edge(i, j);
    }
  }
  return res;
}

}  // namespace latrec
