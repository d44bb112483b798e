#include "sflow/separated.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "sflow/chain_metric.hpp"
#include "sflow/error.hpp"
#include "sflow/parallel.hpp"

namespace sflow {

namespace {

struct CliqueSearch {
  const std::vector<std::uint64_t>& adj;
  std::uint64_t best_mask = 0;
  int best_size = 0;

  void expand(std::uint64_t chosen, int size, std::uint64_t candidates) {
    if (candidates == 0) {
      if (size > best_size) {
        best_size = size;
        best_mask = chosen;
      }
      return;
    }
    while (candidates) {
      if (size + std::popcount(candidates) <= best_size) return;
      const int v = std::countr_zero(candidates);
      const std::uint64_t bit = std::uint64_t{1} << v;
      expand(chosen | bit, size + 1, candidates & adj[static_cast<std::size_t>(v)]);
      candidates &= ~bit;
    }
  }
};

}  // namespace

double bowen_distance(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, int n, int chain_budget) {
  if (n < 1) throw DomainError("Bowen distance needs n >= 1");
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    const FlowPoint aj = flow(a, j, f);
    const FlowPoint bj = flow(b, j, f);
    d = std::max(d, bw_distance_upper(aj, bj, f, chain_budget));
  }
  return d;
}

SeparatedSet separated_entropy_estimate(const std::vector<FlowPoint>& points, const RoofFunction& f, double eps,
                                        int n, int chain_budget) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (n < 1) throw DomainError("n must be at least 1");
  SeparatedSet out;
  out.report.method = EntropyMethod::kSeparatedSets;
  const std::size_t m = points.size();
  if (m == 0) {
    out.exact = true;
    out.report.flag = "empty point set";
    return out;
  }

  // Time-j images, then pairwise Bowen distances.
  std::vector<std::vector<FlowPoint>> images(m);
  parallel_for(m, [&](std::size_t i) {
    for (int j = 0; j < n; ++j) images[i].push_back(flow(points[i], j, f));
  });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = i + 1; k < m; ++k) pairs.emplace_back(i, k);
  std::vector<char> separated(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, k] = pairs[p];
    for (int j = 0; j < n; ++j) {
      if (bw_distance_upper(images[i][j], images[k][j], f, chain_budget) > eps) {
        separated[p] = 1;
        return;
      }
    }
  });
  auto sep = [&](std::size_t i, std::size_t k) {
    if (i > k) std::swap(i, k);
    const std::size_t idx = i * m - i * (i + 1) / 2 + (k - i - 1);
    return separated[idx] != 0;
  };

  if (m <= 64) {
    std::vector<std::uint64_t> adj(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (i != k && sep(i, k)) adj[i] |= std::uint64_t{1} << k;
    CliqueSearch search{adj};
    const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    search.expand(0, 0, all);
    for (std::size_t i = 0; i < m; ++i)
      if (search.best_mask >> i & 1) out.members.push_back(i);
    out.exact = true;
    out.report.flag = "maximum separated subset";
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      bool ok = true;
      for (std::size_t k : out.members)
        if (!sep(i, k)) {
          ok = false;
          break;
        }
      if (ok) out.members.push_back(i);
    }
    out.report.flag = "greedy separated subset";
  }
  out.report.value = std::log(static_cast<double>(out.members.size())) / static_cast<double>(n);
  return out;
}

}  // namespace sflow
