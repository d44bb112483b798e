#include "sflow/chain_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sflow/error.hpp"

namespace sflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double vertical_length(const BitSequence& xa, double ua, const BitSequence& xb, double ub, bool& applicable) {
  double best = kInf;
  if (xa == xb) best = std::min(best, std::abs(ua - ub));
  if (xb == xa.shifted(1)) best = std::min(best, 1.0 - ua + ub);
  if (xa == xb.shifted(1)) best = std::min(best, 1.0 - ub + ua);
  applicable = best < kInf;
  return best;
}

}  // namespace

double pair_length(const FlowPoint& a, const FlowPoint& b, PairKind kind, const RoofFunction& f) {
  const double ua = normalized_height(a, f);
  const double ub = normalized_height(b, f);
  if (kind == PairKind::kHorizontal) {
    if (std::abs(ua - ub) > kHeightTolerance) throw DomainError("horizontal pair needs equal normalized heights");
    return (1.0 - ua) * seq_distance(a.base, b.base) + ua * seq_distance(a.base.shifted(1), b.base.shifted(1));
  }
  bool ok = false;
  const double v = vertical_length(a.base, ua, b.base, ub, ok);
  if (!ok) throw DomainError("vertical pair needs a common base or bases one shift apart");
  return v;
}

ChainMetric::ChainMetric(const RoofFunction& f, const std::vector<FlowPoint>& pool, int orbit_radius) : f_(f) {
  if (orbit_radius < 0) throw DomainError("orbit radius must be nonnegative");
  std::vector<double> us{0.0};
  for (const auto& p : pool) {
    for (int j = -orbit_radius; j <= orbit_radius; ++j) {
      BitSequence b = p.base.shifted(j);
      if (std::find(bases_.begin(), bases_.end(), b) == bases_.end()) bases_.push_back(std::move(b));
    }
    const double u = normalized_height(p, f);
    if (std::find(us.begin(), us.end(), u) == us.end()) us.push_back(u);
  }
  std::sort(us.begin(), us.end());
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    if (is_singularity(bases_[i]) && !f.is_constant())
      vertices_.push_back({i, 0.0});
    else
      for (double u : us) vertices_.push_back({i, u});
  }

  const std::size_t nb = bases_.size();
  std::vector<BitSequence> shifted;
  shifted.reserve(nb);
  for (const auto& b : bases_) shifted.push_back(b.shifted(1));
  std::vector<double> d(nb * nb, 0.0), dt(nb * nb, 0.0);
  std::vector<int> next(nb * nb, 0);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j) {
      d[i * nb + j] = d[j * nb + i] = seq_distance(bases_[i], bases_[j]);
      dt[i * nb + j] = dt[j * nb + i] = seq_distance(shifted[i], shifted[j]);
    }
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) next[i * nb + j] = (shifted[i] == bases_[j]) ? 1 : 0;

  const std::size_t nv = vertices_.size();
  w_.assign(nv * nv, kInf);
  for (std::size_t a = 0; a < nv; ++a) {
    w_[a * nv + a] = 0.0;
    for (std::size_t b = a + 1; b < nv; ++b) {
      const auto [ia, ua] = vertices_[a];
      const auto [ib, ub] = vertices_[b];
      double best = kInf;
      if (ua == ub && ia != ib) best = (1.0 - ua) * d[ia * nb + ib] + ua * dt[ia * nb + ib];
      if (ia == ib) best = std::min(best, std::abs(ua - ub));
      if (next[ia * nb + ib]) best = std::min(best, 1.0 - ua + ub);
      if (next[ib * nb + ia]) best = std::min(best, 1.0 - ub + ua);
      w_[a * nv + b] = w_[b * nv + a] = best;
    }
  }
}

std::size_t ChainMetric::locate(const FlowPoint& p) const {
  const auto it = std::find(bases_.begin(), bases_.end(), p.base);
  if (it == bases_.end()) throw DomainError("point is not part of the chain vertex set");
  const auto bi = static_cast<std::size_t>(it - bases_.begin());
  const double u = normalized_height(p, f_);
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].base == bi && vertices_[v].u == u) return v;
  throw DomainError("point height is not part of the chain vertex set");
}

std::vector<double> ChainMetric::hop_limited(std::size_t source, int max_edges) const {
  const std::size_t nv = vertices_.size();
  std::vector<double> cur(nv, kInf);
  cur[source] = 0.0;
  for (int h = 0; h < max_edges; ++h) {
    std::vector<double> nxt = cur;
    for (std::size_t a = 0; a < nv; ++a) {
      if (cur[a] == kInf) continue;
      const double* row = &w_[a * nv];
      for (std::size_t b = 0; b < nv; ++b) {
        const double c = cur[a] + row[b];
        if (c < nxt[b]) nxt[b] = c;
      }
    }
    cur.swap(nxt);
  }
  return cur;
}

double ChainMetric::distance(const FlowPoint& a, const FlowPoint& b, int max_points) const {
  if (max_points < 2) throw DomainError("chain budget must be at least 2 points");
  const std::size_t va = locate(a);
  const std::size_t vb = locate(b);
  if (va == vb) return 0.0;
  const double ab = hop_limited(va, max_points - 1)[vb];
  const double ba = hop_limited(vb, max_points - 1)[va];
  return std::min(ab, ba);
}

double bw_distance_upper(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, int max_points,
                         int orbit_radius) {
  return ChainMetric(f, {a, b}, orbit_radius).distance(a, b, max_points);
}

}  // namespace sflow
