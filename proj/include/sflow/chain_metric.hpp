#pragma once

#include <vector>

#include "sflow/suspension.hpp"

namespace sflow {

enum class PairKind { kHorizontal, kVertical };

/// Length of an admissible pair. Horizontal pairs share u and cost (1-u) d(x_A, x_B) + u d(Tx_A, Tx_B).
/// Vertical pairs cost |u_A - u_B| on a common base, 1 - u_A + u_B when x_B = T x_A, and
/// 1 - u_B + u_A when x_A = T x_B; the smallest applicable value is returned.
double pair_length(const FlowPoint& a, const FlowPoint& b, PairKind kind, const RoofFunction& f);

/// Shortest admissible chains over a finite vertex set: bases sigma^j x for |j| <= orbit_radius
/// and x a pool base, crossed with the normalized heights of the pool (and 0).
class ChainMetric {
 public:
  ChainMetric(const RoofFunction& f, const std::vector<FlowPoint>& pool, int orbit_radius = 3);

  /// Length of the shortest chain of at most max_points points from a to b (both pool members).
  double distance(const FlowPoint& a, const FlowPoint& b, int max_points) const;

  std::size_t vertex_count() const { return vertices_.size(); }

  struct Vertex {
    std::size_t base;
    double u;
  };
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<BitSequence>& bases() const { return bases_; }
  /// Edge weight between two vertices (+inf when no admissible pair joins them).
  double weight(std::size_t i, std::size_t j) const { return w_[i * vertices_.size() + j]; }

 private:
  std::size_t locate(const FlowPoint& p) const;
  std::vector<double> hop_limited(std::size_t source, int max_edges) const;

  RoofFunction f_;
  std::vector<BitSequence> bases_;
  std::vector<Vertex> vertices_;
  std::vector<double> w_;
};

/// Upper bound on the Bowen-Walters distance using chains of at most max_points points.
double bw_distance_upper(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, int max_points,
                         int orbit_radius = 3);

}  // namespace sflow
