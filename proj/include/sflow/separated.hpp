#pragma once

#include <cstddef>
#include <vector>

#include "sflow/entropy.hpp"
#include "sflow/suspension.hpp"

namespace sflow {

struct SeparatedSet {
  EntropyReport report;
  std::vector<std::size_t> members;  // indices into the input points
  bool exact = false;                // true when the set is a maximum (n, eps)-separated subset
};

/// Bowen distance max_{0 <= j < n} of the chain-metric distance between time-j images.
double bowen_distance(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, int n, int chain_budget);

/// (1/n) log of the size of an (n, eps)-separated subset of the points. Up to 64 points a maximum
/// subset is found exactly; larger inputs fall back to greedy extraction.
SeparatedSet separated_entropy_estimate(const std::vector<FlowPoint>& points, const RoofFunction& f, double eps,
                                        int n, int chain_budget);

}  // namespace sflow
