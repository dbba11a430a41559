#pragma once

// Summary statistics on the undirected simple projection of all mode graphs.

#include <cstddef>
#include <vector>

#include "dadnet/model.hpp"
#include "dadnet/netgen.hpp"

namespace dadnet {

struct NetworkStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;             // distinct directed arcs
  std::size_t undirected_edge_count = 0;  // E
  double density = 0.0;                   // 2E / (N (N - 1))
  double avg_degree = 0.0;                // 2E / N
  double heterogeneity = 0.0;             // population std of degrees
  std::size_t max_degree = 0;
  double avg_betweenness = 0.0;           // mean of the pair-normalized values
  std::vector<double> betweenness;        // per node, divided by (N-1)(N-2)/2
  std::vector<double> l1_betweenness;     // per node, divided by the total
};

// Unnormalized unweighted betweenness of an undirected graph (each unordered
// pair counted once).
std::vector<double> brandes_betweenness(const std::vector<std::vector<std::size_t>>& adjacency);

NetworkStats compute_stats(const NetworkInstance& instance);
NetworkStats compute_stats(const SimpleGraph& graph);

}  // namespace dadnet
