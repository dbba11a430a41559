#include "dadnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace dadnet {

std::vector<double> brandes_betweenness(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<double> bc(n, 0.0);
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : pred) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      order.push_back(v);
      for (auto w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (auto v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  for (auto& b : bc) b /= 2.0;
  return bc;
}

namespace {

NetworkStats stats_from(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& undirected,
                        std::size_t directed) {
  NetworkStats st;
  st.node_count = n;
  st.edge_count = directed;
  st.undirected_edge_count = undirected.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [u, v] : undirected) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (n == 0) return st;
  const double E = static_cast<double>(undirected.size());
  const double N = static_cast<double>(n);
  st.density = n > 1 ? 2.0 * E / (N * (N - 1.0)) : 0.0;
  st.avg_degree = 2.0 * E / N;
  double var = 0.0;
  for (const auto& a : adj) {
    const double d = static_cast<double>(a.size()) - st.avg_degree;
    var += d * d;
    st.max_degree = std::max(st.max_degree, a.size());
  }
  st.heterogeneity = std::sqrt(var / N);

  const auto raw = brandes_betweenness(adj);
  const double pairs = n > 2 ? (N - 1.0) * (N - 2.0) / 2.0 : 0.0;
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  st.betweenness.resize(n, 0.0);
  st.l1_betweenness.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (pairs > 0.0) st.betweenness[i] = raw[i] / pairs;
    if (total > 0.0) st.l1_betweenness[i] = raw[i] / total;
  }
  st.avg_betweenness = std::accumulate(st.betweenness.begin(), st.betweenness.end(), 0.0) / N;
  return st;
}

}  // namespace

NetworkStats compute_stats(const NetworkInstance& inst) {
  std::set<std::pair<std::size_t, std::size_t>> undirected, directed;
  for (const auto& a : inst.arcs) {
    if (a.tail == a.head) continue;
    directed.insert({a.tail, a.head});
    undirected.insert({std::min(a.tail, a.head), std::max(a.tail, a.head)});
  }
  return stats_from(inst.nodes.size(), undirected, directed.size());
}

NetworkStats compute_stats(const SimpleGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> undirected;
  for (const auto& [u, v] : g.edges)
    if (u != v) undirected.insert({std::min(u, v), std::max(u, v)});
  return stats_from(g.node_count, undirected, 2 * undirected.size());
}

}  // namespace dadnet
