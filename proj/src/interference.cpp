#include "superpose/interference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace superpose {

InterferenceGraph::InterferenceGraph(std::size_t m, double tau,
                                     std::vector<std::pair<std::size_t, std::size_t>> edges)
    : m_(m), tau_(tau), edges_(std::move(edges)), adjacency_(m) {
  for (auto& e : edges_) {
    if (e.first == e.second) fail(ErrorKind::Parameter, "self-loop at vertex " + std::to_string(e.first));
    if (e.first >= m_ || e.second >= m_) fail(ErrorKind::Parameter, "edge endpoint out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& [i, j] : edges_) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& n : adjacency_) std::sort(n.begin(), n.end());
}

bool InterferenceGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto& n = adjacency_.at(u);
  return std::binary_search(n.begin(), n.end(), v);
}

InterferenceGraph build_graph(const Matrix& c, double tau) {
  if (c.rows() != c.cols()) fail(ErrorKind::Dimension, "interference matrix must be square, got " + c.shape());
  if (!(tau >= 0.0)) fail(ErrorKind::Parameter, "tau must be non-negative");
  const std::size_t m = c.rows();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(c(i, j)) > tau || std::abs(c(j, i)) > tau) edges.emplace_back(i, j);
  return InterferenceGraph(m, tau, std::move(edges));
}

RowInterference max_row_interferers(const Matrix& c, double tau) {
  if (c.rows() != c.cols()) fail(ErrorKind::Dimension, "interference matrix must be square, got " + c.shape());
  RowInterference best;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < c.cols(); ++j) n += (j != i && std::abs(c(i, j)) > tau);
    if (n > best.count) best = {i, n};
  }
  return best;
}

double turan_edge_floor(double m, double r) {
  if (!(r >= 2.0 && r <= m))
    fail(ErrorKind::Parameter, "r must lie in [2, m], got r=" + std::to_string(r) + " m=" + std::to_string(m));
  return m * m / (2.0 * r) - m / 2.0;
}

std::vector<std::size_t> greedy_independent_set(const InterferenceGraph& g) {
  const std::size_t m = g.vertex_count();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.degree(a) < g.degree(b); });
  std::vector<char> blocked(m, 0);
  std::vector<std::size_t> chosen;
  for (auto v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    blocked[v] = 1;
    for (auto u : g.neighbors(v)) blocked[u] = 1;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

// Maximum independent set size within `candidates` (bitmask), branching on
// the lowest candidate: either exclude it or take it and drop its neighbours.
std::size_t alpha_search(std::uint32_t candidates, const std::vector<std::uint32_t>& nbr, std::size_t current,
                         std::size_t& best) {
  if (candidates == 0) {
    best = std::max(best, current);
    return best;
  }
  if (current + static_cast<std::size_t>(std::popcount(candidates)) <= best) return best;
  const int v = std::countr_zero(candidates);
  const std::uint32_t rest = candidates & ~(1u << v);
  alpha_search(rest & ~nbr[v], nbr, current + 1, best);
  alpha_search(rest, nbr, current, best);
  return best;
}

}  // namespace

std::size_t exact_independence_number(const InterferenceGraph& g) {
  const std::size_t m = g.vertex_count();
  if (m > kExactAlphaMaxVertices)
    fail(ErrorKind::Guard, "exact independence number limited to m <= 24, got m=" + std::to_string(m));
  std::vector<std::uint32_t> nbr(m, 0);
  for (const auto& [i, j] : g.edges()) {
    nbr[i] |= 1u << j;
    nbr[j] |= 1u << i;
  }
  std::size_t best = 0;
  const std::uint32_t all = m == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  return alpha_search(all, nbr, 0, best);
}

bool is_independent(const InterferenceGraph& g, const std::vector<std::size_t>& vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (g.adjacent(vertices[a], vertices[b])) return false;
  return true;
}

InterferenceSummary summarize_interference(const Matrix& c, double tau, bool exact_alpha, std::optional<double> r) {
  const InterferenceGraph g = build_graph(c, tau);
  InterferenceSummary s;
  s.m = g.vertex_count();
  s.tau = tau;
  s.edges = g.edges();
  s.max_row = max_row_interferers(c, tau);
  s.greedy_set = greedy_independent_set(g);
  if (exact_alpha) s.exact_alpha = exact_independence_number(g);
  if (r) s.turan = TuranFloor{*r, turan_edge_floor(double(s.m), *r)};
  return s;
}

}  // namespace superpose
