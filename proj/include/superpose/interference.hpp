#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "superpose/core.hpp"

namespace superpose {

// Vertices are features; (i, j) is an edge iff |C_ij| > tau or |C_ji| > tau.
class InterferenceGraph {
 public:
  InterferenceGraph(std::size_t m, double tau, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return m_; }
  double tau() const noexcept { return tau_; }
  // Sorted (i < j) pairs.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  bool adjacent(std::size_t u, std::size_t v) const;

 private:
  std::size_t m_;
  double tau_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

InterferenceGraph build_graph(const Matrix& c, double tau);

struct RowInterference {
  std::size_t row = 0;
  std::size_t count = 0;
};

// Row with the most off-diagonal |C_ij| > tau; ties go to the smallest row.
RowInterference max_row_interferers(const Matrix& c, double tau);

// m^2/(2r) - m/2: edges forced in a graph on m vertices with no independent
// set of size r. r may be fractional (e.g. m/(4k+1)); requires 2 <= r <= m.
double turan_edge_floor(double m, double r);

// Maximal independent set from ascending-degree greedy (ties by index).
std::vector<std::size_t> greedy_independent_set(const InterferenceGraph& g);

inline constexpr std::size_t kExactAlphaMaxVertices = 24;

// Independence number by branch and bound; only for m <= 24.
std::size_t exact_independence_number(const InterferenceGraph& g);

bool is_independent(const InterferenceGraph& g, const std::vector<std::size_t>& vertices);

struct TuranFloor {
  double r = 0.0;
  double floor = 0.0;
};

// Everything the interfere command reports for C = B^T A at one threshold.
struct InterferenceSummary {
  std::size_t m = 0;
  double tau = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  RowInterference max_row;
  std::vector<std::size_t> greedy_set;
  std::optional<std::size_t> exact_alpha;
  std::optional<TuranFloor> turan;
};

InterferenceSummary summarize_interference(const Matrix& c, double tau, bool exact_alpha,
                                           std::optional<double> r = std::nullopt);

}  // namespace superpose
