#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "antmesh/rng.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

struct PheromoneEntry {
  NodeId via = 0;
  double p = 0.0;
};

/// Per-node next-hop probabilities, one column per destination.
///
/// Rows always match the current neighbor set and every non-empty column
/// sums to one. New columns start uniform; a neighbor that joins later is
/// inserted at 1/(2|N|) before renormalizing.
class PheromoneTable {
 public:
  PheromoneTable() = default;
  explicit PheromoneTable(std::vector<NodeId> neighbors);

  const std::vector<NodeId>& neighbors() const { return neighbors_; }
  void add_neighbor(NodeId n);
  void remove_neighbor(NodeId n);
  /// Applies add/remove so the row set equals `neighbors`.
  void set_neighbors(std::vector<NodeId> neighbors);

  bool has_destination(NodeId dst) const { return columns_.count(dst) != 0; }
  /// Creates a uniform column if `dst` has none yet.
  void ensure_destination(NodeId dst);
  std::vector<PheromoneEntry> column(NodeId dst) const;
  double probability(NodeId dst, NodeId via) const;
  double column_sum(NodeId dst) const;
  std::vector<NodeId> destinations() const;

  /// P[via] <- (P[via] + dp)/(1 + dp); every other P[j] <- P[j]/(1 + dp).
  /// Returns false if `via` is not a current neighbor.
  bool reinforce(NodeId dst, NodeId via, double dp);

 private:
  std::optional<std::size_t> row(NodeId n) const;
  static void normalize(std::vector<double>& col);

  std::vector<NodeId> neighbors_;  // ascending
  std::map<NodeId, std::vector<double>> columns_;
};

/// Pseudo-random transition rule over explicit candidates.
///
/// With u <= p0 the candidate with the highest pheromone wins (lowest id on
/// ties); otherwise `v` samples proportionally to the pheromone renormalized
/// over the candidates. Excluded ids are ignored. Returns nullopt when no
/// candidate remains.
std::optional<NodeId> choose_next_hop(std::span<const PheromoneEntry> column, std::span<const NodeId> exclude,
                                      double p0, double u, double v);

/// Draws the two uniforms for choose_next_hop from `rng` (the second only
/// when exploring).
std::optional<NodeId> next_hop(const PheromoneTable& table, NodeId dst, std::span<const NodeId> exclude, double p0,
                               RngStream& rng);

}  // namespace antmesh
