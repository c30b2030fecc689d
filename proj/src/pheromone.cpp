#include "antmesh/pheromone.hpp"

#include <algorithm>
#include <numeric>

namespace antmesh {

PheromoneTable::PheromoneTable(std::vector<NodeId> neighbors) : neighbors_(std::move(neighbors)) {
  std::sort(neighbors_.begin(), neighbors_.end());
  neighbors_.erase(std::unique(neighbors_.begin(), neighbors_.end()), neighbors_.end());
}

std::optional<std::size_t> PheromoneTable::row(NodeId n) const {
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), n);
  if (it == neighbors_.end() || *it != n) return std::nullopt;
  return static_cast<std::size_t>(it - neighbors_.begin());
}

void PheromoneTable::normalize(std::vector<double>& col) {
  if (col.empty()) return;
  const double sum = std::accumulate(col.begin(), col.end(), 0.0);
  if (!(sum > 0.0)) {
    std::fill(col.begin(), col.end(), 1.0 / static_cast<double>(col.size()));
    return;
  }
  for (double& p : col) p /= sum;
}

void PheromoneTable::add_neighbor(NodeId n) {
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), n);
  if (it != neighbors_.end() && *it == n) return;
  const auto pos = it - neighbors_.begin();
  neighbors_.insert(it, n);
  const double eps = 1.0 / (2.0 * static_cast<double>(neighbors_.size()));
  for (auto& [dst, col] : columns_) {
    col.insert(col.begin() + pos, eps);
    normalize(col);
  }
}

void PheromoneTable::remove_neighbor(NodeId n) {
  auto r = row(n);
  if (!r) return;
  neighbors_.erase(neighbors_.begin() + static_cast<std::ptrdiff_t>(*r));
  for (auto& [dst, col] : columns_) {
    col.erase(col.begin() + static_cast<std::ptrdiff_t>(*r));
    normalize(col);
  }
}

void PheromoneTable::set_neighbors(std::vector<NodeId> neighbors) {
  std::sort(neighbors.begin(), neighbors.end());
  std::vector<NodeId> gone;
  std::set_difference(neighbors_.begin(), neighbors_.end(), neighbors.begin(), neighbors.end(),
                      std::back_inserter(gone));
  for (NodeId n : gone) remove_neighbor(n);
  if (neighbors_.empty()) {
    // Nothing learned survives; start every column uniform.
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    neighbors_ = std::move(neighbors);
    const double p = neighbors_.empty() ? 0.0 : 1.0 / static_cast<double>(neighbors_.size());
    for (auto& [dst, col] : columns_) col.assign(neighbors_.size(), p);
    return;
  }
  for (NodeId n : neighbors) add_neighbor(n);
}

void PheromoneTable::ensure_destination(NodeId dst) {
  if (has_destination(dst)) return;
  const double p = neighbors_.empty() ? 0.0 : 1.0 / static_cast<double>(neighbors_.size());
  columns_.emplace(dst, std::vector<double>(neighbors_.size(), p));
}

std::vector<PheromoneEntry> PheromoneTable::column(NodeId dst) const {
  std::vector<PheromoneEntry> out;
  auto it = columns_.find(dst);
  if (it == columns_.end()) return out;
  out.reserve(neighbors_.size());
  for (std::size_t i = 0; i < neighbors_.size(); ++i) out.push_back({neighbors_[i], it->second[i]});
  return out;
}

double PheromoneTable::probability(NodeId dst, NodeId via) const {
  auto it = columns_.find(dst);
  auto r = row(via);
  if (it == columns_.end() || !r) return 0.0;
  return it->second[*r];
}

double PheromoneTable::column_sum(NodeId dst) const {
  auto it = columns_.find(dst);
  if (it == columns_.end()) return 0.0;
  return std::accumulate(it->second.begin(), it->second.end(), 0.0);
}

std::vector<NodeId> PheromoneTable::destinations() const {
  std::vector<NodeId> out;
  for (const auto& [dst, col] : columns_) out.push_back(dst);
  return out;
}

bool PheromoneTable::reinforce(NodeId dst, NodeId via, double dp) {
  auto r = row(via);
  if (!r) return false;
  ensure_destination(dst);
  auto& col = columns_[dst];
  const double scale = 1.0 + dp;
  for (std::size_t i = 0; i < col.size(); ++i) {
    col[i] = (i == *r) ? (col[i] + dp) / scale : col[i] / scale;
  }
  return true;
}

std::optional<NodeId> choose_next_hop(std::span<const PheromoneEntry> column, std::span<const NodeId> exclude,
                                      double p0, double u, double v) {
  auto allowed = [&](NodeId n) { return std::find(exclude.begin(), exclude.end(), n) == exclude.end(); };
  const PheromoneEntry* best = nullptr;
  double mass = 0.0;
  std::size_t eligible = 0;
  for (const auto& e : column) {
    if (!allowed(e.via)) continue;
    ++eligible;
    mass += e.p;
    if (!best || e.p > best->p || (e.p == best->p && e.via < best->via)) best = &e;
  }
  if (!best) return std::nullopt;
  if (u <= p0) return best->via;
  if (!(mass > 0.0)) {
    // Every eligible entry decayed to zero: fall back to a uniform pick.
    std::size_t k = std::min(static_cast<std::size_t>(v * static_cast<double>(eligible)), eligible - 1);
    for (const auto& e : column) {
      if (!allowed(e.via)) continue;
      if (k-- == 0) return e.via;
    }
  }
  const double target = v * mass;
  double acc = 0.0;
  const PheromoneEntry* last = nullptr;
  for (const auto& e : column) {
    if (!allowed(e.via)) continue;
    acc += e.p;
    last = &e;
    if (target < acc) return e.via;
  }
  return last->via;
}

std::optional<NodeId> next_hop(const PheromoneTable& table, NodeId dst, std::span<const NodeId> exclude, double p0,
                               RngStream& rng) {
  const auto col = table.column(dst);
  const double u = rng.uniform();
  const double v = u <= p0 ? 0.0 : rng.uniform();
  return choose_next_hop(col, exclude, p0, u, v);
}

}  // namespace antmesh
