#pragma once

#include "beamsim/types.hpp"

#include <algorithm>
#include <vector>

namespace beamsim {

// Directed links for one time step, stored as out-adjacency lists.
class LinkSet {
 public:
  LinkSet() = default;
  explicit LinkSet(int n) : out_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(out_.size()); }

  void add(NodeId from, NodeId to) {
    if (from == to) return;
    auto& row = out_[static_cast<std::size_t>(from)];
    const auto it = std::lower_bound(row.begin(), row.end(), to);
    if (it == row.end() || *it != to) row.insert(it, to);
  }

  void add_symmetric(NodeId a, NodeId b) {
    add(a, b);
    add(b, a);
  }

  bool has(NodeId from, NodeId to) const {
    const auto& row = out_[static_cast<std::size_t>(from)];
    return std::binary_search(row.begin(), row.end(), to);
  }

  const std::vector<NodeId>& out(NodeId v) const {
    return out_[static_cast<std::size_t>(v)];
  }

  std::size_t link_count() const {
    std::size_t n = 0;
    for (const auto& row : out_) n += row.size();
    return n;
  }

  Eigen::MatrixXd adjacency() const {
    const auto n = static_cast<Eigen::Index>(out_.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u)
      for (NodeId v : out_[static_cast<std::size_t>(u)]) a(u, v) = 1.0;
    return a;
  }

  bool operator==(const LinkSet&) const = default;

 private:
  std::vector<std::vector<NodeId>> out_;
};

// Symmetric links between nodes at most r apart.
inline LinkSet disk_links(const Positions& positions, double r) {
  const auto n = static_cast<int>(positions.cols());
  LinkSet links(n);
  const double r2 = r * r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((positions.col(i) - positions.col(j)).squaredNorm() <= r2)
        links.add_symmetric(i, j);
  return links;
}

}  // namespace beamsim
