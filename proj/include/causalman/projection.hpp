#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalman/scm.hpp"

namespace causalman {

// Acyclic directed mixed graph over observables. Edge endpoints are indices
// into `nodes`; bidirected pairs are stored with first < second.
struct Admg {
  std::vector<std::string> nodes;
  std::vector<NodeId> source_ids;  // id of each node in the generating graph
  std::set<std::pair<std::size_t, std::size_t>> directed;
  std::set<std::pair<std::size_t, std::size_t>> bidirected;

  std::size_t index_of(std::string_view name) const;  // throws ConfigError
  // Pairs joined by both a directed and a bidirected edge.
  std::size_t collapsed_pairs() const;
  bool operator==(const Admg&) const = default;
};

Admg latent_project(const ScmGraph& graph);

// Graph variant without mechanisms, for separation queries and tests.
Admg as_admg(const ScmGraph& graph);

// x, y, z: pairwise disjoint; overlap throws ConfigError.
bool d_separated(const ScmGraph& graph, const std::vector<NodeId>& x,
                 const std::vector<NodeId>& y, const std::vector<NodeId>& z);
bool m_separated(const Admg& admg, const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y, const std::vector<std::size_t>& z);

}  // namespace causalman
