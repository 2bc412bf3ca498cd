#include "causalman/projection.hpp"

#include <algorithm>

#include "causalman/errors.hpp"

namespace causalman {

std::size_t Admg::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == name) return i;
  }
  throw ConfigError("unknown ADMG node '" + std::string(name) + "'");
}

std::size_t Admg::collapsed_pairs() const {
  std::size_t n = 0;
  for (const auto& [a, b] : bidirected) {
    if (directed.count({a, b}) || directed.count({b, a})) ++n;
  }
  return n;
}

namespace {

std::vector<std::vector<NodeId>> children_of(const ScmGraph& g) {
  std::vector<std::vector<NodeId>> ch(g.size());
  for (const auto& [p, c] : g.edges()) ch[p].push_back(c);
  return ch;
}

// Observables reachable from `start` along children whose intermediates are
// all latent. `start` itself is not reported.
std::vector<NodeId> latent_reach(const ScmGraph& g, const std::vector<std::vector<NodeId>>& ch,
                                 NodeId start) {
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeId> stack{start}, found;
  seen[start] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : ch[v]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (g.node(c).visibility == Visibility::Observable) {
        found.push_back(c);
      } else {
        stack.push_back(c);
      }
    }
  }
  return found;
}

struct Mixed {
  std::vector<std::vector<std::size_t>> children, parents, spouses;
};

Mixed adjacency(const Admg& a) {
  Mixed m;
  m.children.resize(a.nodes.size());
  m.parents.resize(a.nodes.size());
  m.spouses.resize(a.nodes.size());
  for (const auto& [u, v] : a.directed) {
    m.children[u].push_back(v);
    m.parents[v].push_back(u);
  }
  for (const auto& [u, v] : a.bidirected) {
    m.spouses[u].push_back(v);
    m.spouses[v].push_back(u);
  }
  return m;
}

void check_disjoint(std::size_t n, const std::vector<std::size_t>& x,
                    const std::vector<std::size_t>& y, const std::vector<std::size_t>& z) {
  std::vector<int> owner(n, -1);
  int set = 0;
  for (const auto* s : {&x, &y, &z}) {
    for (std::size_t v : *s) {
      if (v >= n) throw ConfigError("separation query: unknown node " + std::to_string(v));
      if (owner[v] != -1 && owner[v] != set) {
        throw ConfigError("separation query: node sets overlap");
      }
      owner[v] = set;
    }
    ++set;
  }
}

// Reachability over (node, arrived-with-arrowhead) states. A node passed as a
// collider must be an ancestor of z (or in z); a non-collider must not be in z.
bool separated(const Mixed& m, const std::vector<std::size_t>& x,
               const std::vector<std::size_t>& y, const std::vector<std::size_t>& z) {
  const std::size_t n = m.children.size();
  std::vector<char> in_z(n, 0), an_z(n, 0), is_y(n, 0);
  for (std::size_t v : z) in_z[v] = 1;
  for (std::size_t v : y) is_y[v] = 1;
  std::vector<std::size_t> stack(z.begin(), z.end());
  for (std::size_t v : z) an_z[v] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t p : m.parents[v]) {
      if (!an_z[p]) {
        an_z[p] = 1;
        stack.push_back(p);
      }
    }
  }

  std::vector<char> visited(2 * n, 0);
  std::vector<std::pair<std::size_t, bool>> todo;
  for (std::size_t v : x) {
    todo.push_back({v, false});
    visited[2 * v] = 1;
  }
  auto push = [&](std::size_t w, bool head) {
    const std::size_t s = 2 * w + (head ? 1 : 0);
    if (!visited[s]) {
      visited[s] = 1;
      todo.push_back({w, head});
    }
  };
  while (!todo.empty()) {
    const auto [v, head] = todo.back();
    todo.pop_back();
    if (is_y[v]) return false;
    // Leaving through a tail at v: v is never a collider.
    if (!in_z[v]) {
      for (std::size_t c : m.children[v]) push(c, true);
    }
    // Leaving through an arrowhead at v.
    const bool pass = head ? static_cast<bool>(an_z[v]) : !in_z[v];
    if (pass) {
      for (std::size_t p : m.parents[v]) push(p, false);
      for (std::size_t s : m.spouses[v]) push(s, true);
    }
  }
  return true;
}

}  // namespace

Admg latent_project(const ScmGraph& graph) {
  require_valid(graph);
  Admg out;
  std::vector<std::size_t> index(graph.size(), SIZE_MAX);
  for (const auto& spec : graph.nodes()) {
    if (spec.visibility != Visibility::Observable) continue;
    index[spec.id] = out.nodes.size();
    out.nodes.push_back(spec.name);
    out.source_ids.push_back(spec.id);
  }
  const auto ch = children_of(graph);
  for (const auto& spec : graph.nodes()) {
    const auto reach = latent_reach(graph, ch, spec.id);
    if (spec.visibility == Visibility::Observable) {
      for (NodeId b : reach) out.directed.insert({index[spec.id], index[b]});
    } else {
      for (std::size_t i = 0; i < reach.size(); ++i) {
        for (std::size_t j = i + 1; j < reach.size(); ++j) {
          const std::size_t a = index[reach[i]], b = index[reach[j]];
          out.bidirected.insert({std::min(a, b), std::max(a, b)});
        }
      }
    }
  }
  return out;
}

Admg as_admg(const ScmGraph& graph) {
  Admg out;
  for (const auto& spec : graph.nodes()) {
    out.nodes.push_back(spec.name);
    out.source_ids.push_back(spec.id);
  }
  for (const auto& [p, c] : graph.edges()) out.directed.insert({p, c});
  return out;
}

bool d_separated(const ScmGraph& graph, const std::vector<NodeId>& x,
                 const std::vector<NodeId>& y, const std::vector<NodeId>& z) {
  return m_separated(as_admg(graph), {x.begin(), x.end()}, {y.begin(), y.end()},
                     {z.begin(), z.end()});
}

bool m_separated(const Admg& admg, const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y, const std::vector<std::size_t>& z) {
  check_disjoint(admg.nodes.size(), x, y, z);
  return separated(adjacency(admg), x, y, z);
}

}  // namespace causalman
