#pragma once

/**
 * @file graph.hpp
 * @brief The functional graph u -> D(u) over Z_m^n and its DOT export.
 *
 * Components are weakly connected: two states share a component when they
 * reach a common state. Every component of a functional graph on a finite
 * set holds exactly one cycle.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ducci/errors.hpp"
#include "ducci/orbit.hpp"
#include "ducci/system.hpp"

namespace ducci {

class TransitionGraph {
 public:
  /// `nodes` must be sorted and closed under D; `targets[i]` is the state
  /// index of D(nodes[i]).
  TransitionGraph(DucciSystem sys, std::vector<std::uint64_t> nodes,
                  std::vector<std::uint64_t> targets)
      : sys_(sys), nodes_(std::move(nodes)), targets_(std::move(targets)) {
    indegree_.assign(nodes_.size(), 0);
    for (auto t : targets_) ++indegree_[position(t)];
  }

  const DucciSystem& system() const noexcept { return sys_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::uint64_t node_index(std::size_t i) const { return nodes_[i]; }
  std::uint64_t target_index(std::size_t i) const { return targets_[i]; }
  std::size_t target_position(std::size_t i) const { return position(targets_[i]); }
  ResidueTuple node(std::size_t i) const { return tuple_at(sys_, nodes_[i]); }
  ResidueTuple target(std::size_t i) const { return tuple_at(sys_, targets_[i]); }
  std::uint32_t indegree(std::size_t i) const { return indegree_[i]; }

  bool contains(const ResidueTuple& u) const {
    if (u.size() != sys_.length()) return false;
    for (auto v : u.entries())
      if (v >= sys_.modulus()) return false;
    return std::binary_search(nodes_.begin(), nodes_.end(), state_index(sys_, u));
  }

  /// Position of a state index among the nodes.
  std::size_t position(std::uint64_t state) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), state);
    if (it == nodes_.end() || *it != state)
      throw membership_error("state " + std::to_string(state) + " is not in the graph");
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  std::size_t self_loops() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) count += nodes_[i] == targets_[i];
    return count;
  }

  /// Positions of the nodes lying on the graph's cycles.
  std::vector<std::size_t> cycle_positions() const {
    std::vector<std::uint64_t> succ(nodes_.size());
    for (std::size_t i = 0; i < succ.size(); ++i) succ[i] = position(targets_[i]);
    const auto alive = detail::cycle_states(succ);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alive.size(); ++i)
      if (alive[i]) out.push_back(i);
    return out;
  }

  /// Weak-component label per node; labels are dense, ordered by smallest node.
  std::vector<std::size_t> component_labels() const {
    std::vector<std::size_t> parent(nodes_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto a = find(i), b = find(position(targets_[i]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> label(nodes_.size());
    std::map<std::size_t, std::size_t> dense;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto root = find(i);
      label[i] = dense.try_emplace(root, dense.size()).first->second;
    }
    return label;
  }

  /// Subgraph induced by the nodes at `positions` (must be closed under D).
  TransitionGraph induced(const std::vector<std::size_t>& positions) const {
    std::vector<std::uint64_t> nodes, targets;
    nodes.reserve(positions.size());
    targets.reserve(positions.size());
    for (auto p : positions) {
      nodes.push_back(nodes_[p]);
      targets.push_back(targets_[p]);
    }
    return TransitionGraph(sys_, std::move(nodes), std::move(targets));
  }

 private:
  DucciSystem sys_;
  std::vector<std::uint64_t> nodes_;
  std::vector<std::uint64_t> targets_;
  std::vector<std::uint32_t> indegree_;
};

inline TransitionGraph build_graph(const DucciSystem& sys,
                                   std::uint64_t max_nodes = default_state_cap) {
  auto targets = detail::successor_table(sys, max_nodes, "build_graph");
  std::vector<std::uint64_t> nodes(targets.size());
  std::iota(nodes.begin(), nodes.end(), std::uint64_t{0});
  return TransitionGraph(sys, std::move(nodes), std::move(targets));
}

/// The weakly connected component containing u.
inline TransitionGraph component_of(const TransitionGraph& graph, const ResidueTuple& u) {
  if (!graph.contains(u)) throw membership_error("tuple " + to_text(u) + " is not in the graph");
  const auto labels = graph.component_labels();
  const auto want = labels[graph.position(state_index(graph.system(), u))];
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == want) members.push_back(i);
  return graph.induced(members);
}

/// All weak components, ordered by their smallest state.
inline std::vector<TransitionGraph> weak_components(const TransitionGraph& graph) {
  const auto labels = graph.component_labels();
  const std::size_t count =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<std::size_t>> groups(count);
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  std::vector<TransitionGraph> out;
  out.reserve(count);
  for (const auto& g : groups) out.push_back(graph.induced(g));
  return out;
}

/// DOT digraph: node lines in lexicographic order, then one edge per node in
/// the same order.
inline void write_dot(std::ostream& os, const TransitionGraph& graph) {
  os << "digraph ducci {\n";
  for (std::size_t i = 0; i < graph.node_count(); ++i)
    os << "  \"" << to_text(graph.node(i)) << "\";\n";
  for (std::size_t i = 0; i < graph.edge_count(); ++i)
    os << "  \"" << to_text(graph.node(i)) << "\" -> \"" << to_text(graph.target(i)) << "\";\n";
  os << "}\n";
}

inline std::string to_dot(const TransitionGraph& graph) {
  std::ostringstream os;
  write_dot(os, graph);
  return os.str();
}

/// Edge list CSV with header "source,target"; labels are quoted.
inline void write_edge_csv(std::ostream& os, const TransitionGraph& graph) {
  os << "source,target\n";
  for (std::size_t i = 0; i < graph.edge_count(); ++i)
    os << '"' << to_text(graph.node(i)) << "\",\"" << to_text(graph.target(i)) << "\"\n";
}

}  // namespace ducci
