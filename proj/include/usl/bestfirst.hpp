// Greedy priority search over the tree of partial trajectories, keyed on
// T(h)/nu(h). Extending a path strictly increases the key (time grows and
// probability shrinks), so the first goal node popped realizes the exact
// minimum over all trajectories; the number of nodes visited before that
// is bounded by twice that minimum.
//
// Ties are broken deterministically on (key, time, lexicographic child
// ordinal sequence), which makes outcomes identical across runs.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace usl::bestfirst {

enum class Status {
  kFound,      // goal popped; path is the tau-minimal witness
  kExhausted,  // whole path tree explored, no goal
  kCapped,     // node cap reached first
};

template <class State>
struct PathNode {
  State state;
  std::int32_t parent = -1;   // index into the node store, -1 at the root
  std::int32_t ordinal = 0;   // position among the parent's successors
  double log2_prob = 0.0;
  std::int64_t time = 1;      // states on the path (zero-cost edges excepted)

  double log2_tau() const { return std::log2(static_cast<double>(time)) - log2_prob; }
};

template <class State>
struct Outcome {
  Status status = Status::kExhausted;
  std::vector<State> path;         // root..goal when found
  double log2_prob = 0.0;          // of the found path
  std::int64_t time = 0;           // of the found path
  std::uint64_t visited = 0;       // nodes popped, root and goal included
  std::uint64_t wall_steps = 0;    // total simulated edge time over pops

  double log2_tau() const { return std::log2(static_cast<double>(time)) - log2_prob; }
};

// Sys must provide: a State type, extendable(State), and
// for_each_successor(State, fn(State next, double log2_prob, int64 time_cost)).
// Successor order must be deterministic; it defines the tie-break.
template <class Sys, class GoalFn>
Outcome<typename Sys::State> search(const Sys& sys, typename Sys::State start, GoalFn&& is_goal,
                                    std::uint64_t node_cap) {
  using State = typename Sys::State;
  using Node = PathNode<State>;

  std::vector<Node> nodes;
  nodes.push_back(Node{start, -1, 0, 0.0, 1});

  auto ordinal_path = [&nodes](std::int32_t idx) {
    std::vector<std::int32_t> ords;
    for (std::int32_t i = idx; i >= 0; i = nodes[i].parent) ords.push_back(nodes[i].ordinal);
    std::reverse(ords.begin(), ords.end());
    return ords;
  };

  struct Entry {
    double key;
    std::int64_t time;
    std::int32_t node;
  };
  auto later = [&](const Entry& a, const Entry& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.time != b.time) return a.time > b.time;
    // Exact key ties: smaller lexicographic ordinal sequence first.
    return ordinal_path(a.node) > ordinal_path(b.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> frontier(later);
  frontier.push(Entry{nodes[0].log2_tau(), nodes[0].time, 0});

  Outcome<State> out;
  while (!frontier.empty()) {
    Entry top = frontier.top();
    frontier.pop();
    const Node node = nodes[top.node];
    ++out.visited;
    if (top.node != 0) {
      const Node& parent = nodes[node.parent];
      out.wall_steps += static_cast<std::uint64_t>(node.time - parent.time);
    }

    if (is_goal(node.state)) {
      out.status = Status::kFound;
      out.log2_prob = node.log2_prob;
      out.time = node.time;
      std::vector<State> path;
      for (std::int32_t i = top.node; i >= 0; i = nodes[i].parent) path.push_back(nodes[i].state);
      std::reverse(path.begin(), path.end());
      out.path = std::move(path);
      return out;
    }
    if (out.visited >= node_cap) {
      out.status = Status::kCapped;
      return out;
    }

    if (!sys.extendable(node.state)) continue;
    std::int32_t ordinal = 0;
    sys.for_each_successor(node.state, [&](const State& next, double log2_prob,
                                           std::int64_t time_cost) {
      Node child;
      child.state = next;
      child.parent = top.node;
      child.ordinal = ordinal++;
      child.log2_prob = node.log2_prob + log2_prob;
      child.time = node.time + time_cost;
      auto idx = static_cast<std::int32_t>(nodes.size());
      nodes.push_back(child);
      frontier.push(Entry{child.log2_tau(), child.time, idx});
    });
  }
  out.status = Status::kExhausted;
  return out;
}

}  // namespace usl::bestfirst
