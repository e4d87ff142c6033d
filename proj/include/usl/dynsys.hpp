// Finite stochastic dynamical systems: explicit state tables with
// per-state transition distributions, terminal states, and input/output
// maps. Trajectories carry their probability in log2 space throughout;
// products of edge probabilities are never formed directly.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "usl/errors.hpp"

namespace usl::dynsys {

struct StateId {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const StateId&) const = default;
};

struct Edge {
  StateId to;
  double prob = 0.0;
  double log2_prob = 0.0;
};

// Output token a decoder maps to when a terminating trajectory does not
// produce the verified answer.
inline constexpr std::string_view kErrorToken = "<error>";

// A finite system, explicitly tabulated. Immutable once finalized; all
// operations on it are pure, so instances can be shared freely across
// concurrent workers.
class SystemModel {
 public:
  SystemModel() = default;
  explicit SystemModel(std::uint32_t states) { resize(states); }

  void resize(std::uint32_t states) {
    state_count_ = states;
    transitions_.assign(states, {});
    terminal_.assign(states, false);
  }

  void add_edge(StateId from, StateId to, double prob) {
    transitions_.at(from.value).push_back(Edge{to, prob, std::log2(prob)});
  }

  void mark_terminal(StateId s) { terminal_.at(s.value) = true; }
  void set_encoder(std::string input, StateId s) { encoder_[std::move(input)] = s; }
  void set_decoder(StateId s, std::string output) { decoder_[s.value] = std::move(output); }

  // Sorts successor lists by target id; call once after construction.
  void finalize() {
    for (auto& edges : transitions_)
      std::sort(edges.begin(), edges.end(),
                [](const Edge& a, const Edge& b) { return a.to < b.to; });
  }

  std::uint32_t state_count() const { return state_count_; }
  bool valid_state(StateId s) const { return s.value < state_count_; }

  const std::vector<Edge>& successors(StateId s) const { return transitions_.at(s.value); }

  bool is_terminal(StateId s) const { return terminal_.at(s.value); }

  // Absorbing failure state: a single self-loop of probability one.
  bool is_absorbing(StateId s) const {
    const auto& e = transitions_.at(s.value);
    return e.size() == 1 && e[0].to == s && e[0].prob == 1.0;
  }

  // Trajectories end at terminal states and are not extended past
  // absorbing ones (extending a probability-one self-loop never reaches
  // anything new).
  bool extendable(StateId s) const { return !is_terminal(s) && !is_absorbing(s) && !successors(s).empty(); }

  std::optional<StateId> encode(std::string_view input) const {
    auto it = encoder_.find(std::string(input));
    if (it == encoder_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::string> decode(StateId s) const {
    auto it = decoder_.find(s.value);
    if (it == decoder_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, StateId>& encoder() const { return encoder_; }
  const std::unordered_map<std::uint32_t, std::string>& decoder() const { return decoder_; }

  std::optional<Edge> find_edge(StateId from, StateId to) const {
    for (const Edge& e : successors(from))
      if (e.to == to) return e;
    return std::nullopt;
  }

  // States reachable from `start` following edges forward.
  std::vector<bool> reachable_from(StateId start) const {
    std::vector<bool> seen(state_count_, false);
    std::vector<StateId> stack{start};
    seen[start.value] = true;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      if (is_terminal(s)) continue;
      for (const Edge& e : successors(s)) {
        if (!seen[e.to.value]) {
          seen[e.to.value] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  std::uint32_t state_count_ = 0;
  std::vector<std::vector<Edge>> transitions_;
  std::vector<bool> terminal_;
  std::map<std::string, StateId> encoder_;
  std::unordered_map<std::uint32_t, std::string> decoder_;
};

struct Trajectory {
  std::vector<StateId> states;
  double log2_prob = 0.0;  // sum of log2 edge probabilities, 0 for a single state
  std::int64_t time = 0;   // number of states in the sequence

  double prob() const { return std::exp2(log2_prob); }
  // Canonical log-space value of T(h)/nu(h); comparisons throughout the
  // library happen on this quantity.
  double log2_tau() const { return std::log2(static_cast<double>(time)) - log2_prob; }
  double tau() const { return std::exp2(log2_tau()); }
};

// All invariant violations found, empty when the model is valid. Nothing
// throws here; callers decide what a violation costs them.
inline std::vector<std::string> validate_system(const SystemModel& model) {
  std::vector<std::string> report;
  constexpr double kProbSumTol = 1e-12;

  for (std::uint32_t s = 0; s < model.state_count(); ++s) {
    StateId id{s};
    const auto& edges = model.successors(id);
    for (const Edge& e : edges) {
      if (!model.valid_state(e.to))
        report.push_back("state " + std::to_string(s) + ": edge to invalid state " +
                         std::to_string(e.to.value));
      if (!(e.prob > 0.0) || e.prob > 1.0)
        report.push_back("state " + std::to_string(s) + ": edge probability " +
                         std::to_string(e.prob) + " outside (0,1]");
    }
    if (!model.is_terminal(id) && !edges.empty()) {
      double sum = 0.0;
      for (const Edge& e : edges) sum += e.prob;
      if (std::abs(sum - 1.0) > kProbSumTol)
        report.push_back("state " + std::to_string(s) + ": probabilities sum to " +
                         std::to_string(sum));
    }
    if (model.is_terminal(id) && !model.decode(id))
      report.push_back("state " + std::to_string(s) + ": undecodable terminal");
  }

  // Single-output check, affordable only on small tables: every terminal
  // reachable from an encoded input must decode to one output (or the
  // error token).
  if (model.state_count() <= 1000) {
    for (const auto& [input, start] : model.encoder()) {
      auto seen = model.reachable_from(start);
      std::string output;
      bool have = false;
      for (std::uint32_t s = 0; s < model.state_count(); ++s) {
        if (!seen[s] || !model.is_terminal(StateId{s})) continue;
        auto dec = model.decode(StateId{s});
        if (!dec || *dec == kErrorToken) continue;
        if (have && *dec != output)
          report.push_back("input \"" + input + "\": reachable terminals decode to both \"" +
                           output + "\" and \"" + *dec + "\"");
        output = *dec;
        have = true;
      }
    }
  }

  return report;
}

// Scores a given state sequence: exact time and log2 probability.
inline Trajectory trajectory_stats(const SystemModel& model, const std::vector<StateId>& states) {
  if (states.empty()) throw DomainError("trajectory must contain at least one state");
  Trajectory t;
  t.states = states;
  t.time = static_cast<std::int64_t>(states.size());
  t.log2_prob = 0.0;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    auto edge = model.find_edge(states[i], states[i + 1]);
    if (!edge) throw InvalidEdge(i);
    t.log2_prob += edge->log2_prob;
  }
  return t;
}

// Visits every trajectory from `start` with time <= max_time exactly once,
// in nondecreasing time order (lexicographic within a layer). Terminal and
// absorbing states end a trajectory. Throws BudgetExceeded when more than
// node_cap trajectories would be produced.
inline void enumerate_trajectories(const SystemModel& model, StateId start,
                                   std::int64_t max_time,
                                   const std::function<void(const Trajectory&)>& visit,
                                   std::uint64_t node_cap = 1'000'000) {
  if (max_time < 1) throw DomainError("max_time must be >= 1");
  if (!model.valid_state(start)) throw DomainError("invalid start state");

  struct Partial {
    std::vector<StateId> states;
    double log2_prob;
  };

  std::uint64_t produced = 0;
  std::vector<Partial> layer{{{start}, 0.0}};
  for (std::int64_t t = 1; t <= max_time && !layer.empty(); ++t) {
    std::vector<Partial> next;
    for (const Partial& p : layer) {
      if (++produced > node_cap) throw BudgetExceeded(produced - 1);
      Trajectory out;
      out.states = p.states;
      out.log2_prob = p.log2_prob;
      out.time = t;
      visit(out);
      if (t == max_time) continue;
      StateId last = p.states.back();
      if (!model.extendable(last)) continue;
      for (const Edge& e : model.successors(last)) {
        Partial q;
        q.states = p.states;
        q.states.push_back(e.to);
        q.log2_prob = p.log2_prob + e.log2_prob;
        next.push_back(std::move(q));
      }
    }
    layer = std::move(next);
  }
}

inline std::vector<Trajectory> enumerate_trajectories(const SystemModel& model, StateId start,
                                                      std::int64_t max_time,
                                                      std::uint64_t node_cap = 1'000'000) {
  std::vector<Trajectory> out;
  enumerate_trajectories(
      model, start, max_time, [&](const Trajectory& t) { out.push_back(t); }, node_cap);
  return out;
}

struct OutputSpec {
  std::string input;
  std::string expected_output;
};

// Adapters used by the generic searches in bestfirst.hpp.
struct FiniteSystemView {
  using State = StateId;
  const SystemModel* model;

  bool extendable(State s) const { return model->extendable(s); }

  template <class Fn>
  void for_each_successor(State s, Fn&& fn) const {
    for (const Edge& e : model->successors(s)) fn(e.to, e.log2_prob, std::int64_t{1});
  }
};

// A system given only by a successor function, expanded on demand. Used
// for state spaces too large (or too infinite) to tabulate; searches over
// it must run with an explicit node cap.
struct LazySystem {
  using State = std::uint64_t;
  std::function<std::vector<std::pair<State, double>>(State)> successors;  // (next, prob)

  bool extendable(State) const { return true; }

  template <class Fn>
  void for_each_successor(State s, Fn&& fn) const {
    for (const auto& [next, prob] : successors(s)) fn(next, std::log2(prob), std::int64_t{1});
  }
};

}  // namespace usl::dynsys
