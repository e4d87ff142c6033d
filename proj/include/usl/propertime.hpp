// Proper time of a stochastic computation: the minimum of T(h)/nu(h) over
// trajectories between two states, the input/output variant over decoding
// terminals, the success-by-time curve with its optimal fixed cutoff, and
// the submultiplicativity check.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "usl/bestfirst.hpp"
#include "usl/dynsys.hpp"
#include "usl/errors.hpp"

namespace usl::propertime {

using dynsys::StateId;
using dynsys::SystemModel;
using dynsys::Trajectory;

struct ProperTimeResult {
  bool finite = false;
  double log2_tau = std::numeric_limits<double>::infinity();
  std::optional<Trajectory> witness;
  std::uint64_t nodes_expanded = 0;
  // True when infinity is certified by exhausting the reachable component
  // of a finite system rather than by hitting a cap.
  bool exhausted = false;

  double tau() const { return finite ? std::exp2(log2_tau) : std::numeric_limits<double>::infinity(); }
};

namespace detail {

template <class GoalFn>
ProperTimeResult run_search(const SystemModel& model, StateId start, GoalFn&& goal,
                            std::uint64_t node_cap) {
  dynsys::FiniteSystemView view{&model};
  auto outcome = bestfirst::search(view, start, goal, node_cap);
  ProperTimeResult r;
  r.nodes_expanded = outcome.visited;
  switch (outcome.status) {
    case bestfirst::Status::kFound: {
      r.finite = true;
      Trajectory t;
      t.states = outcome.path;
      t.log2_prob = outcome.log2_prob;
      t.time = outcome.time;
      r.log2_tau = t.log2_tau();
      r.witness = std::move(t);
      return r;
    }
    case bestfirst::Status::kExhausted:
      r.exhausted = true;
      return r;
    case bestfirst::Status::kCapped:
      throw BudgetExceeded(outcome.visited);
  }
  return r;
}

}  // namespace detail

// Exact minimum of T(h)/nu(h) over u -> v trajectories. Correctness rests
// on cost monotonicity: any one-step extension strictly increases T/nu, so
// the first time v is popped by the best-first search its path realizes
// the minimum. Unreachable targets in a finite system return infinity with
// an exhaustion certificate without expanding the path tree.
inline ProperTimeResult proper_time(const SystemModel& model, StateId u, StateId v,
                                    std::uint64_t node_cap = 50'000'000) {
  if (!model.valid_state(u) || !model.valid_state(v)) throw DomainError("invalid state id");
  auto reachable = model.reachable_from(u);
  if (!reachable[v.value]) {
    ProperTimeResult r;
    r.exhausted = true;
    return r;
  }
  return detail::run_search(model, u, [v](StateId s) { return s == v; }, node_cap);
}

// Minimum T/nu over trajectories from enc(input) that end in a terminal
// state decoding to the expected output.
inline ProperTimeResult proper_time_output(const SystemModel& model, const dynsys::OutputSpec& spec,
                                           std::uint64_t node_cap = 50'000'000) {
  auto start = model.encode(spec.input);
  if (!start) throw DomainError("input \"" + spec.input + "\" is not encodable");

  auto decodes_to_expected = [&](StateId s) {
    if (!model.is_terminal(s)) return false;
    auto dec = model.decode(s);
    return dec && *dec == spec.expected_output;
  };

  auto reachable = model.reachable_from(*start);
  bool any = false;
  for (std::uint32_t s = 0; s < model.state_count() && !any; ++s)
    any = reachable[s] && decodes_to_expected(StateId{s});
  if (!any) throw NoWitness("no terminal decoding to \"" + spec.expected_output + "\" is reachable");

  return detail::run_search(model, *start, decodes_to_expected, node_cap);
}

struct SuccessCurve {
  // f[t-1] = F(t) = P(reach a terminal state within the first t states).
  std::vector<double> f;

  double at(std::int64_t t) const { return f.at(static_cast<std::size_t>(t - 1)); }
  std::int64_t t_max() const { return static_cast<std::int64_t>(f.size()); }
};

// Exact F(t) for t = 1..t_max by forward probability propagation. Success
// mass freezes on first arrival in a terminal state; absorbing states hold
// their mass without ever succeeding.
inline SuccessCurve success_curve(const SystemModel& model, StateId start, std::int64_t t_max) {
  if (t_max < 1) throw DomainError("t_max must be >= 1");
  if (!model.valid_state(start)) throw DomainError("invalid start state");

  std::vector<double> mass(model.state_count(), 0.0);
  double success = 0.0;
  if (model.is_terminal(start))
    success = 1.0;
  else
    mass[start.value] = 1.0;

  SuccessCurve curve;
  curve.f.reserve(static_cast<std::size_t>(t_max));
  curve.f.push_back(success);
  for (std::int64_t t = 2; t <= t_max; ++t) {
    std::vector<double> next(model.state_count(), 0.0);
    for (std::uint32_t s = 0; s < model.state_count(); ++s) {
      if (mass[s] == 0.0) continue;
      for (const dynsys::Edge& e : model.successors(StateId{s})) {
        if (model.is_terminal(e.to))
          success += mass[s] * e.prob;
        else
          next[e.to.value] += mass[s] * e.prob;
      }
    }
    mass = std::move(next);
    curve.f.push_back(success);
  }
  return curve;
}

struct TauStar {
  double tau_star = 0.0;
  std::int64_t argmin_t = 0;
};

// min over t of t/F(t); ties go to the smaller cutoff.
inline TauStar tau_star(const SuccessCurve& curve) {
  TauStar best;
  best.tau_star = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 1; t <= curve.t_max(); ++t) {
    double f = curve.at(t);
    if (f <= 0.0) continue;
    double value = static_cast<double>(t) / f;
    if (value < best.tau_star) {
      best.tau_star = value;
      best.argmin_t = t;
    }
  }
  if (best.argmin_t == 0) throw NeverSucceeds("success curve is identically zero");
  return best;
}

struct SubmultReport {
  double log2_tau_xy = 0.0;
  double log2_tau_yz = 0.0;
  double log2_tau_xz = 0.0;
  bool holds = false;
};

// Checks tau(x->z) <= tau(x->y) * tau(y->z) in log space with relative
// slack 1e-9. Infinite right-hand sides hold vacuously.
inline SubmultReport check_submultiplicative(const SystemModel& model, StateId x, StateId y,
                                             StateId z, std::uint64_t node_cap = 50'000'000) {
  constexpr double kSlack = 1e-9;
  auto xy = proper_time(model, x, y, node_cap);
  auto yz = proper_time(model, y, z, node_cap);
  auto xz = proper_time(model, x, z, node_cap);
  SubmultReport report;
  report.log2_tau_xy = xy.log2_tau;
  report.log2_tau_yz = yz.log2_tau;
  report.log2_tau_xz = xz.log2_tau;
  if (!xy.finite || !yz.finite) {
    report.holds = true;  // rhs infinite
  } else if (!xz.finite) {
    report.holds = false;  // composition of witnesses exists, so this would be a defect
  } else {
    double rhs = xy.log2_tau + yz.log2_tau;
    report.holds = xz.log2_tau <= rhs + kSlack * std::max(1.0, std::abs(rhs));
  }
  return report;
}

}  // namespace usl::propertime
