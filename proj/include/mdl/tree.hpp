#pragma once

// Sequence-tree enumeration weighted by the true measure, and the matching
// single-path state used by Monte Carlo.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mdl/predictors.hpp"

namespace mdl {

inline constexpr std::uint64_t kNodeBudget = 20'000'000;

// Cursors and frontier for every class member along one path.
class PathState {
 public:
  PathState(const WeightedClass& c, Mode mode);
  PathState(const PathState& other);
  PathState& operator=(const PathState&) = delete;

  const Frontier& frontier() const { return frontier_; }
  SymbolSpan history() const { return history_; }
  std::size_t length() const { return history_.size(); }
  // mu(. | x) as exact rationals from the true model's cursor.
  std::vector<Rational> true_conditional() const;
  void advance(Symbol a);

 private:
  void refresh_next();

  const WeightedClass* class_;
  std::vector<std::unique_ptr<Cursor>> cursors_;
  Frontier frontier_;
  Sequence history_;
};

struct WalkNode {
  SymbolSpan x;
  const Frontier& frontier;
  const Value& mu_mass;  // mu(x)
};

struct WalkOptions {
  std::size_t threads = 1;
  std::uint64_t node_budget = kNodeBudget;
};

// Depth of the fixed split into independent subtrees: smallest s with
// k^s >= 16, capped by the horizon.
std::size_t split_depth(std::size_t alphabet_size, std::size_t horizon);

// Calls visit(task, node) for every node x with l(x) < horizon and mu(x) > 0,
// in lexicographic order within each task. Task 0 holds the nodes above the
// split depth; tasks 1..T are the subtrees rooted at split depth in
// lexicographic order. Returns T + 1. Throws TooLarge past the node budget.
std::size_t walk_tree(const WeightedClass& c, std::size_t horizon, Mode mode, const WalkOptions& opt,
                      const std::function<void(std::size_t, std::size_t)>& prepare,
                      const std::function<void(std::size_t, const WalkNode&)>& visit);

// Accumulator form: one Acc per task, merged in task order so the result
// does not depend on the thread count.
template <class Acc, class Visit, class Merge>
Acc walk_accumulate(const WeightedClass& c, std::size_t horizon, Mode mode, const WalkOptions& opt, const Acc& init,
                    Visit visit, Merge merge) {
  std::vector<Acc> parts;
  walk_tree(
      c, horizon, mode, opt, [&](std::size_t tasks, std::size_t) { parts.assign(tasks, init); },
      [&](std::size_t task, const WalkNode& node) { visit(parts[task], node); });
  Acc out = init;
  for (auto& p : parts) merge(out, p);
  return out;
}

// Sum over x in X^n of mu(x) f(x).
Value expect(const WeightedClass& c, std::size_t n, const std::function<Value(SymbolSpan)>& f,
             Mode mode = Mode::exact, const WalkOptions& opt = {});

}  // namespace mdl
