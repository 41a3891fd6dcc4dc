#include "mdl/tree.hpp"

#include <algorithm>
#include <atomic>

#include "mdl/errors.hpp"
#include "mdl/random.hpp"

namespace mdl {

PathState::PathState(const WeightedClass& c, Mode mode) : class_(&c) {
  frontier_.length = 0;
  for (const auto& m : c.models()) {
    cursors_.push_back(m->start());
    frontier_.mass.push_back(Value::of(m->empty_mass(), mode));
  }
  refresh_next();
}

PathState::PathState(const PathState& other)
    : class_(other.class_), frontier_(other.frontier_), history_(other.history_) {
  cursors_.reserve(other.cursors_.size());
  for (const auto& cur : other.cursors_) cursors_.push_back(cur->clone());
}

std::vector<Rational> PathState::true_conditional() const {
  const auto& cur = cursors_.at(class_->require_true_index());
  std::vector<Rational> p;
  for (Symbol a = 0; a < class_->alphabet_size(); ++a) p.push_back(cur->conditional(a));
  return p;
}

void PathState::refresh_next() {
  const std::size_t k = class_->alphabet_size();
  const Mode mode = frontier_.mode();
  frontier_.next.assign(k, {});
  for (std::size_t a = 0; a < k; ++a) {
    auto& row = frontier_.next[a];
    row.reserve(cursors_.size());
    for (std::size_t i = 0; i < cursors_.size(); ++i) {
      const Value& m = frontier_.mass[i];
      row.push_back(m.is_zero() ? m : m * Value::of(cursors_[i]->conditional(static_cast<Symbol>(a)), mode));
    }
  }
}

void PathState::advance(Symbol a) {
  if (a >= class_->alphabet_size()) throw AlphabetMismatch("symbol outside class alphabet");
  frontier_.mass = std::move(frontier_.next[a]);
  for (auto& cur : cursors_) cur->advance(a);
  history_.push_back(a);
  ++frontier_.length;
  refresh_next();
}

std::size_t split_depth(std::size_t alphabet_size, std::size_t horizon) {
  std::size_t s = 0;
  std::size_t leaves = 1;
  while (leaves < 16) {
    leaves *= alphabet_size;
    ++s;
  }
  return std::min(s, horizon);
}

std::size_t walk_tree(const WeightedClass& c, std::size_t horizon, Mode mode, const WalkOptions& opt,
                      const std::function<void(std::size_t, std::size_t)>& prepare,
                      const std::function<void(std::size_t, const WalkNode&)>& visit) {
  const std::size_t truth = c.require_true_index();
  const std::size_t k = c.alphabet_size();
  const std::size_t split = split_depth(k, horizon);
  std::atomic<std::uint64_t> nodes{0};

  auto count = [&] {
    if (nodes.fetch_add(1) + 1 > opt.node_budget) {
      throw TooLarge("tree enumeration exceeds " + std::to_string(opt.node_budget) + " nodes");
    }
  };

  // Factorizable truths give the pruned node count in closed form.
  const auto& mu = c.model(truth);
  if (mu.is_factorizable()) {
    double total = 0, level = 1;
    for (std::size_t t = 0; t < horizon && total <= double(opt.node_budget); ++t) {
      total += level;
      auto p = mu.step_distribution(t + 1);
      if (!p) break;
      level *= static_cast<double>(std::count_if(p->begin(), p->end(), [](const Rational& q) { return sgn(q) > 0; }));
    }
    if (total > double(opt.node_budget)) {
      throw TooLarge("tree enumeration exceeds " + std::to_string(opt.node_budget) + " nodes");
    }
  }

  std::vector<PathState> top;
  std::vector<PathState> roots;
  std::function<void(const PathState&)> collect = [&](const PathState& s) {
    if (s.length() == split) {
      if (s.length() < horizon) roots.push_back(s);
      return;
    }
    top.push_back(s);
    for (Symbol a = 0; a < k; ++a) {
      if (s.frontier().next[a][truth].is_zero()) continue;
      PathState child(s);
      child.advance(a);
      collect(child);
    }
  };
  PathState root(c, mode);
  if (horizon > 0 && !root.frontier().mass[truth].is_zero()) collect(root);

  const std::size_t tasks = 1 + roots.size();
  prepare(tasks, horizon);

  for (const auto& s : top) {
    count();
    visit(0, WalkNode{s.history(), s.frontier(), s.frontier().mass[truth]});
  }

  parallel_for(roots.size(), opt.threads, [&](std::size_t r) {
    std::vector<std::unique_ptr<PathState>> stack;
    stack.push_back(std::make_unique<PathState>(roots[r]));
    while (!stack.empty()) {
      auto s = std::move(stack.back());
      stack.pop_back();
      count();
      visit(r + 1, WalkNode{s->history(), s->frontier(), s->frontier().mass[truth]});
      if (s->length() + 1 >= horizon) continue;
      for (Symbol a = static_cast<Symbol>(k); a-- > 0;) {
        if (s->frontier().next[a][truth].is_zero()) continue;
        auto child = std::make_unique<PathState>(*s);
        child->advance(a);
        stack.push_back(std::move(child));
      }
    }
  });
  return tasks;
}

Value expect(const WeightedClass& c, std::size_t n, const std::function<Value(SymbolSpan)>& f, Mode mode,
             const WalkOptions& opt) {
  struct Acc {
    Value sum;
  };
  Acc init{Value::zero(mode)};
  auto out = walk_accumulate(
      c, n + 1, mode, opt, init,
      [&](Acc& acc, const WalkNode& node) {
        if (node.x.size() == n) acc.sum = acc.sum + node.mu_mass * f(node.x);
      },
      [](Acc& into, const Acc& part) { into.sum = into.sum + part.sum; });
  return out.sum;
}

}  // namespace mdl
