#include "mdl/stabilization.hpp"

#include <algorithm>

#include "mdl/errors.hpp"
#include "mdl/random.hpp"

namespace mdl {

namespace {

// Per-model masses along one path, without the children a frontier needs.
class MassTracker {
 public:
  MassTracker(const WeightedClass& c, Mode mode) : mode_(mode) {
    for (const auto& m : c.models()) {
      cursors_.push_back(m->start());
      masses_.push_back(Value::of(m->empty_mass(), mode));
    }
  }
  const std::vector<Value>& masses() const { return masses_; }
  const Cursor& cursor(std::size_t i) const { return *cursors_[i]; }
  void advance(Symbol a) {
    for (std::size_t i = 0; i < cursors_.size(); ++i) {
      if (!masses_[i].is_zero()) masses_[i] = masses_[i] * Value::of(cursors_[i]->conditional(a), mode_);
      cursors_[i]->advance(a);
    }
  }

 private:
  Mode mode_;
  std::vector<std::unique_ptr<Cursor>> cursors_;
  std::vector<Value> masses_;
};

MapResult checked_map(const WeightedClass& c, const std::vector<Value>& masses, std::size_t t, const TieBreak& tb) {
  auto r = map_from_masses(c, masses, t, tb);
  if (r.value.is_zero()) throw ZeroHistory("rho vanishes at t = " + std::to_string(t));
  return r;
}

}  // namespace

MapTrace map_trace(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode) {
  MapTrace tr;
  MassTracker m(c, mode);
  for (std::size_t t = 0;; ++t) {
    auto r = checked_map(c, m.masses(), t, tb);
    tr.index.push_back(r.index);
    tr.tied.push_back(r.tied);
    if (t == x.size()) break;
    m.advance(x[t]);
  }
  return tr;
}

StabilizationVerdict stabilization_verdict(const MapTrace& trace, std::size_t window) {
  if (trace.index.empty()) throw Error("empty trace");
  const std::size_t T = trace.index.size() - 1;
  if (window > T) throw ConfigError("window exceeds trace horizon");
  StabilizationVerdict v;
  std::size_t last = 0;
  for (std::size_t t = 1; t <= T; ++t) {
    if (trace.index[t] != trace.index[t - 1]) {
      ++v.change_count;
      last = t;
    }
  }
  v.final_index = trace.index.back();
  if (last <= T - window) v.stabilized_by = last;
  return v;
}

StabilizationRun monte_carlo_stabilization(const WeightedClass& c, const StabilizationOptions& opt) {
  const std::size_t truth = c.require_true_index();
  if (!c.model(truth).is_proper_measure()) throw NotAMeasure("true model must be a measure");
  if (opt.window > opt.horizon) throw ConfigError("window exceeds horizon");
  StabilizationRun run;
  run.samples = opt.samples;
  run.horizon = opt.horizon;
  run.window = opt.window;
  run.verdicts.resize(opt.samples);
  const std::size_t k = c.alphabet_size();
  parallel_for(opt.samples, opt.threads, [&](std::size_t j) {
    Rng rng(derive_seed(opt.seed, j));
    MassTracker m(c, opt.mode);
    MapTrace tr;
    tr.index.reserve(opt.horizon + 1);
    std::vector<Rational> p(k);
    for (std::size_t t = 0;; ++t) {
      auto r = checked_map(c, m.masses(), t, opt.tie_break);
      tr.index.push_back(r.index);
      tr.tied.push_back(r.tied);
      if (t == opt.horizon) break;
      for (Symbol a = 0; a < k; ++a) p[a] = m.cursor(truth).conditional(a);
      m.advance(draw_symbol(p, rng.uniform()));
    }
    run.verdicts[j] = stabilization_verdict(tr, opt.window);
  });
  std::size_t stable = 0;
  for (const auto& v : run.verdicts) stable += v.stabilized_by.has_value();
  run.fraction_stabilized = opt.samples ? static_cast<double>(stable) / static_cast<double>(opt.samples) : 0.0;
  return run;
}

ClassProfile profile_class(const WeightedClass& c, std::size_t depth) {
  ClassProfile p;
  p.all_measures = c.all_measures();
  p.all_factorizable = std::all_of(c.models().begin(), c.models().end(),
                                   [](const ModelPtr& m) { return m->is_factorizable(); });
  if (!p.all_factorizable) return p;
  bool floors = true;
  std::optional<Rational> declared;
  for (const auto& m : c.models()) {
    for (std::size_t i = 1; i <= depth; ++i) {
      auto dist = m->step_distribution(i);
      for (const auto& q : *dist) {
        if (sgn(q) > 0 && (!p.min_observed || q < *p.min_observed)) p.min_observed = q;
      }
    }
    auto f = m->stochasticity_floor();
    if (!f) {
      floors = false;
    } else if (!declared || *f < *declared) {
      declared = *f;
    }
  }
  if (floors && declared && p.min_observed && *p.min_observed >= *declared) p.uniform_stochasticity_delta = declared;
  return p;
}

std::size_t count_alternations(const std::vector<Value>& values) {
  std::size_t n = 0;
  for (std::size_t t = 1; t < values.size(); ++t) n += !(values[t] == values[t - 1]);
  return n;
}

bool is_oscillating(const std::vector<Value>& values, std::size_t window) {
  if (window > values.size()) window = values.size();
  std::vector<Value> tail(values.end() - static_cast<std::ptrdiff_t>(window), values.end());
  return 2 * count_alternations(tail) >= window;
}

std::vector<Value> hybrid_on_sequence(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode) {
  std::vector<Value> out;
  MassTracker m(c, mode);
  auto prev = checked_map(c, m.masses(), 0, tb);
  Value prev_mass = m.masses()[prev.index];
  for (std::size_t t = 0; t < x.size(); ++t) {
    m.advance(x[t]);
    auto cur = map_from_masses(c, m.masses(), t + 1, tb);
    out.push_back(m.masses()[cur.index] / prev_mass);
    if (cur.value.is_zero()) break;
    prev = cur;
    prev_mass = m.masses()[cur.index];
  }
  return out;
}

RatioTrace ratio_trace(const WeightedClass& c, std::size_t horizon) {
  if (c.size() != 2) throw ConfigError("ratio trace needs a two-model class");
  RatioTrace out;
  MassTracker m(c, Mode::exact);
  Sequence ones(horizon, 1);
  for (std::size_t t = 0;; ++t) {
    const auto& v = m.masses();
    out.ratio.push_back((c.weight(1) * v[1].rational()) / (c.weight(0) * v[0].rational()));
    if (t == horizon) break;
    m.advance(1);
  }
  out.argmax_changes = stabilization_verdict(map_trace(c, ones), 0).change_count;
  int previous = 0;
  for (std::size_t t = 1; t < out.ratio.size(); ++t) {
    int s = sgn(Rational(out.ratio[t] - out.ratio[t - 1]));
    if (s != 0 && previous != 0 && s != previous) ++out.increment_sign_changes;
    if (s != 0) previous = s;
  }
  return out;
}

MartingaleCheck check_martingale_identity(std::size_t depth) {
  MartingaleCheck out;
  using Node = OscillatingMartingaleMeasure::Node;
  struct Item {
    Sequence x;
    Node node;
  };
  std::vector<Item> stack{{Sequence{}, OscillatingMartingaleMeasure::root()}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    ++out.nodes;
    const std::size_t len = it.x.size();
    Node c0 = OscillatingMartingaleMeasure::child(it.node, len, 0);
    Node c1 = OscillatingMartingaleMeasure::child(it.node, len, 1);
    bool ok = 2 * it.node.f == c0.f + c1.f && sgn(c0.f) >= 0 && sgn(c1.f) >= 0;
    if (it.node.dead) ok = ok && c0.dead && c1.dead && c0.f == it.node.f && c1.f == it.node.f;
    if (!ok) {
      out.identity_holds = false;
      out.witness = it.x;
      return out;
    }
    if (len < depth) {
      stack.push_back({extended(it.x, 1), c1});
      stack.push_back({extended(it.x, 0), c0});
    }
  }
  return out;
}

std::vector<Rational> dead_mass_by_depth(std::size_t depth) {
  using Node = OscillatingMartingaleMeasure::Node;
  std::vector<std::uint64_t> alive(depth + 1, 0);
  std::vector<std::pair<std::size_t, Node>> stack{{0, OscillatingMartingaleMeasure::root()}};
  while (!stack.empty()) {
    auto [len, node] = stack.back();
    stack.pop_back();
    if (node.dead) continue;
    ++alive[len];
    if (len == depth) continue;
    for (Symbol a = 0; a < 2; ++a) stack.push_back({len + 1, OscillatingMartingaleMeasure::child(node, len, a)});
  }
  std::vector<Rational> out;
  for (std::size_t n = 0; n <= depth; ++n) {
    out.push_back(1 - Rational(mpz_class(static_cast<unsigned long>(alive[n]))) * pow2(-static_cast<std::int64_t>(n)));
  }
  return out;
}

}  // namespace mdl
