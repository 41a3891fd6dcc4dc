#include "mdl/predictors.hpp"

#include "mdl/errors.hpp"

namespace mdl {

Frontier frontier_at(const WeightedClass& c, SymbolSpan x, Mode mode) {
  Frontier f;
  f.length = x.size();
  const std::size_t k = c.alphabet_size();
  f.next.assign(k, {});
  for (const auto& m : c.models()) {
    for (Symbol s : x) {
      if (s >= k) throw AlphabetMismatch("symbol outside class alphabet");
    }
    auto cursor = m->start();
    Value v = Value::of(m->empty_mass(), mode);
    for (Symbol s : x) {
      if (v.is_zero()) break;
      v = v * Value::of(cursor->conditional(s), mode);
      cursor->advance(s);
    }
    for (Symbol a = 0; a < k; ++a) {
      f.next[a].push_back(v.is_zero() ? v : v * Value::of(cursor->conditional(a), mode));
    }
    f.mass.push_back(std::move(v));
  }
  return f;
}

Value PredictiveDistribution::sum() const {
  Value s = Value::zero(values.front().mode());
  for (const auto& v : values) s = s + v;
  return s;
}

std::string to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::mu: return "mu";
    case PredictorKind::xi: return "xi";
    case PredictorKind::rho_norm: return "rho_norm";
    case PredictorKind::rho: return "rho";
    case PredictorKind::static_mdl: return "static";
    case PredictorKind::static_norm: return "static_norm";
    case PredictorKind::hybrid: return "hybrid";
  }
  return "?";
}

PredictorKind parse_predictor(std::string_view name) {
  for (auto k : kAllPredictors) {
    if (to_string(k) == name) return k;
  }
  if (name == "dynamic") return PredictorKind::rho;
  if (name == "bayes") return PredictorKind::xi;
  throw ConfigError("unknown predictor '" + std::string(name) + "'");
}

bool is_normalized(PredictorKind kind) {
  return kind == PredictorKind::rho_norm || kind == PredictorKind::static_norm;
}

const PredictiveDistribution& Predictions::at(PredictorKind kind) const {
  const auto& slot = by_kind[static_cast<std::size_t>(kind)];
  if (!slot) throw Error("predictor " + to_string(kind) + " not available here");
  return *slot;
}

PredictiveDistribution normalize(const PredictiveDistribution& dist) {
  Value total = dist.sum();
  if (total.is_zero()) throw AllZero("cannot normalize an all-zero prediction");
  PredictiveDistribution out;
  out.normalized = true;
  for (const auto& v : dist.values) out.values.push_back(v / total);
  return out;
}

namespace {

Value weighted_sum(const WeightedClass& c, const std::vector<Value>& masses) {
  Mode mode = masses.front().mode();
  Value s = Value::zero(mode);
  for (std::size_t i = 0; i < c.size(); ++i) s = s + Value::of(c.weight(i), mode) * masses[i];
  return s;
}

// Guards against rounding pushing a LogFloat ratio marginally above one.
Value capped(Value v) {
  if (!v.is_exact() && v.log() > 0.0 && v.log() < 1e-9) return Value::one(Mode::log_float);
  return v;
}

}  // namespace

Predictions predict_all(const WeightedClass& c, const Frontier& f, const TieBreak& tb) {
  const std::size_t k = f.next.size();
  Predictions p;

  p.xi_here = weighted_sum(c, f.mass);
  if (p.xi_here.is_zero()) throw ZeroHistory("xi(x) = 0");
  p.map_here = map_from_masses(c, f.mass, f.length, tb);
  if (p.map_here.value.is_zero()) throw ZeroHistory("rho(x) = 0");
  for (std::size_t a = 0; a < k; ++a) p.map_children.push_back(map_from_masses(c, f.next[a], f.length + 1, tb));

  const std::size_t star = p.map_here.index;
  const Value& rho_x = p.map_here.value;
  const Value& star_mass = f.mass[star];

  PredictiveDistribution xi, rho, st, hy;
  for (std::size_t a = 0; a < k; ++a) {
    xi.values.push_back(capped(weighted_sum(c, f.next[a]) / p.xi_here));
    rho.values.push_back(p.map_children[a].value / rho_x);
    st.values.push_back(capped(f.next[a][star] / star_mass));
    hy.values.push_back(f.next[a][p.map_children[a].index] / star_mass);
  }
  p.normalizer_factor = rho.sum();

  if (c.true_index()) {
    std::size_t t = *c.true_index();
    if (!f.mass[t].is_zero()) {
      PredictiveDistribution mu;
      for (std::size_t a = 0; a < k; ++a) mu.values.push_back(capped(f.next[a][t] / f.mass[t]));
      mu.normalized = c.model(t).is_proper_measure();
      p.by_kind[static_cast<std::size_t>(PredictorKind::mu)] = std::move(mu);
    }
  }
  p.by_kind[static_cast<std::size_t>(PredictorKind::rho_norm)] = normalize(rho);
  p.by_kind[static_cast<std::size_t>(PredictorKind::static_norm)] = normalize(st);
  xi.normalized = c.all_measures();
  p.by_kind[static_cast<std::size_t>(PredictorKind::xi)] = std::move(xi);
  p.by_kind[static_cast<std::size_t>(PredictorKind::rho)] = std::move(rho);
  p.by_kind[static_cast<std::size_t>(PredictorKind::static_mdl)] = std::move(st);
  p.by_kind[static_cast<std::size_t>(PredictorKind::hybrid)] = std::move(hy);

  p.dynamic_cost = {k + 1, (k + 1) * c.size()};
  p.static_cost = {1, c.size() + k};
  return p;
}

PredictiveDistribution predict(const WeightedClass& c, PredictorKind kind, SymbolSpan x, const TieBreak& tb,
                               Mode mode, EvaluationCounts* counts) {
  auto preds = predict_all(c, frontier_at(c, x, mode), tb);
  if (counts) {
    const auto& cost = kind == PredictorKind::static_mdl || kind == PredictorKind::static_norm ? preds.static_cost
                                                                                              : preds.dynamic_cost;
    counts->map_searches += cost.map_searches;
    counts->model_evaluations += cost.model_evaluations;
  }
  return preds.at(kind);
}

Value bayes_mixture(const WeightedClass& c, SymbolSpan x, Mode mode) {
  return weighted_sum(c, class_masses(c, x, mode));
}

MixtureInterval bayes_mixture_interval(const WeightedClass& c, SymbolSpan x, Mode mode) {
  MixtureInterval r;
  r.lower = bayes_mixture(c, x, mode);
  r.upper = c.tail_bound() ? r.lower + Value::of(*c.tail_bound(), mode) : r.lower;
  return r;
}

PredictiveDistribution predict_bayes(const WeightedClass& c, SymbolSpan x, Mode mode) {
  return predict(c, PredictorKind::xi, x, {}, mode);
}

PredictiveDistribution predict_dynamic(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode,
                                       EvaluationCounts* counts) {
  return predict(c, PredictorKind::rho, x, tb, mode, counts);
}

PredictiveDistribution predict_static(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode,
                                      EvaluationCounts* counts) {
  return predict(c, PredictorKind::static_mdl, x, tb, mode, counts);
}

PredictiveDistribution predict_hybrid(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode) {
  return predict(c, PredictorKind::hybrid, x, tb, mode);
}

Value normalizer_product(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode) {
  Value product = Value::one(mode);
  for (std::size_t t = 0; t <= x.size(); ++t) {
    auto f = frontier_at(c, x.subspan(0, t), mode);
    auto r = map_from_masses(c, f.mass, t, tb);
    if (r.value.is_zero()) throw ZeroHistory("rho vanishes along the prefix");
    Value children = Value::zero(mode);
    for (const auto& next : f.next) children = children + map_from_masses(c, next, t + 1, tb).value;
    product = product * (children / r.value);
  }
  return product;
}

}  // namespace mdl
