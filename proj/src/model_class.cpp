#include "mdl/model_class.hpp"

#include <algorithm>
#include <cmath>

#include "mdl/errors.hpp"

namespace mdl {

WeightedClass::WeightedClass(std::vector<ModelPtr> models, std::vector<Rational> weights,
                             std::optional<std::size_t> true_index, std::optional<Rational> tail_bound,
                             bool declared_descending)
    : models_(std::move(models)),
      weights_(std::move(weights)),
      true_index_(true_index),
      tail_bound_(std::move(tail_bound)) {
  if (models_.empty()) throw ConfigError("model class is empty");
  if (models_.size() != weights_.size()) throw ConfigError("number of weights differs from number of models");
  Rational total(0);
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (!models_[i]) throw ConfigError("null model");
    if (models_[i]->alphabet_size() != models_.front()->alphabet_size()) {
      throw AlphabetMismatch("models in a class must share one alphabet");
    }
    if (sgn(weights_[i]) <= 0) throw ConfigError("weights must be strictly positive");
    total += weights_[i];
  }
  if (tail_bound_) {
    if (sgn(*tail_bound_) < 0) throw ConfigError("tail bound must be nonnegative");
    total += *tail_bound_;
  }
  if (total > 1) throw ConfigError("weights sum to " + to_string(total) + " > 1");
  if (true_index_ && *true_index_ >= models_.size()) throw ConfigError("true index out of range");
  if (declared_descending) {
    for (std::size_t i = 1; i < weights_.size(); ++i) {
      if (weights_[i] > weights_[i - 1]) throw ConfigError("weights are not in descending order");
    }
  }
}

bool WeightedClass::all_measures() const {
  return std::all_of(models_.begin(), models_.end(), [](const ModelPtr& m) { return m->is_proper_measure(); });
}

std::size_t WeightedClass::require_true_index() const {
  if (!true_index_) throw ConfigError("class has no true model");
  return *true_index_;
}

WeightedClass WeightedClass::with_true_index(std::size_t i) const {
  return WeightedClass(models_, weights_, i, tail_bound_);
}

WeightedClass WeightedClass::scaled(const Rational& c) const {
  std::vector<Rational> w = weights_;
  for (auto& v : w) v *= c;
  std::optional<Rational> tail = tail_bound_;
  if (tail) *tail *= c;
  return WeightedClass(models_, std::move(w), true_index_, tail);
}

std::string to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::largest_weight: return "largest_weight";
    case TiePolicy::lowest_index: return "lowest_index";
    case TiePolicy::round_robin: return "round_robin";
  }
  return "?";
}

TiePolicy parse_tie_policy(std::string_view text) {
  if (text == "largest_weight" || text == "largest-weight") return TiePolicy::largest_weight;
  if (text == "lowest_index" || text == "lowest-index") return TiePolicy::lowest_index;
  if (text == "round_robin" || text == "round-robin") return TiePolicy::round_robin;
  throw ConfigError("unknown tie policy '" + std::string(text) + "'");
}

std::vector<Value> class_masses(const WeightedClass& c, SymbolSpan x, Mode mode) {
  std::vector<Value> out;
  out.reserve(c.size());
  for (const auto& m : c.models()) out.push_back(evaluate(*m, x, mode));
  return out;
}

MapResult map_from_masses(const WeightedClass& c, const std::vector<Value>& masses, std::size_t length,
                          const TieBreak& tb) {
  if (masses.size() != c.size()) throw Error("mass vector does not match class size");
  const Mode mode = masses.front().mode();
  std::vector<Value> products;
  products.reserve(c.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    products.push_back(Value::of(c.weight(i), mode) * masses[i]);
    if (products[i] > products[best]) best = i;
  }
  MapResult r;
  r.value = products[best];
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (tied(products[i], products[best])) {
      r.tie_set.push_back(i);
      if (mode == Mode::log_float && !(products[i] == products[best])) r.approximate = true;
    }
  }
  r.tied = r.tie_set.size() > 1;
  if (r.tied && mode == Mode::log_float) r.approximate = true;

  if (c.tail_bound()) {
    Value tail = Value::of(*c.tail_bound(), mode);
    if (!(r.value > tail)) {
      throw IndeterminateTail("materialized maximum " + r.value.to_string() + " does not exceed tail bound " +
                              to_string(*c.tail_bound()));
    }
  }

  switch (tb.policy) {
    case TiePolicy::largest_weight: {
      std::size_t pick = r.tie_set.front();
      for (std::size_t i : r.tie_set) {
        if (c.weight(i) > c.weight(pick)) pick = i;
      }
      r.index = pick;
      break;
    }
    case TiePolicy::lowest_index:
      r.index = r.tie_set.front();
      break;
    case TiePolicy::round_robin:
      r.index = r.tie_set[(tb.phase + length) % r.tie_set.size()];
      break;
  }
  return r;
}

MapResult map_estimator(const WeightedClass& c, SymbolSpan x, const TieBreak& tb, Mode mode) {
  return map_from_masses(c, class_masses(c, x, mode), x.size(), tb);
}

Value two_part_value(const WeightedClass& c, SymbolSpan x, Mode mode) { return map_estimator(c, x, {}, mode).value; }

Value two_part_value_at(const WeightedClass& c, SymbolSpan y, SymbolSpan x, const TieBreak& tb, Mode mode) {
  auto chosen = map_estimator(c, y, tb, mode);
  return Value::of(c.weight(chosen.index), mode) * evaluate(c.model(chosen.index), x, mode);
}

double complexity(const WeightedClass& c, std::size_t index) {
  return -log_of(c.weight(index)) / std::log(2.0);
}

WeightRule uniform_weights(std::size_t n) {
  if (n == 0) throw ConfigError("uniform weights need n >= 1");
  return {std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))), std::nullopt};
}

WeightRule geometric_weights(std::size_t n, const Rational& r) {
  if (!(sgn(r) > 0 && r < 1)) throw ConfigError("geometric ratio must lie in (0,1)");
  WeightRule out;
  Rational p(1);
  for (std::size_t i = 0; i < n; ++i) {
    out.weights.push_back((1 - r) * p);
    p *= r;
  }
  out.tail = p;
  return out;
}

WeightedClass example1_class(std::size_t n) {
  if (n < 2) throw ConfigError("example 1 needs N >= 2");
  std::vector<ModelPtr> models;
  for (std::size_t i = 1; i < n; ++i) {
    models.push_back(std::make_shared<DeterministicModel>(Sequence(i - 1, 1), Sequence{0}));
  }
  models.push_back(std::make_shared<DeterministicModel>(Sequence{}, Sequence{1}));
  return WeightedClass(std::move(models), uniform_weights(n).weights, n - 1);
}

WeightedClass example2_class(std::size_t n) {
  if (n < 1) throw ConfigError("example 2 needs N >= 1");
  std::vector<Rational> thetas{Rational(1, 2)};
  for (std::size_t k = 1; k <= n; ++k) thetas.push_back(Rational(1, 2) + pow2(-static_cast<std::int64_t>(k) - 1));
  return bernoulli_class(thetas, std::nullopt, 0);
}

WeightedClass example3_class() {
  auto m = example3_pair();
  return WeightedClass({m.lambda, m.nu}, {m.w_lambda, m.w_nu}, 0);
}

WeightedClass example4_class(const Rational& w_mu, const Rational& w_nu) {
  auto pair = make_example4_pair();
  return WeightedClass({pair.first, pair.second}, {w_mu, w_nu}, 0);
}

WeightedClass example5_class() {
  return WeightedClass({uniform_measure(2), std::make_shared<OscillatingMartingaleMeasure>()},
                       {Rational(3, 7), Rational(4, 7)}, 0);
}

WeightedClass bernoulli_class(const std::vector<Rational>& thetas, std::optional<std::vector<Rational>> weights,
                              std::optional<std::size_t> true_index) {
  std::vector<ModelPtr> models;
  for (const auto& t : thetas) {
    if (sgn(t) < 0 || t > 1) throw ConfigError("Bernoulli parameter outside [0,1]");
    models.push_back(bernoulli(t));
  }
  auto w = weights ? *weights : uniform_weights(thetas.size()).weights;
  return WeightedClass(std::move(models), std::move(w), true_index);
}

}  // namespace mdl
