#pragma once

// Weighted countable classes and the MAP (two-part) estimator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdl/measures.hpp"

namespace mdl {

class WeightedClass {
 public:
  WeightedClass(std::vector<ModelPtr> models, std::vector<Rational> weights,
                std::optional<std::size_t> true_index = std::nullopt,
                std::optional<Rational> tail_bound = std::nullopt, bool declared_descending = false);

  std::size_t size() const { return models_.size(); }
  std::size_t alphabet_size() const { return models_.front()->alphabet_size(); }
  const Semimeasure& model(std::size_t i) const { return *models_.at(i); }
  const ModelPtr& model_ptr(std::size_t i) const { return models_.at(i); }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<ModelPtr>& models() const { return models_; }
  const std::optional<Rational>& tail_bound() const { return tail_bound_; }
  bool all_measures() const;

  const std::optional<std::size_t>& true_index() const { return true_index_; }
  // Throws when no true model is set.
  std::size_t require_true_index() const;
  const Semimeasure& true_model() const { return model(require_true_index()); }
  const Rational& true_weight() const { return weight(require_true_index()); }

  WeightedClass with_true_index(std::size_t i) const;
  WeightedClass scaled(const Rational& c) const;

 private:
  std::vector<ModelPtr> models_;
  std::vector<Rational> weights_;
  std::optional<std::size_t> true_index_;
  std::optional<Rational> tail_bound_;
};

enum class TiePolicy { largest_weight, lowest_index, round_robin };

std::string to_string(TiePolicy p);
TiePolicy parse_tie_policy(std::string_view text);

// round_robin picks tie_set[(phase + l(x)) mod |tie_set|], so the choice
// is a function of the queried length and advances once per step.
struct TieBreak {
  TiePolicy policy = TiePolicy::largest_weight;
  std::uint64_t phase = 0;
};

struct MapResult {
  std::size_t index = 0;
  Value value;
  bool tied = false;
  bool approximate = false;  // a LogFloat tie within tolerance
  std::vector<std::size_t> tie_set;
};

// Selection from precomputed masses nu_i(x) of a string of the given length.
MapResult map_from_masses(const WeightedClass& c, const std::vector<Value>& masses, std::size_t length,
                          const TieBreak& tb);

std::vector<Value> class_masses(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);

MapResult map_estimator(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {}, Mode mode = Mode::exact);

// rho(x) = max_nu w_nu nu(x).
Value two_part_value(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);

// rho^y(x) = w_{nu^y} nu^y(x).
Value two_part_value_at(const WeightedClass& c, SymbolSpan y, SymbolSpan x, const TieBreak& tb = {},
                        Mode mode = Mode::exact);

// Kw(nu) = -lb w_nu.
double complexity(const WeightedClass& c, std::size_t index);

struct WeightRule {
  std::vector<Rational> weights;
  std::optional<Rational> tail;
};
WeightRule uniform_weights(std::size_t n);
// w_i = (1 - r) r^i, i = 0..n-1, with tail mass r^n.
WeightRule geometric_weights(std::size_t n, const Rational& r);

// nu_i on 1^{i-1}0^inf for i = 1..N-1 and mu = 1^inf (last), weights 1/N.
WeightedClass example1_class(std::size_t n);
// Bernoulli 1/2 (true, first) and 1/2 + 2^{-k-1}, k = 1..N, weights 1/(N+1).
WeightedClass example2_class(std::size_t n);
// lambda (index 0, true) and nu (index 1).
WeightedClass example3_class();
// mu (index 0, true) and nu (index 1) with the given weights.
WeightedClass example4_class(const Rational& w_mu, const Rational& w_nu);
// lambda (index 0, w 3/7, true) and the martingale measure (index 1, w 4/7).
WeightedClass example5_class();
WeightedClass bernoulli_class(const std::vector<Rational>& thetas, std::optional<std::vector<Rational>> weights,
                              std::optional<std::size_t> true_index);

}  // namespace mdl
