#pragma once

// Bayes mixture, dynamic / static / hybrid MDL and Solomonoff normalization.
//
// Everything is computed from a Frontier: the masses nu_i(x) of every class
// member at a node x together with nu_i(xa) for each symbol a. The tree and
// Monte-Carlo engines maintain frontiers incrementally.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mdl/model_class.hpp"

namespace mdl {

struct Frontier {
  std::size_t length = 0;
  std::vector<Value> mass;               // mass[i] = nu_i(x)
  std::vector<std::vector<Value>> next;  // next[a][i] = nu_i(xa)
  Mode mode() const { return mass.front().mode(); }
};

Frontier frontier_at(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);

struct PredictiveDistribution {
  std::vector<Value> values;
  bool normalized = false;

  Value sum() const;
  std::size_t size() const { return values.size(); }
  const Value& operator[](std::size_t a) const { return values[a]; }
};

enum class PredictorKind { mu, xi, rho_norm, rho, static_mdl, static_norm, hybrid };

inline constexpr std::array<PredictorKind, 7> kAllPredictors{
    PredictorKind::mu,          PredictorKind::xi,          PredictorKind::rho_norm, PredictorKind::rho,
    PredictorKind::static_mdl,  PredictorKind::static_norm, PredictorKind::hybrid};

std::string to_string(PredictorKind kind);
PredictorKind parse_predictor(std::string_view name);
bool is_normalized(PredictorKind kind);

struct EvaluationCounts {
  std::uint64_t map_searches = 0;
  std::uint64_t model_evaluations = 0;
};

struct Predictions {
  std::array<std::optional<PredictiveDistribution>, kAllPredictors.size()> by_kind;
  MapResult map_here;                  // nu^x
  std::vector<MapResult> map_children;  // nu^{xa}
  Value xi_here;
  Value normalizer_factor;              // sum_a rho(xa) / rho(x)
  // Counts a standalone predictor of each kind would need at this node.
  EvaluationCounts dynamic_cost, static_cost;

  const PredictiveDistribution& at(PredictorKind kind) const;
};

// All predictors at one node. The mu entry is filled only when the class
// has a true index. Throws ZeroHistory when rho(x) = 0 or xi(x) = 0.
Predictions predict_all(const WeightedClass& c, const Frontier& f, const TieBreak& tb);

PredictiveDistribution predict(const WeightedClass& c, PredictorKind kind, SymbolSpan x, const TieBreak& tb = {},
                               Mode mode = Mode::exact, EvaluationCounts* counts = nullptr);

struct MixtureInterval {
  Value lower;
  Value upper;  // lower + tail bound when the class is truncated
};

// xi(x) over the materialized models.
Value bayes_mixture(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);
MixtureInterval bayes_mixture_interval(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);

PredictiveDistribution predict_bayes(const WeightedClass& c, SymbolSpan x, Mode mode = Mode::exact);
PredictiveDistribution predict_dynamic(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {},
                                       Mode mode = Mode::exact, EvaluationCounts* counts = nullptr);
PredictiveDistribution predict_static(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {},
                                      Mode mode = Mode::exact, EvaluationCounts* counts = nullptr);
PredictiveDistribution predict_hybrid(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {},
                                      Mode mode = Mode::exact);

PredictiveDistribution normalize(const PredictiveDistribution& dist);

// N_rho(x) = prod_{t=1}^{l(x)+1} sum_a rho(x_{<t} a) / rho(x_{<t}).
Value normalizer_product(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {}, Mode mode = Mode::exact);

}  // namespace mdl
