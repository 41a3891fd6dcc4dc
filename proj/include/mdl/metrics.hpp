#pragma once

// Per-step distances between mu(.|x) and a prediction, mu-expected
// cumulative ledgers (exact tree or Monte Carlo), and the bound table.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mdl/predictors.hpp"
#include "mdl/tree.hpp"

namespace mdl {

enum class Metric { square, hellinger, kl, absolute, mass_gap, log_mass_gap };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::square,   Metric::hellinger, Metric::kl,
                                                   Metric::absolute, Metric::mass_gap,  Metric::log_mass_gap};

std::string to_string(Metric m);
Metric parse_metric(std::string_view name);
// square, absolute and mass_gap are rational when both inputs are.
bool has_exact_form(Metric m);

struct StepDistances {
  double square = 0;        // sum_a (mu - phi)^2
  double hellinger = 0;     // sum_a (sqrt mu - sqrt phi)^2 on raw entries
  double kl = 0;            // sum_a mu ln(mu/phi), +inf if phi = 0 < mu
  double absolute = 0;      // sum_a |mu - phi|
  double mass_gap = 0;      // |1 - sum_a phi|
  double log_mass_gap = 0;  // |ln sum_a phi|
  std::optional<Rational> square_exact, absolute_exact, mass_gap_exact;

  double get(Metric m) const;
  const std::optional<Rational>& exact(Metric m) const;
};

StepDistances step_distances(const std::vector<Value>& mu, const std::vector<Value>& phi);
StepDistances step_distances(const std::vector<Value>& mu, const PredictiveDistribution& phi);
StepDistances step_distances(const std::vector<double>& mu, const std::vector<double>& phi);

struct Quantity {
  double value = 0;
  std::optional<Rational> exact;
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

// cumulative(p, m, n) = sum_{t <= n} E[metric_t] for predictor p.
class CumulativeLedger {
 public:
  CumulativeLedger() = default;
  CumulativeLedger(std::vector<PredictorKind> predictors, std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  const std::vector<PredictorKind>& predictors() const { return predictors_; }
  bool has(PredictorKind p) const;

  const Quantity& step(PredictorKind p, Metric m, std::size_t t) const;
  const Quantity& cumulative(PredictorKind p, Metric m, std::size_t n) const;
  const Quantity& total(PredictorKind p, Metric m) const { return cumulative(p, m, horizon_); }

  Quantity& step_ref(PredictorKind p, Metric m, std::size_t t);
  Quantity& cumulative_ref(PredictorKind p, Metric m, std::size_t n);
  // Fills cumulative entries from exact steps (tree ledgers).
  void accumulate_steps();

 private:
  std::size_t slot(PredictorKind p, Metric m, std::size_t t) const;

  std::vector<PredictorKind> predictors_;
  std::size_t horizon_ = 0;
  std::vector<Quantity> steps_;
  std::vector<Quantity> cumulative_;
};

std::vector<PredictorKind> default_predictors();

CumulativeLedger cumulative_distances(const WeightedClass& c, std::size_t horizon, Mode mode = Mode::exact,
                                      const TieBreak& tb = {}, const WalkOptions& opt = {},
                                      std::vector<PredictorKind> predictors = default_predictors());

struct MonteCarloOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  Mode mode = Mode::log_float;
};

// Means over sampled mu-paths with standard errors. Samples are reduced in
// fixed blocks in index order.
CumulativeLedger monte_carlo_distances(const WeightedClass& c, std::size_t horizon, const MonteCarloOptions& opt,
                                       const TieBreak& tb = {},
                                       std::vector<PredictorKind> predictors = default_predictors());

enum class BoundForm { log_inverse, inverse_plus_log, multiple };

struct BoundSpec {
  PredictorKind predictor;
  Metric metric;
  BoundForm form;
  int constant;  // multiplier of w^-1 for BoundForm::multiple
  std::string name;
};

const std::vector<BoundSpec>& bound_table();

struct BoundReport {
  std::string predictor;
  std::string metric;
  std::string bound_name;
  double bound = 0;
  std::optional<Rational> bound_exact;
  double measured = 0;
  std::optional<Rational> measured_exact;
  double slack = 0;
  std::optional<Rational> slack_exact;
  double measured_stderr = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

double bound_value(const BoundSpec& spec, const Rational& w_mu);
std::optional<Rational> bound_value_exact(const BoundSpec& spec, const Rational& w_mu);

BoundReport make_report(const std::string& predictor, const std::string& metric, const std::string& bound_name,
                        double bound, std::optional<Rational> bound_exact, const Quantity& measured);

std::vector<BoundReport> bounds_from_ledger(const WeightedClass& c, const CumulativeLedger& ledger);
std::vector<BoundReport> check_bounds(const WeightedClass& c, std::size_t horizon, Mode mode = Mode::exact,
                                      const TieBreak& tb = {}, const WalkOptions& opt = {});

}  // namespace mdl
