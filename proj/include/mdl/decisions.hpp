#pragma once

// Bayes-optimal binary actions under bounded, possibly history-dependent
// losses; expected-loss traces and the regret bounds.

#include <functional>
#include <string>
#include <vector>

#include "mdl/metrics.hpp"

namespace mdl {

// loss(history, outcome, action) in [0,1].
class LossFunction {
 public:
  using Fn = std::function<Rational(SymbolSpan, Symbol, Symbol)>;

  LossFunction(Fn fn, bool stationary, std::string name);

  Rational operator()(SymbolSpan history, Symbol outcome, Symbol action) const;
  bool stationary() const { return stationary_; }
  const std::string& name() const { return name_; }

  // l'(x, a) = l(x, a) - l(x, x). Rejected when that leaves [0,1].
  LossFunction shifted() const;

  static LossFunction zero_one();
  static LossFunction absolute();
  // entries indexed [outcome][action]
  static LossFunction table(Rational l00, Rational l01, Rational l10, Rational l11);
  // 0/1 loss after an even number of ones, the table (0, 1, 1/2, 0) after an odd number.
  static LossFunction history_parity();

 private:
  Fn fn_;
  bool stationary_;
  std::string name_;
};

// argmin over a of (1 - phi) l(0, a) + phi l(1, a), ties toward 0.
Symbol bayes_optimal_action(const Value& phi, const LossFunction& loss, SymbolSpan history);
Symbol bayes_optimal_action(double phi, const LossFunction& loss, SymbolSpan history);

double binary_hellinger(double mu, double phi);

struct SpecialFunctions {
  double delta = 0;
  double ell = 0;
  int branch = 0;  // 1..4 in the order of the case table
};
SpecialFunctions special_functions(double mu, double phi);

struct SpecialFunctionsExact {
  Rational delta;
  Rational ell;
  int branch = 0;
};
SpecialFunctionsExact special_functions(const Rational& mu, const Rational& phi);
// Every branch whose condition holds at (mu, phi), with its ell value.
std::vector<std::pair<int, Rational>> special_ell_branches(const Rational& mu, const Rational& phi);

struct ScanResult {
  double max_violation = -std::numeric_limits<double>::infinity();
  double at_mu = 0;
  double at_phi = 0;
  std::size_t points = 0;
};
// max over an m x m grid of delta - 2h - 2 sqrt(2 h ell).
ScanResult unit_square_scan(std::size_t m, std::size_t threads = 1);

inline constexpr double kRegretTolerance = 1e-12;

struct DecisionTrace {
  std::string predictor;
  std::size_t horizon = 0;
  // per step t = 1..n, mu-expected
  std::vector<Quantity> loss_phi, loss_mu, hellinger;
  Quantity cumulative_phi, cumulative_mu, cumulative_hellinger;
  Quantity regret;
  // instantaneous bound delta_t <= 2h_t + 2 sqrt(2 h_t l^mu_t) at each node
  std::uint64_t nodes_checked = 0;
  std::uint64_t instantaneous_violations = 0;
  double max_instantaneous_excess = -std::numeric_limits<double>::infinity();
  std::uint64_t mu_better_violations = 0;  // nodes where l^phi < l^mu
};

DecisionTrace decision_trace(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                             std::size_t horizon, Mode mode = Mode::exact, const TieBreak& tb = {},
                             const WalkOptions& opt = {});
DecisionTrace decision_trace_mc(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                                std::size_t horizon, const MonteCarloOptions& opt, const TieBreak& tb = {});

// 2, 8, 21, 32 for rho_norm, rho, static, static_norm; mu uses 2.
int regret_constant(PredictorKind predictor);

// L^phi <= L^mu + 2 sqrt(2 c L^mu / w) + 2c / w.
BoundReport regret_report(const WeightedClass& c, const DecisionTrace& trace);
// Delta <= 2H + 2 sqrt(2 H L^mu).
BoundReport cumulative_regret_report(const DecisionTrace& trace);

BoundReport check_regret_bound(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                               std::size_t horizon, Mode mode = Mode::exact, const TieBreak& tb = {});

}  // namespace mdl
