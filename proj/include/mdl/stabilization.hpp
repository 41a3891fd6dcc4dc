#pragma once

// MAP trajectories along sequences, finite-window stabilization verdicts,
// class profiles, and helpers for the oscillation examples.

#include <optional>
#include <vector>

#include "mdl/model_class.hpp"

namespace mdl {

struct MapTrace {
  std::vector<std::size_t> index;  // nu^{x_{1:t}} for t = 0..T
  std::vector<bool> tied;
};

MapTrace map_trace(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {}, Mode mode = Mode::exact);

struct StabilizationVerdict {
  std::optional<std::size_t> stabilized_by;  // last change time
  std::size_t change_count = 0;
  std::size_t final_index = 0;
};

// Stabilized when no change happens at any t > T - window.
StabilizationVerdict stabilization_verdict(const MapTrace& trace, std::size_t window);

struct StabilizationRun {
  double fraction_stabilized = 0;
  std::size_t samples = 0;
  std::size_t horizon = 0;
  std::size_t window = 0;
  std::vector<StabilizationVerdict> verdicts;
};

struct StabilizationOptions {
  std::size_t horizon = 2000;
  std::size_t window = 500;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  Mode mode = Mode::exact;
  TieBreak tie_break{};
};

StabilizationRun monte_carlo_stabilization(const WeightedClass& c, const StabilizationOptions& opt);

struct ClassProfile {
  bool all_factorizable = false;
  bool all_measures = false;
  std::optional<Rational> uniform_stochasticity_delta;
  std::optional<Rational> min_observed;  // smallest positive step probability seen up to depth
};

ClassProfile profile_class(const WeightedClass& c, std::size_t depth);

// Number of t with v[t] != v[t-1].
std::size_t count_alternations(const std::vector<Value>& values);
bool is_oscillating(const std::vector<Value>& values, std::size_t window);

// On-sequence hybrid values nu^{x_{1:t}}(x_{1:t}) / nu^{x_{<t}}(x_{<t}) for t = 1..T.
std::vector<Value> hybrid_on_sequence(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {},
                                      Mode mode = Mode::exact);

struct RatioTrace {
  std::vector<Rational> ratio;  // w_nu nu(1^t) / (w_mu mu(1^t)), t = 0..T
  std::size_t argmax_changes = 0;
  std::size_t increment_sign_changes = 0;
};
// Along 1^T for a two-model class (mu first).
RatioTrace ratio_trace(const WeightedClass& c, std::size_t horizon);

// Martingale checks for the oscillating construction.
struct MartingaleCheck {
  bool identity_holds = true;
  std::size_t nodes = 0;
  std::optional<Sequence> witness;
};
MartingaleCheck check_martingale_identity(std::size_t depth);

// lambda-mass of length-n strings with a dead prefix, n = 0..depth.
std::vector<Rational> dead_mass_by_depth(std::size_t depth);

}  // namespace mdl
