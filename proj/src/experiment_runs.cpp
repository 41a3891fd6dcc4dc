#include "experiment_runs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mdl/coding.hpp"
#include "mdl/conditional.hpp"
#include "mdl/errors.hpp"
#include "mdl/properties.hpp"
#include "mdl/random.hpp"
#include "mdl/random_class.hpp"
#include "mdl/stabilization.hpp"

namespace mdl::runs {

Params::Params(const ExperimentInfo& info, const ExperimentConfig& cfg) {
  for (const auto& p : info.params) values_[p.name] = p.default_value;
  for (const auto& [k, v] : cfg.params) {
    if (!values_.count(k)) throw ConfigError("unknown parameter '" + k + "' for " + info.name);
    values_[k] = v;
  }
  horizon = cfg.horizon.value_or(info.default_horizon);
  samples = cfg.samples.value_or(info.default_samples);
  mode = cfg.mode.value_or(info.default_mode);
}

const std::string& Params::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error("undeclared parameter " + key);
  return it->second;
}

std::size_t Params::size(const std::string& key) const {
  const auto& s = str(key);
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 0) throw ConfigError("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " must be a nonnegative integer, got '" + s + "'");
  }
}

double Params::real(const std::string& key) const {
  try {
    return to_double(parse_rational(str(key)));
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " must be a number, got '" + str(key) + "'");
  }
}

Rational Params::rational(const std::string& key) const {
  try {
    return parse_rational(str(key));
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " must be a rational, got '" + str(key) + "'");
  }
}

std::vector<Rational> Params::rationals(const std::string& key) const {
  std::vector<Rational> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw ConfigError("parameter " + key + ": bad entry '" + item + "'");
    }
  }
  return out;
}

std::vector<double> Params::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& r : rationals(key)) out.push_back(to_double(r));
  return out;
}

namespace {

Params params_of(const ExperimentConfig& cfg) { return Params(find_experiment(cfg.experiment), cfg); }

TieBreak tie_of(const ExperimentConfig& cfg, TieBreak fallback = {}) { return cfg.tie_break.value_or(fallback); }

void reject_class(const ExperimentConfig& cfg) {
  if (cfg.class_spec) throw ConfigError(cfg.experiment + " builds its own class; remove the class section");
}

void add_ledger(ExperimentReport& r, const CumulativeLedger& l, const std::string& case_id, bool final_only) {
  for (auto p : l.predictors()) {
    for (auto m : kAllMetrics) {
      for (std::size_t t = final_only ? l.horizon() : 1; t <= l.horizon(); ++t) {
        r.ledgers.push_back(LedgerRow{t, to_string(m), to_string(p), l.cumulative(p, m, t), case_id});
      }
    }
  }
}

Series cumulative_series(const CumulativeLedger& l, Metric m, const std::string& name) {
  Series s{name, {"t"}, {}};
  for (auto p : l.predictors()) s.columns.push_back(to_string(p));
  for (std::size_t t = 0; t <= l.horizon(); ++t) {
    std::vector<double> row{static_cast<double>(t)};
    for (auto p : l.predictors()) row.push_back(l.cumulative(p, m, t).value);
    s.rows.push_back(std::move(row));
  }
  return s;
}

void add_bounds(ExperimentReport& r, const std::vector<BoundReport>& b, const std::string& case_id) {
  for (const auto& x : b) r.bounds.push_back(BoundRow{x, case_id});
}

}  // namespace

void bound_suite(const ExperimentConfig& cfg, ExperimentReport& r) {
  const auto P = params_of(cfg);
  const TieBreak tb = tie_of(cfg);
  std::vector<WeightedClass> classes;
  std::vector<std::string> ids;
  if (cfg.class_spec) {
    classes.push_back(build_class(*cfg.class_spec));
    ids.push_back("config");
  } else {
    const std::size_t n = P.size("classes");
    for (std::size_t j = 0; j < n; ++j) {
      classes.push_back(random_class(derive_seed(cfg.seed, j)));
      ids.push_back("class " + std::to_string(j));
    }
  }
  std::vector<CumulativeLedger> ledgers(classes.size());
  parallel_for(classes.size(), cfg.threads, [&](std::size_t j) {
    ledgers[j] = cumulative_distances(classes[j], P.horizon, P.mode, tb, WalkOptions{1});
  });
  std::size_t failures = 0;
  std::optional<Rational> min_exact_slack;
  double min_ratio_slack = std::numeric_limits<double>::infinity();
  Series slack{"bound_slack", {"case", "min_slack_over_bound"}, {}};
  for (std::size_t j = 0; j < classes.size(); ++j) {
    auto reports = bounds_from_ledger(classes[j], ledgers[j]);
    double case_min = std::numeric_limits<double>::infinity();
    for (const auto& b : reports) {
      failures += !b.pass;
      if (b.slack_exact && (!min_exact_slack || *b.slack_exact < *min_exact_slack)) min_exact_slack = b.slack_exact;
      if (b.bound > 0) case_min = std::min(case_min, b.slack / b.bound);
    }
    min_ratio_slack = std::min(min_ratio_slack, case_min);
    slack.rows.push_back({static_cast<double>(j), case_min});
    add_bounds(r, reports, ids[j]);
    add_ledger(r, ledgers[j], ids[j], true);
  }
  r.plots.push_back(std::move(slack));
  r.summary.push_back({"classes", static_cast<std::int64_t>(classes.size())});
  r.summary.push_back({"bound_rows", static_cast<std::int64_t>(r.bounds.size())});
  r.summary.push_back({"bound_failures", static_cast<std::int64_t>(failures)});
  r.summary.push_back({"min_relative_slack", min_ratio_slack});
  if (min_exact_slack) r.summary.push_back({"min_exact_slack", *min_exact_slack});

  const std::size_t lemma_classes = P.size("lemma_classes");
  if (lemma_classes > 0) {
    auto suite = lemma_tree_suite(lemma_classes, P.size("lemma_depth"), derive_seed(cfg.seed, 0x1e44a), cfg.threads);
    suite.merge(distance_pair_suite(P.size("pairs"), derive_seed(cfg.seed, 0x9a125)));
    for (const auto& c : suite.checks) {
      std::string detail = std::to_string(c.violations) + " violations in " + std::to_string(c.checked) + " checks";
      if (c.witness) detail += "; first at " + *c.witness;
      r.verdicts.push_back(Verdict{c.name, c.violations == 0, detail});
    }
  }
}

void example1(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const std::size_t n = P.size("N");
  if (n < 2) throw ConfigError("N must be at least 2");
  const std::size_t horizon = cfg.horizon.value_or(n);
  const auto c = example1_class(n);
  const TieBreak tb = tie_of(cfg);
  auto ledger = cumulative_distances(c, horizon, P.mode, tb, WalkOptions{cfg.threads});
  add_ledger(r, ledger, "", false);
  add_bounds(r, bounds_from_ledger(c, ledger), "");
  r.plots.push_back(cumulative_series(ledger, Metric::square, "cumulative_square"));

  const auto& s = ledger.total(PredictorKind::rho_norm, Metric::square);
  const Rational expected = Rational(static_cast<long>(n - 1)) / 2;
  r.summary.push_back({"N", static_cast<std::int64_t>(n)});
  r.summary.push_back({"horizon", static_cast<std::int64_t>(horizon)});
  r.summary.push_back({"rho_norm_square", s.exact ? Scalar(*s.exact) : Scalar(s.value)});
  r.summary.push_back({"expected", expected});
  const bool exact_match = s.exact ? *s.exact == expected : std::abs(s.value - to_double(expected)) <= 1e-9;
  std::string detail = "S = " + (s.exact ? to_string(*s.exact) : format_double(s.value)) + ", (N-1)/2 = " +
                       to_string(expected);
  if (horizon + 1 < n) {
    detail += " (horizon below N-1, not comparable)";
  } else {
    r.verdicts.push_back(Verdict{"rho_norm_square_equals_half_N_minus_1", exact_match, detail});
  }
  auto trace = map_trace(c, Sequence(horizon, 1), tb);
  Series ms{"map_index", {"t", "index"}, {}};
  for (std::size_t t = 0; t < trace.index.size(); ++t) ms.rows.push_back({double(t), double(trace.index[t])});
  r.plots.push_back(std::move(ms));
}

void example2_mc(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const std::size_t n = P.size("N");
  const auto c = example2_class(n);
  const TieBreak tb = tie_of(cfg);
  const double ln_inv = std::log(static_cast<double>(n + 1));
  const std::vector<PredictorKind> kinds{PredictorKind::xi, PredictorKind::rho_norm, PredictorKind::static_mdl,
                                         PredictorKind::static_norm};
  auto ledger = cumulative_distances(c, P.horizon, P.mode, tb, WalkOptions{cfg.threads}, kinds);
  add_ledger(r, ledger, "exact", false);
  add_bounds(r, bounds_from_ledger(c, ledger), "exact");
  r.plots.push_back(cumulative_series(ledger, Metric::square, "exact_cumulative_square"));
  const auto& s = ledger.total(PredictorKind::static_mdl, Metric::square);
  r.summary.push_back({"N", static_cast<std::int64_t>(n)});
  r.summary.push_back({"horizon", static_cast<std::int64_t>(P.horizon)});
  r.summary.push_back({"ln_w_mu_inverse", ln_inv});
  r.summary.push_back({"static_square", s.exact ? Scalar(*s.exact) : Scalar(s.value)});
  r.summary.push_back({"static_square_float", s.value});
  r.summary.push_back({"static_single_symbol_square", s.value / 2});
  r.summary.push_back({"xi_square", ledger.total(PredictorKind::xi, Metric::square).value});
  r.verdicts.push_back(Verdict{"static_square_exceeds_ln_w_inverse", s.value > ln_inv,
                               "S_static = " + format_double(s.value) + " vs ln(N+1) = " + format_double(ln_inv) +
                                   " at horizon " + std::to_string(P.horizon)});

  const std::size_t mc_horizon = P.size("mc_horizon");
  if (mc_horizon > 0) {
    MonteCarloOptions mo;
    mo.samples = P.size("mc_samples");
    mo.seed = cfg.seed;
    mo.threads = cfg.threads;
    mo.mode = Mode::log_float;
    auto mc = monte_carlo_distances(c, mc_horizon, mo, tb, {PredictorKind::xi, PredictorKind::static_mdl});
    add_ledger(r, mc, "monte_carlo", false);
    Series g{"monte_carlo_cumulative_square", {"t", "xi", "static", "static_stderr", "ln_w_inverse"}, {}};
    for (std::size_t t = 0; t <= mc_horizon; ++t) {
      const auto& q = mc.cumulative(PredictorKind::static_mdl, Metric::square, t);
      g.rows.push_back({double(t), mc.cumulative(PredictorKind::xi, Metric::square, t).value, q.value,
                        std::isnan(q.std_error) ? 0.0 : q.std_error, ln_inv});
    }
    r.plots.push_back(std::move(g));
    const auto& q = mc.total(PredictorKind::static_mdl, Metric::square);
    r.summary.push_back({"mc_horizon", static_cast<std::int64_t>(mc_horizon)});
    r.summary.push_back({"mc_static_square", q.value});
    r.summary.push_back({"mc_static_square_stderr", q.std_error});
  }
}

void example3_hybrid(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const auto c = example3_class();
  const std::size_t T = P.horizon;
  Sequence x;
  if (!P.str("sequence").empty()) {
    x = parse_sequence(P.str("sequence"));
  } else {
    x = sample_sequence(c.model(0), T, cfg.seed);
    if (!x.empty()) x[0] = 1;
  }
  if (x.size() < T) throw ConfigError("sequence shorter than the horizon");
  x.resize(T);
  if (!x.empty() && x[0] != 1) throw ConfigError("sequence must start with 1 so both models stay positive");
  TieBreak rr{TiePolicy::round_robin, 0};
  if (cfg.tie_break && cfg.tie_break->policy == TiePolicy::round_robin) rr.phase = cfg.tie_break->phase;
  const TieBreak lw{TiePolicy::largest_weight, 0};

  auto h_rr = hybrid_on_sequence(c, x, rr, P.mode);
  auto h_lw = hybrid_on_sequence(c, x, lw, P.mode);
  const Value quarter = Value::of(Rational(1, 4), P.mode), one = Value::one(P.mode);
  bool alternates = true;
  std::string first_bad;
  for (std::size_t t = 2; t <= h_rr.size(); ++t) {
    const Value& want = t % 2 == 0 ? quarter : one;
    if (!tied(h_rr[t - 1], want)) {
      alternates = false;
      if (first_bad.empty()) first_bad = "t=" + std::to_string(t) + " value " + h_rr[t - 1].to_string();
    }
  }
  bool halves = true;
  const Value half = Value::of(Rational(1, 2), P.mode);
  Series pred{"normalized_predictions", {"t", "static_norm_1", "rho_norm_1"}, {}};
  for (std::size_t t = 1; t <= T; ++t) {
    SymbolSpan hist(x.data(), t - 1);
    auto s = predict(c, PredictorKind::static_norm, hist, rr, P.mode);
    auto d = predict(c, PredictorKind::rho_norm, hist, rr, P.mode);
    for (Symbol a = 0; a < 2; ++a) halves = halves && tied(s[a], half) && tied(d[a], half);
    pred.rows.push_back({double(t), s[1].to_double(), d[1].to_double()});
  }
  auto trace_lw = map_trace(c, x, lw, P.mode);
  auto trace_rr = map_trace(c, x, rr, P.mode);
  const bool lw_constant = stabilization_verdict(trace_lw, 0).change_count == 0;

  Series hs{"hybrid", {"t", "round_robin", "largest_weight"}, {}};
  for (std::size_t t = 1; t <= h_rr.size(); ++t) {
    hs.rows.push_back({double(t), h_rr[t - 1].to_double(), t <= h_lw.size() ? h_lw[t - 1].to_double() : NAN});
  }
  r.plots.push_back(std::move(hs));
  r.plots.push_back(std::move(pred));
  r.summary.push_back({"horizon", static_cast<std::int64_t>(T)});
  r.summary.push_back({"sequence", format_sequence(x)});
  r.summary.push_back({"round_robin_map_changes",
                       static_cast<std::int64_t>(stabilization_verdict(trace_rr, 0).change_count)});
  r.summary.push_back({"largest_weight_map_changes",
                       static_cast<std::int64_t>(stabilization_verdict(trace_lw, 0).change_count)});
  r.summary.push_back({"round_robin_hybrid_alternations", static_cast<std::int64_t>(count_alternations(h_rr))});
  r.summary.push_back({"round_robin_hybrid_oscillating", is_oscillating(h_rr, std::max<std::size_t>(1, T / 2))});
  r.verdicts.push_back(Verdict{"hybrid_alternates_quarter_and_one", alternates,
                               alternates ? "t = 2.." + std::to_string(T) : first_bad});
  r.verdicts.push_back(Verdict{"normalized_predictions_are_half", halves, "static_norm and rho_norm, t = 1.." +
                                                                              std::to_string(T)});
  r.verdicts.push_back(Verdict{"largest_weight_map_constant", lw_constant, ""});
}

void example4_ratio(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const std::size_t T = P.horizon;
  const std::size_t at = P.size("calibrate_at");
  if (at > T) throw ConfigError("calibrate_at exceeds the horizon");
  auto base = example4_class(P.rational("w_mu"), P.rational("w_nu"));
  auto tr = ratio_trace(base, T);
  // Weights that put the argmax threshold at the ratio's value at t = calibrate_at.
  auto equal = ratio_trace(example4_class(Rational(1, 2), Rational(1, 2)), at);
  const Rational q = equal.ratio.back();
  auto cal_class = example4_class(Rational(q / (1 + q)), Rational(1 / (1 + q)));
  auto cal = ratio_trace(cal_class, T);
  auto profile = profile_class(base, 2 * T);

  Series s{"ratio", {"t", "configured", "calibrated"}, {}};
  for (std::size_t t = 0; t <= T; ++t) s.rows.push_back({double(t), to_double(tr.ratio[t]), to_double(cal.ratio[t])});
  r.plots.push_back(std::move(s));
  r.summary.push_back({"horizon", static_cast<std::int64_t>(T)});
  r.summary.push_back({"w_mu", base.weight(0)});
  r.summary.push_back({"w_nu", base.weight(1)});
  r.summary.push_back({"final_ratio", to_double(tr.ratio.back())});
  r.summary.push_back({"argmax_changes", static_cast<std::int64_t>(tr.argmax_changes)});
  r.summary.push_back({"increment_sign_changes", static_cast<std::int64_t>(tr.increment_sign_changes)});
  r.summary.push_back({"calibrated_w_mu", cal_class.weight(0)});
  r.summary.push_back({"calibrated_argmax_changes", static_cast<std::int64_t>(cal.argmax_changes)});
  r.summary.push_back({"factorizable", profile.all_factorizable});
  r.summary.push_back({"uniformly_stochastic", profile.uniform_stochasticity_delta.has_value()});
  r.verdicts.push_back(Verdict{"ratio_oscillates", tr.increment_sign_changes >= 5,
                               std::to_string(tr.increment_sign_changes) + " sign changes of the increment"});
  r.verdicts.push_back(Verdict{"calibrated_argmax_changes_at_least_twice", cal.argmax_changes >= 2,
                               std::to_string(cal.argmax_changes) + " changes"});
  r.verdicts.push_back(Verdict{"not_uniformly_stochastic",
                               profile.all_factorizable && !profile.uniform_stochasticity_delta, ""});
}

void example5_martingale(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  auto id = check_martingale_identity(P.size("identity_depth"));
  auto dead = dead_mass_by_depth(P.size("dead_depth"));
  Rational worst(0);
  Series d{"dead_mass", {"depth", "mass"}, {}};
  for (std::size_t n = 0; n < dead.size(); ++n) {
    worst = std::max(worst, dead[n]);
    d.rows.push_back({double(n), to_double(dead[n])});
  }
  r.plots.push_back(std::move(d));

  const auto c = example5_class();
  StabilizationOptions so;
  so.horizon = P.horizon;
  so.window = P.size("window");
  so.samples = P.samples;
  so.seed = cfg.seed;
  so.threads = cfg.threads;
  so.mode = P.mode;
  so.tie_break = tie_of(cfg);
  auto run = monte_carlo_stabilization(c, so);
  const double non_stable = 1 - run.fraction_stabilized;
  Series changes{"map_changes", {"sample", "changes", "stabilized"}, {}};
  for (std::size_t j = 0; j < run.verdicts.size(); ++j) {
    changes.rows.push_back({double(j), double(run.verdicts[j].change_count),
                            run.verdicts[j].stabilized_by ? 1.0 : 0.0});
  }
  r.plots.push_back(std::move(changes));
  auto profile = profile_class(c, 8);

  r.summary.push_back({"identity_nodes", static_cast<std::int64_t>(id.nodes)});
  r.summary.push_back({"max_dead_mass", worst});
  r.summary.push_back({"samples", static_cast<std::int64_t>(run.samples)});
  r.summary.push_back({"window", static_cast<std::int64_t>(run.window)});
  r.summary.push_back({"non_stabilized_fraction", non_stable});
  r.summary.push_back({"factorizable", profile.all_factorizable});
  r.verdicts.push_back(Verdict{"martingale_identity", id.identity_holds,
                               id.witness ? "fails at " + format_sequence(*id.witness) : ""});
  r.verdicts.push_back(Verdict{"dead_mass_at_most_quarter", worst <= Rational(1, 4), "max " + to_string(worst)});
  r.verdicts.push_back(Verdict{"non_stabilized_fraction_at_least_half", non_stable >= 0.5,
                               format_double(non_stable) + " (finite-horizon proxy)"});
}

void stabilization_mc(const ExperimentConfig& cfg, ExperimentReport& r) {
  const auto P = params_of(cfg);
  WeightedClass c = cfg.class_spec ? build_class(*cfg.class_spec)
                                   : bernoulli_class(P.rationals("thetas"), std::nullopt, P.size("true_index"));
  StabilizationOptions so;
  so.horizon = P.horizon;
  so.window = P.size("window");
  so.samples = P.samples;
  so.seed = cfg.seed;
  so.threads = cfg.threads;
  so.mode = P.mode;
  so.tie_break = tie_of(cfg);
  auto run = monte_carlo_stabilization(c, so);
  auto profile = profile_class(c, 16);
  Series s{"last_change", {"sample", "changes", "last_change"}, {}};
  for (std::size_t j = 0; j < run.verdicts.size(); ++j) {
    const auto& v = run.verdicts[j];
    s.rows.push_back({double(j), double(v.change_count), v.stabilized_by ? double(*v.stabilized_by) : NAN});
  }
  r.plots.push_back(std::move(s));
  std::size_t on_truth = 0;
  for (const auto& v : run.verdicts) on_truth += v.stabilized_by && v.final_index == c.require_true_index();
  r.summary.push_back({"models", static_cast<std::int64_t>(c.size())});
  r.summary.push_back({"samples", static_cast<std::int64_t>(run.samples)});
  r.summary.push_back({"window", static_cast<std::int64_t>(run.window)});
  r.summary.push_back({"fraction_stabilized", run.fraction_stabilized});
  r.summary.push_back({"stabilized_on_true_model", static_cast<std::int64_t>(on_truth)});
  r.summary.push_back({"factorizable", profile.all_factorizable});
  if (profile.uniform_stochasticity_delta) r.summary.push_back({"delta", *profile.uniform_stochasticity_delta});
  r.verdicts.push_back(Verdict{"fraction_stabilized_at_least_0.95", run.fraction_stabilized >= 0.95,
                               format_double(run.fraction_stabilized) + " (finite-horizon proxy)"});
  r.verdicts.push_back(Verdict{"uniformly_stochastic_factorizable",
                               profile.all_factorizable && profile.uniform_stochasticity_delta.has_value(),
                               "sufficient condition for stabilization"});
}

void loss_bounds(const ExperimentConfig& cfg, ExperimentReport& r) {
  const auto P = params_of(cfg);
  const TieBreak tb = tie_of(cfg);
  const std::vector<PredictorKind> kinds{PredictorKind::rho_norm, PredictorKind::rho, PredictorKind::static_mdl,
                                         PredictorKind::static_norm};
  const std::size_t cases = cfg.class_spec ? 1 : P.size("cases");
  struct Case {
    std::vector<DecisionTrace> traces;
    std::vector<BoundReport> reports;
  };
  std::vector<Case> out(cases);
  std::vector<std::string> loss_names(cases);
  parallel_for(cases, cfg.threads, [&](std::size_t j) {
    WeightedClass c = cfg.class_spec ? build_class(*cfg.class_spec) : random_class(derive_seed(cfg.seed, 2 * j));
    LossFunction loss = cfg.loss ? build_loss(*cfg.loss) : random_loss(derive_seed(cfg.seed, 2 * j + 1));
    loss_names[j] = loss.name();
    for (auto k : kinds) {
      auto tr = decision_trace(c, k, loss, P.horizon, P.mode, tb, WalkOptions{1});
      out[j].reports.push_back(regret_report(c, tr));
      out[j].reports.push_back(cumulative_regret_report(tr));
      out[j].traces.push_back(std::move(tr));
    }
  });
  std::uint64_t nodes = 0, violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cases; ++j) {
    const std::string id = "case " + std::to_string(j) + " " + loss_names[j];
    add_bounds(r, out[j].reports, id);
    for (const auto& tr : out[j].traces) {
      nodes += tr.nodes_checked;
      violations += tr.instantaneous_violations;
      worst = std::max(worst, tr.max_instantaneous_excess);
      if (j == 0) {
        for (std::size_t t = 1; t <= tr.horizon; ++t) {
          r.ledgers.push_back(LedgerRow{t, "expected_loss", tr.predictor, tr.loss_phi[t - 1], id});
          r.ledgers.push_back(LedgerRow{t, "expected_loss_mu", tr.predictor, tr.loss_mu[t - 1], id});
          r.ledgers.push_back(LedgerRow{t, "hellinger", tr.predictor, tr.hellinger[t - 1], id});
        }
      }
    }
  }
  if (cases > 0) {
    Series s{"case0_regret", {"t"}, {}};
    for (const auto& tr : out[0].traces) s.columns.push_back(tr.predictor);
    const std::size_t T = out[0].traces.front().horizon;
    std::vector<double> acc(out[0].traces.size(), 0.0);
    s.rows.push_back(std::vector<double>(acc.size() + 1, 0.0));
    for (std::size_t t = 1; t <= T; ++t) {
      std::vector<double> row{double(t)};
      for (std::size_t i = 0; i < acc.size(); ++i) {
        const auto& tr = out[0].traces[i];
        acc[i] += tr.loss_phi[t - 1].value - tr.loss_mu[t - 1].value;
        row.push_back(acc[i]);
      }
      s.rows.push_back(std::move(row));
    }
    r.plots.push_back(std::move(s));
  }
  std::size_t failures = 0;
  for (const auto& b : r.bounds) failures += !b.report.pass;
  r.summary.push_back({"cases", static_cast<std::int64_t>(cases)});
  r.summary.push_back({"nodes_checked", static_cast<std::int64_t>(nodes)});
  r.summary.push_back({"instantaneous_violations", static_cast<std::int64_t>(violations)});
  r.summary.push_back({"max_instantaneous_excess", worst});
  r.summary.push_back({"bound_failures", static_cast<std::int64_t>(failures)});
  r.verdicts.push_back(Verdict{"instantaneous_bound", violations == 0,
                               std::to_string(violations) + " violations over " + std::to_string(nodes) + " nodes"});
}

void unit_square_scan(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const std::size_t m = P.size("m");
  if (m < 2) throw ConfigError("m must be at least 2");
  auto s = mdl::unit_square_scan(m, cfg.threads);
  r.summary.push_back({"m", static_cast<std::int64_t>(m)});
  r.summary.push_back({"points", static_cast<std::int64_t>(s.points)});
  r.summary.push_back({"max_violation", s.max_violation});
  r.summary.push_back({"at_mu", s.at_mu});
  r.summary.push_back({"at_phi", s.at_phi});
  r.verdicts.push_back(Verdict{"max_violation_at_most_1e-12", s.max_violation <= 1e-12, format_double(s.max_violation)});
}

void classification_demo(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  ConditionalClass cc;
  for (const auto& p : P.rationals("p_values")) cc.models.push_back(std::make_shared<LabelNoiseModel>(p));
  cc.weights = uniform_weights(cc.models.size()).weights;
  cc.true_index = P.size("true_index");
  std::vector<std::size_t> inputs;
  if (!P.str("inputs").empty()) {
    for (Symbol u : parse_sequence(P.str("inputs"))) inputs.push_back(u);
  } else {
    Rng rng(derive_seed(cfg.seed, 0x1a9e1));
    for (std::size_t t = 0; t < P.horizon; ++t) inputs.push_back(rng.bernoulli(0.5));
  }
  if (inputs.size() < P.horizon) throw ConfigError("fewer inputs than the horizon");
  inputs.resize(P.horizon);
  const auto c = cc.with_inputs(inputs);
  const TieBreak tb = tie_of(cfg);
  const std::vector<PredictorKind> kinds{PredictorKind::xi, PredictorKind::rho_norm, PredictorKind::rho,
                                         PredictorKind::static_mdl};
  auto ledger = cumulative_distances(c, P.horizon, P.mode, tb, WalkOptions{cfg.threads}, kinds);
  add_ledger(r, ledger, "", false);
  add_bounds(r, bounds_from_ledger(c, ledger), "");
  r.plots.push_back(cumulative_series(ledger, Metric::square, "cumulative_square"));
  std::string u_text;
  for (auto u : inputs) u_text.push_back(static_cast<char>('0' + u));
  r.summary.push_back({"inputs", u_text});
  r.summary.push_back({"horizon", static_cast<std::int64_t>(P.horizon)});
  r.summary.push_back({"w_mu", c.true_weight()});
}

void regression_demo(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  DensityClass dc;
  const double slope = P.real("slope"), sigma = P.real("sigma");
  for (double m : P.reals("intercepts")) dc.models.push_back(std::make_shared<GaussianModel>(m, slope, sigma));
  dc.weights = uniform_weights(dc.models.size()).weights;
  dc.true_index = P.size("true_index");
  if (*dc.true_index >= dc.models.size()) throw ConfigError("true_index out of range");
  std::vector<double> inputs;
  for (std::size_t t = 1; t <= P.horizon; ++t) inputs.push_back(static_cast<double>(t) / static_cast<double>(P.horizon));
  auto run = regression_hellinger_mc(dc, inputs, P.samples, cfg.seed, cfg.threads);
  BoundReport b;
  b.predictor = to_string(PredictorKind::static_mdl);
  b.metric = "hellinger_density";
  b.bound_name = "21 w^-1";
  b.bound = run.bound;
  b.bound_exact = Rational(21 / dc.weights[*dc.true_index]);
  b.measured = run.mean;
  b.measured_stderr = run.std_error;
  b.slack = run.bound - run.mean;
  b.pass = run.pass;
  r.bounds.push_back(BoundRow{b, "monte_carlo"});

  Series fs{"step_density", {"n", "square_distance", "kl"}, {}};
  bool step_density_ok = true;
  for (unsigned n : {3u, 9u, 27u}) {
    auto f = step_density_density_demo(n);
    fs.rows.push_back({double(n), f.square_distance, f.kl});
    step_density_ok = step_density_ok && std::abs(f.square_distance - 2.0 * n / 9.0) <= 1e-8 &&
                  std::abs(f.kl - std::log(2.0) / 3.0) <= 1e-8;
    r.summary.push_back({"step_density_square_n" + std::to_string(n), f.square_distance});
    r.summary.push_back({"step_density_kl_n" + std::to_string(n), f.kl});
  }
  r.plots.push_back(std::move(fs));
  GaussianModel g0(0, 0, 1), g1(1, 0, 1);
  const double quad = hellinger_density(g0, g1, 0.0);
  const double closed = gaussian_hellinger(0, 1, 1, 1);
  r.summary.push_back({"samples", static_cast<std::int64_t>(run.samples)});
  r.summary.push_back({"hellinger_mean", run.mean});
  r.summary.push_back({"hellinger_stderr", run.std_error});
  r.summary.push_back({"gaussian_hellinger_quadrature", quad});
  r.summary.push_back({"gaussian_hellinger_closed_form", closed});
  r.verdicts.push_back(Verdict{"step_density_values_within_1e-8", step_density_ok, "square 2n/9 and kl (ln 2)/3"});
  r.verdicts.push_back(Verdict{"gaussian_quadrature_matches_closed_form", std::abs(quad - closed) <= 1e-6,
                               format_double(quad) + " vs " + format_double(closed)});
}

void coding_roundtrip(const ExperimentConfig& cfg, ExperimentReport& r) {
  reject_class(cfg);
  const auto P = params_of(cfg);
  const std::size_t cases = P.size("cases");
  const std::size_t max_len = P.size("max_length");
  struct Outcome {
    bool roundtrip = false, length_exact = false, within_constant = false, corruption_detected = false;
    std::size_t total_bits = 0, n = 0;
  };
  std::vector<Outcome> out(cases);
  parallel_for(cases, cfg.threads, [&](std::size_t j) {
    Rng rng(derive_seed(cfg.seed, j));
    auto c = random_class(rng.next());
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(c.size()) - 1));
    const auto n = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_len)));
    Sequence x = sample_sequence(c.model(i), n, rng.next());
    auto code = encode(c, i, x);
    Outcome& o = out[j];
    o.n = n;
    o.total_bits = code.total_bits();
    std::size_t back = 0;
    o.roundtrip = decode(c, code.bits(), &back) == x && back == i;
    const Rational p = evaluate(c.model(i), x).rational();
    o.length_exact = static_cast<std::int64_t>(code.payload.size()) == ceil_neg_log2(p);
    std::int64_t lb = 0;
    while ((std::uint64_t{1} << lb) < n + 1) ++lb;
    o.within_constant = static_cast<std::int64_t>(code.total_bits()) <=
                        ceil_neg_log2(c.weight(i)) + ceil_neg_log2(p) + 2 * lb + 3;
    Bits bad = code.bits();
    bad[0] = bad[0] == '0' ? '1' : '0';
    try {
      std::size_t other = 0;
      o.corruption_detected = decode(c, bad, &other) != x || other != i;
    } catch (const MalformedCode&) {
      o.corruption_detected = true;
    }
  });
  std::size_t rt = 0, le = 0, wc = 0, cd = 0;
  Series lens{"code_lengths", {"case", "n", "total_bits"}, {}};
  for (std::size_t j = 0; j < cases; ++j) {
    rt += out[j].roundtrip;
    le += out[j].length_exact;
    wc += out[j].within_constant;
    cd += out[j].corruption_detected;
    if (j < 1000) lens.rows.push_back({double(j), double(out[j].n), double(out[j].total_bits)});
  }
  r.plots.push_back(std::move(lens));

  // Kraft sums and block enumeration on a handful of random measures.
  const std::size_t kraft_n = P.size("kraft_n"), block_n = P.size("block_n");
  bool kraft_ok = true, block_ok = true;
  Rational kraft_max(0);
  std::size_t block_checked = 0;
  for (std::size_t j = 0; j < 20; ++j) {
    auto c = random_class(derive_seed(cfg.seed, 0xc0de + j));
    Rng rng(derive_seed(cfg.seed, 0xb10c + j));
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t n = 0; n <= kraft_n; ++n) {
        Rational k = kraft_sum(c.model(i), n);
        kraft_max = std::max(kraft_max, k);
        kraft_ok = kraft_ok && k <= 1;
      }
      const auto n = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(block_n)));
      Sequence x = sample_sequence(c.model(i), n, rng.next());
      auto a = sequential_interval(c.model(i), x);
      auto b = block_interval(c.model(i), x);
      block_ok = block_ok && a.low == b.low && a.width == b.width && dyadic_payload(a) == dyadic_payload(b);
      ++block_checked;
    }
  }
  r.summary.push_back({"cases", static_cast<std::int64_t>(cases)});
  r.summary.push_back({"roundtrip_ok", static_cast<std::int64_t>(rt)});
  r.summary.push_back({"payload_length_exact", static_cast<std::int64_t>(le)});
  r.summary.push_back({"within_constant", static_cast<std::int64_t>(wc)});
  r.summary.push_back({"header_corruption_detected", static_cast<std::int64_t>(cd)});
  r.summary.push_back({"kraft_max", kraft_max});
  r.summary.push_back({"block_cases", static_cast<std::int64_t>(block_checked)});
  r.verdicts.push_back(Verdict{"roundtrip_identity", rt == cases, std::to_string(rt) + "/" + std::to_string(cases)});
  r.verdicts.push_back(Verdict{"payload_length_is_ceil_neg_lb", le == cases,
                               std::to_string(le) + "/" + std::to_string(cases)});
  r.verdicts.push_back(Verdict{"total_within_constant", wc == cases, std::to_string(wc) + "/" + std::to_string(cases)});
  r.verdicts.push_back(Verdict{"kraft_sum_at_most_one", kraft_ok, "max " + to_string(kraft_max)});
  r.verdicts.push_back(Verdict{"sequential_equals_block_enumeration", block_ok,
                               std::to_string(block_checked) + " strings"});
}

}  // namespace mdl::runs
