#include "mdl/metrics.hpp"

#include <algorithm>

#include "mdl/errors.hpp"
#include "mdl/random.hpp"

namespace mdl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBlock = 64;

std::size_t metric_index(Metric m) { return static_cast<std::size_t>(m); }
}  // namespace

std::string to_string(Metric m) {
  switch (m) {
    case Metric::square: return "square";
    case Metric::hellinger: return "hellinger";
    case Metric::kl: return "kl";
    case Metric::absolute: return "absolute";
    case Metric::mass_gap: return "mass_gap";
    case Metric::log_mass_gap: return "log_mass_gap";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (auto m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

bool has_exact_form(Metric m) { return m == Metric::square || m == Metric::absolute || m == Metric::mass_gap; }

double StepDistances::get(Metric m) const {
  switch (m) {
    case Metric::square: return square;
    case Metric::hellinger: return hellinger;
    case Metric::kl: return kl;
    case Metric::absolute: return absolute;
    case Metric::mass_gap: return mass_gap;
    case Metric::log_mass_gap: return log_mass_gap;
  }
  return 0;
}

const std::optional<Rational>& StepDistances::exact(Metric m) const {
  static const std::optional<Rational> none;
  switch (m) {
    case Metric::square: return square_exact;
    case Metric::absolute: return absolute_exact;
    case Metric::mass_gap: return mass_gap_exact;
    default: return none;
  }
}

StepDistances step_distances(const std::vector<Value>& mu, const std::vector<Value>& phi) {
  if (mu.size() != phi.size()) throw AlphabetMismatch("distributions of different sizes");
  StepDistances d;
  bool exact = std::all_of(mu.begin(), mu.end(), [](const Value& v) { return v.is_exact(); }) &&
               std::all_of(phi.begin(), phi.end(), [](const Value& v) { return v.is_exact(); });
  double phi_sum = 0;
  double phi_log_sum = -kInf;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double m = mu[a].to_double();
    const double p = phi[a].to_double();
    d.square += (m - p) * (m - p);
    d.absolute += std::abs(m - p);
    const double r = std::sqrt(m) - std::sqrt(p);
    d.hellinger += r * r;
    if (!mu[a].is_zero()) d.kl += phi[a].is_zero() ? kInf : m * (mu[a].log() - phi[a].log());
    phi_sum += p;
    if (!phi[a].is_zero()) {
      double l = phi[a].log();
      phi_log_sum = phi_log_sum == -kInf ? l : std::max(l, phi_log_sum) + std::log1p(std::exp(-std::abs(l - phi_log_sum)));
    }
  }
  d.mass_gap = std::abs(1.0 - phi_sum);
  d.log_mass_gap = std::abs(phi_log_sum);
  if (exact) {
    Rational sq(0), ab(0), total(0);
    for (std::size_t a = 0; a < mu.size(); ++a) {
      Rational diff = mu[a].rational() - phi[a].rational();
      sq += diff * diff;
      ab += abs(diff);
      total += phi[a].rational();
    }
    Rational gap = abs(Rational(1 - total));
    d.square = to_double(sq);
    d.absolute = to_double(ab);
    d.mass_gap = to_double(gap);
    d.log_mass_gap = std::abs(log_of(total));
    d.square_exact = std::move(sq);
    d.absolute_exact = std::move(ab);
    d.mass_gap_exact = std::move(gap);
  }
  return d;
}

StepDistances step_distances(const std::vector<Value>& mu, const PredictiveDistribution& phi) {
  return step_distances(mu, phi.values);
}

StepDistances step_distances(const std::vector<double>& mu, const std::vector<double>& phi) {
  std::vector<Value> m, p;
  for (double v : mu) m.emplace_back(LogFloat::from_double(v));
  for (double v : phi) p.emplace_back(LogFloat::from_double(v));
  auto d = step_distances(m, p);
  // Plain differences avoid exp/log round trips for the additive metrics.
  d.square = d.absolute = 0;
  double s = 0;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    d.square += (mu[a] - phi[a]) * (mu[a] - phi[a]);
    d.absolute += std::abs(mu[a] - phi[a]);
    double r = std::sqrt(mu[a]) - std::sqrt(phi[a]);
    s += r * r;
  }
  d.hellinger = s;
  return d;
}

// ---------------------------------------------------------------------------

CumulativeLedger::CumulativeLedger(std::vector<PredictorKind> predictors, std::size_t horizon)
    : predictors_(std::move(predictors)), horizon_(horizon) {
  steps_.assign(predictors_.size() * kAllMetrics.size() * horizon_, Quantity{});
  cumulative_.assign(predictors_.size() * kAllMetrics.size() * horizon_, Quantity{});
}

bool CumulativeLedger::has(PredictorKind p) const {
  return std::find(predictors_.begin(), predictors_.end(), p) != predictors_.end();
}

std::size_t CumulativeLedger::slot(PredictorKind p, Metric m, std::size_t t) const {
  auto it = std::find(predictors_.begin(), predictors_.end(), p);
  if (it == predictors_.end()) throw Error("ledger has no predictor " + to_string(p));
  if (t < 1 || t > horizon_) throw Error("ledger step out of range");
  std::size_t pi = static_cast<std::size_t>(it - predictors_.begin());
  return (pi * kAllMetrics.size() + metric_index(m)) * horizon_ + (t - 1);
}

const Quantity& CumulativeLedger::step(PredictorKind p, Metric m, std::size_t t) const { return steps_[slot(p, m, t)]; }

const Quantity& CumulativeLedger::cumulative(PredictorKind p, Metric m, std::size_t n) const {
  if (n == 0) {
    static const Quantity zero{0.0, Rational(0), 0.0};
    return zero;
  }
  return cumulative_[slot(p, m, n)];
}

Quantity& CumulativeLedger::step_ref(PredictorKind p, Metric m, std::size_t t) { return steps_[slot(p, m, t)]; }

Quantity& CumulativeLedger::cumulative_ref(PredictorKind p, Metric m, std::size_t n) {
  return cumulative_[slot(p, m, n)];
}

void CumulativeLedger::accumulate_steps() {
  for (auto p : predictors_) {
    for (auto m : kAllMetrics) {
      Quantity running{0.0, Rational(0), 0.0};
      bool exact = true;
      for (std::size_t t = 1; t <= horizon_; ++t) {
        const auto& s = step(p, m, t);
        running.value += s.value;
        if (exact && s.exact) {
          *running.exact += *s.exact;
          running.value = to_double(*running.exact);
        } else {
          exact = false;
          running.exact.reset();
        }
        cumulative_ref(p, m, t) = running;
      }
    }
  }
}

std::vector<PredictorKind> default_predictors() { return std::vector<PredictorKind>(kAllPredictors.begin(), kAllPredictors.end()); }

// ---------------------------------------------------------------------------

namespace {

std::vector<Value> true_conditional(const Frontier& f, std::size_t truth) {
  std::vector<Value> mu;
  for (const auto& row : f.next) mu.push_back(row[truth] / f.mass[truth]);
  return mu;
}

struct TreeAcc {
  std::vector<double> approx;
  std::vector<Rational> exact;
};

}  // namespace

CumulativeLedger cumulative_distances(const WeightedClass& c, std::size_t horizon, Mode mode, const TieBreak& tb,
                                      const WalkOptions& opt, std::vector<PredictorKind> predictors) {
  const std::size_t truth = c.require_true_index();
  const std::size_t P = predictors.size();
  const std::size_t M = kAllMetrics.size();
  const std::size_t cells = P * M * horizon;
  TreeAcc init{std::vector<double>(cells, 0.0),
               mode == Mode::exact ? std::vector<Rational>(cells, Rational(0)) : std::vector<Rational>{}};

  auto acc = walk_accumulate(
      c, horizon, mode, opt, init,
      [&](TreeAcc& a, const WalkNode& node) {
        auto preds = predict_all(c, node.frontier, tb);
        auto mu = true_conditional(node.frontier, truth);
        const std::size_t t = node.x.size();
        const double weight = node.mu_mass.to_double();
        for (std::size_t pi = 0; pi < P; ++pi) {
          auto d = step_distances(mu, preds.at(predictors[pi]));
          for (std::size_t mi = 0; mi < M; ++mi) {
            const std::size_t cell = (pi * M + mi) * horizon + t;
            const Metric metric = kAllMetrics[mi];
            if (mode == Mode::exact && d.exact(metric)) {
              a.exact[cell] += node.mu_mass.rational() * *d.exact(metric);
            } else {
              double v = d.get(metric);
              if (v != 0) a.approx[cell] += v == kInf ? kInf : weight * v;
            }
          }
        }
      },
      [](TreeAcc& into, const TreeAcc& part) {
        for (std::size_t i = 0; i < into.approx.size(); ++i) into.approx[i] += part.approx[i];
        for (std::size_t i = 0; i < into.exact.size(); ++i) into.exact[i] += part.exact[i];
      });

  CumulativeLedger ledger(predictors, horizon);
  for (std::size_t pi = 0; pi < P; ++pi) {
    for (std::size_t mi = 0; mi < M; ++mi) {
      for (std::size_t t = 0; t < horizon; ++t) {
        const std::size_t cell = (pi * M + mi) * horizon + t;
        auto& q = ledger.step_ref(predictors[pi], kAllMetrics[mi], t + 1);
        q.std_error = 0.0;
        if (mode == Mode::exact && has_exact_form(kAllMetrics[mi])) {
          q.exact = acc.exact[cell];
          q.value = to_double(acc.exact[cell]);
        } else {
          q.value = acc.approx[cell];
        }
      }
    }
  }
  ledger.accumulate_steps();
  return ledger;
}

namespace {

struct BlockSums {
  std::vector<double> sum, sumsq;
  std::vector<std::uint8_t> infinite;
};

}  // namespace

CumulativeLedger monte_carlo_distances(const WeightedClass& c, std::size_t horizon, const MonteCarloOptions& opt,
                                       const TieBreak& tb, std::vector<PredictorKind> predictors) {
  const std::size_t truth = c.require_true_index();
  if (!c.model(truth).is_proper_measure()) throw NotAMeasure("Monte Carlo needs a samplable true measure");
  const std::size_t P = predictors.size();
  const std::size_t M = kAllMetrics.size();
  const std::size_t cells = P * M * horizon;
  const std::size_t blocks = (opt.samples + kBlock - 1) / kBlock;
  std::vector<BlockSums> parts(blocks);

  parallel_for(blocks, opt.threads, [&](std::size_t b) {
    BlockSums& out = parts[b];
    out.sum.assign(cells, 0.0);
    out.sumsq.assign(cells, 0.0);
    out.infinite.assign(cells, 0);
    std::vector<double> running(P * M);
    for (std::size_t j = b * kBlock; j < std::min(opt.samples, (b + 1) * kBlock); ++j) {
      Rng rng(derive_seed(opt.seed, j));
      PathState path(c, opt.mode);
      std::fill(running.begin(), running.end(), 0.0);
      for (std::size_t t = 0; t < horizon; ++t) {
        const auto& f = path.frontier();
        auto preds = predict_all(c, f, tb);
        auto mu = true_conditional(f, truth);
        for (std::size_t pi = 0; pi < P; ++pi) {
          auto d = step_distances(mu, preds.at(predictors[pi]));
          for (std::size_t mi = 0; mi < M; ++mi) {
            double& r = running[pi * M + mi];
            r += d.get(kAllMetrics[mi]);
            const std::size_t cell = (pi * M + mi) * horizon + t;
            if (std::isinf(r)) {
              out.infinite[cell] = 1;
            } else {
              out.sum[cell] += r;
              out.sumsq[cell] += r * r;
            }
          }
        }
        path.advance(draw_symbol(path.true_conditional(), rng.uniform()));
      }
    }
  });

  std::vector<double> sum(cells, 0.0), sumsq(cells, 0.0);
  std::vector<std::uint8_t> infinite(cells, 0);
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < cells; ++i) {
      sum[i] += p.sum[i];
      sumsq[i] += p.sumsq[i];
      infinite[i] |= p.infinite[i];
    }
  }

  CumulativeLedger ledger(predictors, horizon);
  const double n = static_cast<double>(opt.samples);
  for (std::size_t pi = 0; pi < P; ++pi) {
    for (std::size_t mi = 0; mi < M; ++mi) {
      double previous = 0;
      for (std::size_t t = 0; t < horizon; ++t) {
        const std::size_t cell = (pi * M + mi) * horizon + t;
        auto& q = ledger.cumulative_ref(predictors[pi], kAllMetrics[mi], t + 1);
        if (infinite[cell]) {
          q.value = kInf;
          q.std_error = std::numeric_limits<double>::quiet_NaN();
        } else {
          q.value = sum[cell] / n;
          double var = opt.samples > 1 ? std::max(0.0, (sumsq[cell] - n * q.value * q.value) / (n - 1)) : 0.0;
          q.std_error = std::sqrt(var / n);
        }
        auto& s = ledger.step_ref(predictors[pi], kAllMetrics[mi], t + 1);
        s.value = q.value - previous;
        if (std::isinf(q.value)) s.value = kInf;
        previous = q.value;
      }
    }
  }
  return ledger;
}

// ---------------------------------------------------------------------------

const std::vector<BoundSpec>& bound_table() {
  static const std::vector<BoundSpec> table = [] {
    std::vector<BoundSpec> t{
        {PredictorKind::xi, Metric::square, BoundForm::log_inverse, 0, "ln w^-1"},
        {PredictorKind::rho_norm, Metric::square, BoundForm::inverse_plus_log, 0, "w^-1 + ln w^-1"},
        {PredictorKind::rho_norm, Metric::kl, BoundForm::inverse_plus_log, 0, "w^-1 + ln w^-1"},
        {PredictorKind::rho, Metric::log_mass_gap, BoundForm::multiple, 2, "2 w^-1"},
        {PredictorKind::rho, Metric::mass_gap, BoundForm::multiple, 2, "2 w^-1"},
        {PredictorKind::static_mdl, Metric::mass_gap, BoundForm::multiple, 1, "w^-1"},
    };
    const std::pair<PredictorKind, int> summary[] = {{PredictorKind::rho_norm, 2},
                                                     {PredictorKind::rho, 8},
                                                     {PredictorKind::static_mdl, 21},
                                                     {PredictorKind::static_norm, 32}};
    for (auto [p, k] : summary) {
      for (auto m : {Metric::square, Metric::hellinger}) {
        t.push_back({p, m, BoundForm::multiple, k, std::to_string(k) + " w^-1"});
      }
    }
    return t;
  }();
  return table;
}

double bound_value(const BoundSpec& spec, const Rational& w_mu) {
  const double log_inv = -log_of(w_mu);
  const double inv = to_double(Rational(1 / w_mu));
  switch (spec.form) {
    case BoundForm::log_inverse: return log_inv;
    case BoundForm::inverse_plus_log: return inv + log_inv;
    case BoundForm::multiple: return spec.constant * inv;
  }
  return 0;
}

std::optional<Rational> bound_value_exact(const BoundSpec& spec, const Rational& w_mu) {
  if (spec.form != BoundForm::multiple) return std::nullopt;
  return Rational(spec.constant / w_mu);
}

BoundReport make_report(const std::string& predictor, const std::string& metric, const std::string& bound_name,
                        double bound, std::optional<Rational> bound_exact, const Quantity& measured) {
  BoundReport r;
  r.predictor = predictor;
  r.metric = metric;
  r.bound_name = bound_name;
  r.bound = bound;
  r.bound_exact = std::move(bound_exact);
  r.measured = measured.value;
  r.measured_exact = measured.exact;
  r.measured_stderr = measured.std_error;
  if (r.bound_exact && r.measured_exact) {
    r.slack_exact = *r.bound_exact - *r.measured_exact;
    r.slack = to_double(*r.slack_exact);
    r.pass = sgn(*r.slack_exact) >= 0;
  } else {
    r.slack = bound - measured.value;
    r.pass = r.slack >= 0;  // NaN and -inf fail
  }
  return r;
}

std::vector<BoundReport> bounds_from_ledger(const WeightedClass& c, const CumulativeLedger& ledger) {
  const Rational& w = c.true_weight();
  std::vector<BoundReport> out;
  for (const auto& spec : bound_table()) {
    if (!ledger.has(spec.predictor) || ledger.horizon() == 0) continue;
    out.push_back(make_report(to_string(spec.predictor), to_string(spec.metric), spec.name, bound_value(spec, w),
                              bound_value_exact(spec, w), ledger.total(spec.predictor, spec.metric)));
  }
  return out;
}

std::vector<BoundReport> check_bounds(const WeightedClass& c, std::size_t horizon, Mode mode, const TieBreak& tb,
                                      const WalkOptions& opt) {
  return bounds_from_ledger(c, cumulative_distances(c, horizon, mode, tb, opt));
}

}  // namespace mdl
