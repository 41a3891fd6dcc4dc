#include "mdl/decisions.hpp"

#include <algorithm>
#include <cmath>

#include "mdl/errors.hpp"
#include "mdl/random.hpp"

namespace mdl {

namespace {

void check_range(const Rational& v, const std::string& name) {
  if (sgn(v) < 0 || v > 1) throw ConfigError("loss '" + name + "' leaves [0,1]: " + to_string(v));
}

void check_binary(const WeightedClass& c) {
  if (c.alphabet_size() != 2) throw AlphabetMismatch("decision bounds need a binary alphabet");
}

}  // namespace

LossFunction::LossFunction(Fn fn, bool stationary, std::string name)
    : fn_(std::move(fn)), stationary_(stationary), name_(std::move(name)) {
  if (stationary_) {
    for (Symbol x = 0; x < 2; ++x) {
      for (Symbol a = 0; a < 2; ++a) check_range(fn_({}, x, a), name_);
    }
  }
}

Rational LossFunction::operator()(SymbolSpan history, Symbol outcome, Symbol action) const {
  if (outcome > 1 || action > 1) throw AlphabetMismatch("losses are defined on a binary alphabet");
  Rational v = fn_(history, outcome, action);
  if (!stationary_) check_range(v, name_);
  return v;
}

LossFunction LossFunction::shifted() const {
  auto base = fn_;
  auto name = name_ + "_shifted";
  return LossFunction(
      [base, name](SymbolSpan h, Symbol x, Symbol a) {
        Rational v = base(h, x, a) - base(h, x, x);
        check_range(v, name);
        return v;
      },
      stationary_, name);
}

LossFunction LossFunction::zero_one() {
  return LossFunction([](SymbolSpan, Symbol x, Symbol a) { return Rational(x == a ? 0 : 1); }, true, "zero_one");
}

LossFunction LossFunction::absolute() {
  return LossFunction([](SymbolSpan, Symbol x, Symbol a) { return Rational(x > a ? x - a : a - x); }, true,
                      "absolute");
}

LossFunction LossFunction::table(Rational l00, Rational l01, Rational l10, Rational l11) {
  std::array<Rational, 4> t{std::move(l00), std::move(l01), std::move(l10), std::move(l11)};
  std::string name = "table(" + to_string(t[0]) + "," + to_string(t[1]) + "," + to_string(t[2]) + "," +
                     to_string(t[3]) + ")";
  return LossFunction([t](SymbolSpan, Symbol x, Symbol a) { return t[2 * x + a]; }, true, name);
}

LossFunction LossFunction::history_parity() {
  return LossFunction(
      [](SymbolSpan h, Symbol x, Symbol a) {
        std::size_t ones = std::count(h.begin(), h.end(), Symbol{1});
        if (ones % 2 == 0) return Rational(x == a ? 0 : 1);
        static const Rational odd[4] = {Rational(0), Rational(1), Rational(1, 2), Rational(0)};
        return odd[2 * x + a];
      },
      false, "history_parity");
}

Symbol bayes_optimal_action(const Value& phi, const LossFunction& loss, SymbolSpan history) {
  if (!phi.is_exact()) return bayes_optimal_action(phi.to_double(), loss, history);
  Rational p = phi.rational();
  if (p > 1) p = 1;
  Rational e0 = (1 - p) * loss(history, 0, 0) + p * loss(history, 1, 0);
  Rational e1 = (1 - p) * loss(history, 0, 1) + p * loss(history, 1, 1);
  return e1 < e0 ? 1 : 0;
}

Symbol bayes_optimal_action(double phi, const LossFunction& loss, SymbolSpan history) {
  phi = std::clamp(phi, 0.0, 1.0);
  double l00 = to_double(loss(history, 0, 0)), l10 = to_double(loss(history, 1, 0));
  double l01 = to_double(loss(history, 0, 1)), l11 = to_double(loss(history, 1, 1));
  double e0 = (1 - phi) * l00 + phi * l10;
  double e1 = (1 - phi) * l01 + phi * l11;
  return e1 < e0 ? 1 : 0;
}

double binary_hellinger(double mu, double phi) {
  double a = std::sqrt(mu) - std::sqrt(phi);
  double b = std::sqrt(1 - mu) - std::sqrt(1 - phi);
  return a * a + b * b;
}

SpecialFunctions special_functions(double mu, double phi) {
  SpecialFunctions s;
  s.delta = std::abs(phi - mu) / std::max(phi, 1 - phi);
  if (mu <= phi) {
    if (phi <= 0.5) {
      s.ell = mu;
      s.branch = 1;
    } else {
      s.ell = mu * (1 - phi) / phi;
      s.branch = 2;
    }
  } else if (phi >= 0.5) {
    s.ell = 1 - mu;
    s.branch = 3;
  } else {
    s.ell = (1 - mu) * phi / (1 - phi);
    s.branch = 4;
  }
  return s;
}

std::vector<std::pair<int, Rational>> special_ell_branches(const Rational& mu, const Rational& phi) {
  const Rational half(1, 2);
  std::vector<std::pair<int, Rational>> out;
  if (mu <= phi && phi <= half) out.emplace_back(1, mu);
  if (mu <= phi && phi >= half) out.emplace_back(2, Rational(mu * (1 - phi) / phi));
  if (half <= phi && phi <= mu) out.emplace_back(3, Rational(1 - mu));
  if (phi <= mu && phi <= half && phi < 1) out.emplace_back(4, Rational((1 - mu) * phi / (1 - phi)));
  return out;
}

SpecialFunctionsExact special_functions(const Rational& mu, const Rational& phi) {
  SpecialFunctionsExact s;
  Rational denom = std::max(phi, Rational(1 - phi));
  s.delta = abs(Rational(phi - mu)) / denom;
  auto branches = special_ell_branches(mu, phi);
  s.branch = branches.front().first;
  s.ell = branches.front().second;
  return s;
}

ScanResult unit_square_scan(std::size_t m, std::size_t threads) {
  if (m < 2) throw ConfigError("grid resolution must be >= 2");
  std::vector<ScanResult> rows(m);
  const double step = 1.0 / static_cast<double>(m - 1);
  parallel_for(m, threads, [&](std::size_t i) {
    ScanResult r;
    const double mu = i == m - 1 ? 1.0 : static_cast<double>(i) * step;
    for (std::size_t j = 0; j < m; ++j) {
      const double phi = j == m - 1 ? 1.0 : static_cast<double>(j) * step;
      auto s = special_functions(mu, phi);
      const double h = binary_hellinger(mu, phi);
      const double v = s.delta - 2 * h - 2 * std::sqrt(2 * h * s.ell);
      if (v > r.max_violation) {
        r.max_violation = v;
        r.at_mu = mu;
        r.at_phi = phi;
      }
      ++r.points;
    }
    rows[i] = r;
  });
  ScanResult out;
  for (const auto& r : rows) {
    out.points += r.points;
    if (r.max_violation > out.max_violation) {
      out.max_violation = r.max_violation;
      out.at_mu = r.at_mu;
      out.at_phi = r.at_phi;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct NodeLosses {
  Value l_phi, l_mu;
  double h = 0;
};

NodeLosses node_losses(const std::vector<Value>& mu, const Value& belief, const LossFunction& loss,
                       SymbolSpan history) {
  const Mode mode = mu.front().mode();
  Symbol a_phi = bayes_optimal_action(belief, loss, history);
  Symbol a_mu = bayes_optimal_action(mu[1], loss, history);
  NodeLosses out{Value::zero(mode), Value::zero(mode), 0.0};
  for (Symbol x = 0; x < 2; ++x) {
    out.l_phi = out.l_phi + mu[x] * Value::of(loss(history, x, a_phi), mode);
    out.l_mu = out.l_mu + mu[x] * Value::of(loss(history, x, a_mu), mode);
  }
  out.h = binary_hellinger(mu[1].to_double(), std::min(1.0, belief.to_double()));
  return out;
}

struct TraceAcc {
  std::vector<Value> l_phi, l_mu;
  std::vector<double> h;
  std::uint64_t nodes = 0, violations = 0, mu_better = 0;
  double max_excess = -std::numeric_limits<double>::infinity();
};

void merge_trace(TraceAcc& into, const TraceAcc& part) {
  for (std::size_t t = 0; t < into.l_phi.size(); ++t) {
    into.l_phi[t] = into.l_phi[t] + part.l_phi[t];
    into.l_mu[t] = into.l_mu[t] + part.l_mu[t];
    into.h[t] += part.h[t];
  }
  into.nodes += part.nodes;
  into.violations += part.violations;
  into.mu_better += part.mu_better;
  into.max_excess = std::max(into.max_excess, part.max_excess);
}

Quantity quantity_of(const Value& v) {
  Quantity q;
  q.value = v.to_double();
  if (v.is_exact()) q.exact = v.rational();
  q.std_error = 0;
  return q;
}

void finish_trace(DecisionTrace& tr, const TraceAcc& acc) {
  const std::size_t n = tr.horizon;
  Value sum_phi = acc.l_phi.empty() ? Value() : Value::zero(acc.l_phi.front().mode());
  Value sum_mu = sum_phi;
  double sum_h = 0;
  for (std::size_t t = 0; t < n; ++t) {
    tr.loss_phi.push_back(quantity_of(acc.l_phi[t]));
    tr.loss_mu.push_back(quantity_of(acc.l_mu[t]));
    tr.hellinger.push_back(Quantity{acc.h[t], std::nullopt, 0.0});
    sum_phi = sum_phi + acc.l_phi[t];
    sum_mu = sum_mu + acc.l_mu[t];
    sum_h += acc.h[t];
  }
  tr.cumulative_phi = quantity_of(sum_phi);
  tr.cumulative_mu = quantity_of(sum_mu);
  tr.cumulative_hellinger = Quantity{sum_h, std::nullopt, 0.0};
  tr.regret.value = tr.cumulative_phi.value - tr.cumulative_mu.value;
  if (tr.cumulative_phi.exact && tr.cumulative_mu.exact) {
    tr.regret.exact = *tr.cumulative_phi.exact - *tr.cumulative_mu.exact;
    tr.regret.value = to_double(*tr.regret.exact);
  }
  tr.regret.std_error = 0;
  tr.nodes_checked = acc.nodes;
  tr.instantaneous_violations = acc.violations;
  tr.max_instantaneous_excess = acc.max_excess;
  tr.mu_better_violations = acc.mu_better;
}

void record_node(TraceAcc& a, std::size_t t, const Value& weight, const NodeLosses& nl) {
  a.l_phi[t] = a.l_phi[t] + weight * nl.l_phi;
  a.l_mu[t] = a.l_mu[t] + weight * nl.l_mu;
  a.h[t] += weight.to_double() * nl.h;
  ++a.nodes;
  const double lp = nl.l_phi.to_double(), lm = nl.l_mu.to_double();
  const double excess = (lp - lm) - (2 * nl.h + 2 * std::sqrt(2 * nl.h * lm));
  a.max_excess = std::max(a.max_excess, excess);
  if (excess > kRegretTolerance) ++a.violations;
  if (nl.l_phi < nl.l_mu) ++a.mu_better;
}

}  // namespace

DecisionTrace decision_trace(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                             std::size_t horizon, Mode mode, const TieBreak& tb, const WalkOptions& opt) {
  check_binary(c);
  const std::size_t truth = c.require_true_index();
  TraceAcc init{std::vector<Value>(horizon, Value::zero(mode)), std::vector<Value>(horizon, Value::zero(mode)),
                std::vector<double>(horizon, 0.0)};
  auto acc = walk_accumulate(
      c, horizon, mode, opt, init,
      [&](TraceAcc& a, const WalkNode& node) {
        auto preds = predict_all(c, node.frontier, tb);
        std::vector<Value> mu;
        for (const auto& row : node.frontier.next) mu.push_back(row[truth] / node.frontier.mass[truth]);
        auto nl = node_losses(mu, preds.at(predictor)[1], loss, node.x);
        record_node(a, node.x.size(), node.mu_mass, nl);
      },
      merge_trace);
  DecisionTrace tr;
  tr.predictor = to_string(predictor);
  tr.horizon = horizon;
  finish_trace(tr, acc);
  return tr;
}

DecisionTrace decision_trace_mc(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                                std::size_t horizon, const MonteCarloOptions& opt, const TieBreak& tb) {
  check_binary(c);
  const std::size_t truth = c.require_true_index();
  if (!c.model(truth).is_proper_measure()) throw NotAMeasure("Monte Carlo needs a samplable true measure");
  const Mode mode = Mode::log_float;
  std::vector<TraceAcc> parts(opt.samples);
  parallel_for(opt.samples, opt.threads, [&](std::size_t j) {
    TraceAcc a{std::vector<Value>(horizon, Value::zero(mode)), std::vector<Value>(horizon, Value::zero(mode)),
               std::vector<double>(horizon, 0.0)};
    Rng rng(derive_seed(opt.seed, j));
    PathState path(c, opt.mode);
    const Value unit = Value::one(mode);
    for (std::size_t t = 0; t < horizon; ++t) {
      auto preds = predict_all(c, path.frontier(), tb);
      std::vector<Value> mu;
      for (const auto& row : path.frontier().next) mu.push_back((row[truth] / path.frontier().mass[truth]).to_mode(mode));
      auto nl = node_losses(mu, preds.at(predictor)[1].to_mode(mode), loss, path.history());
      record_node(a, t, unit, nl);
      path.advance(draw_symbol(path.true_conditional(), rng.uniform()));
    }
    parts[j] = std::move(a);
  });
  TraceAcc total{std::vector<Value>(horizon, Value::zero(mode)), std::vector<Value>(horizon, Value::zero(mode)),
                 std::vector<double>(horizon, 0.0)};
  for (const auto& p : parts) merge_trace(total, p);
  const Value scale = Value(LogFloat::from_double(1.0 / static_cast<double>(std::max<std::size_t>(opt.samples, 1))));
  for (std::size_t t = 0; t < horizon; ++t) {
    total.l_phi[t] = total.l_phi[t] * scale;
    total.l_mu[t] = total.l_mu[t] * scale;
    total.h[t] /= static_cast<double>(std::max<std::size_t>(opt.samples, 1));
  }
  DecisionTrace tr;
  tr.predictor = to_string(predictor);
  tr.horizon = horizon;
  finish_trace(tr, total);
  return tr;
}

int regret_constant(PredictorKind predictor) {
  switch (predictor) {
    case PredictorKind::mu:
    case PredictorKind::rho_norm: return 2;
    case PredictorKind::rho: return 8;
    case PredictorKind::static_mdl: return 21;
    case PredictorKind::static_norm: return 32;
    default: throw ConfigError("no loss-bound constant for predictor " + to_string(predictor));
  }
}

BoundReport regret_report(const WeightedClass& c, const DecisionTrace& trace) {
  const int k = regret_constant(parse_predictor(trace.predictor));
  const double inv = to_double(Rational(1 / c.true_weight()));
  const double lmu = trace.cumulative_mu.value;
  const double bound = lmu + 2 * std::sqrt(2 * k * lmu * inv) + 2 * k * inv;
  return make_report(trace.predictor, "loss", "L^mu + 2 sqrt(2c L^mu w^-1) + 2c w^-1", bound, std::nullopt,
                     trace.cumulative_phi);
}

BoundReport cumulative_regret_report(const DecisionTrace& trace) {
  const double H = trace.cumulative_hellinger.value;
  const double bound = 2 * H + 2 * std::sqrt(2 * H * trace.cumulative_mu.value);
  auto r = make_report(trace.predictor, "regret", "2H + 2 sqrt(2 H L^mu)", bound + kRegretTolerance, std::nullopt,
                       trace.regret);
  r.bound = bound;
  return r;
}

BoundReport check_regret_bound(const WeightedClass& c, PredictorKind predictor, const LossFunction& loss,
                               std::size_t horizon, Mode mode, const TieBreak& tb) {
  return regret_report(c, decision_trace(c, predictor, loss, horizon, mode, tb));
}

}  // namespace mdl
