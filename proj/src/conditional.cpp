#include "mdl/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mdl/errors.hpp"

namespace mdl {

LabelNoiseModel::LabelNoiseModel(Rational p) : p_(std::move(p)) {
  if (sgn(p_) < 0 || p_ > 1) throw ConfigError("label-noise probability outside [0,1]");
}

Rational LabelNoiseModel::probability(Symbol x, std::size_t u) const {
  if (x > 1 || u > 1) throw AlphabetMismatch("label-noise model is binary");
  return x == u ? p_ : Rational(1 - p_);
}

InputFreeModel::InputFreeModel(std::vector<Rational> theta, std::size_t inputs)
    : theta_(std::move(theta)), inputs_(inputs) {
  Rational total(0);
  for (const auto& q : theta_) {
    if (sgn(q) < 0) throw ConfigError("negative probability");
    total += q;
  }
  if (total != 1) throw ConfigError("input-free model probabilities must sum to 1");
}

std::string InputFreeModel::name() const {
  std::string s = "input_free(";
  for (std::size_t i = 0; i < theta_.size(); ++i) s += (i ? "," : "") + to_string(theta_[i]);
  return s + ")";
}

namespace {

class InputCursor final : public Cursor {
 public:
  explicit InputCursor(const InputConditionedSemimeasure* m) : m_(m) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<InputCursor>(*this); }
  Rational conditional(Symbol a) const override { return m_->model().probability(a, m_->input_at(position_)); }
  void advance(Symbol) override { ++position_; }

 private:
  const InputConditionedSemimeasure* m_;
  std::size_t position_ = 0;
};

}  // namespace

InputConditionedSemimeasure::InputConditionedSemimeasure(ConditionalPtr model, std::vector<std::size_t> inputs)
    : model_(std::move(model)), inputs_(std::move(inputs)) {
  if (inputs_.empty()) throw ConfigError("input sequence is empty");
  for (auto u : inputs_) {
    if (u >= model_->input_count()) throw ConfigError("input outside the model's input space");
  }
}

std::unique_ptr<Cursor> InputConditionedSemimeasure::start() const { return std::make_unique<InputCursor>(this); }

std::size_t InputConditionedSemimeasure::input_at(std::size_t position) const {
  return inputs_[std::min(position, inputs_.size() - 1)];
}

WeightedClass ConditionalClass::with_inputs(const std::vector<std::size_t>& inputs) const {
  std::vector<ModelPtr> adapted;
  for (const auto& m : models) adapted.push_back(std::make_shared<InputConditionedSemimeasure>(m, inputs));
  return WeightedClass(std::move(adapted), weights, true_index);
}

PredictiveDistribution classify(const ConditionalClass& c, PredictorKind kind, const std::vector<std::size_t>& inputs,
                                SymbolSpan outputs, const TieBreak& tb) {
  if (inputs.size() != outputs.size() + 1) throw ConfigError("need exactly one more input than outputs");
  auto adapted = c.with_inputs(inputs);
  return predict_all(adapted, frontier_at(adapted, outputs), tb).at(kind);
}

PredictiveDistribution classify_static(const ConditionalClass& c, const std::vector<std::size_t>& inputs,
                                       SymbolSpan outputs, const TieBreak& tb) {
  return classify(c, PredictorKind::static_mdl, inputs, outputs, tb);
}

PredictiveDistribution classify_dynamic(const ConditionalClass& c, const std::vector<std::size_t>& inputs,
                                        SymbolSpan outputs, const TieBreak& tb) {
  return classify(c, PredictorKind::rho, inputs, outputs, tb);
}

// ---------------------------------------------------------------------------

double BoundedDensityModel::log_density(double x, double u) const { return std::log(density(x, u)); }

GaussianModel::GaussianModel(double intercept, double slope, double sigma)
    : intercept_(intercept), slope_(slope), sigma_(sigma) {
  if (!(sigma_ >= kSigmaMin)) throw ConfigError("Gaussian sigma below the minimum 1e-3");
  QuadratureSpec q;
  q.breaks = support_breaks(0.0);
  q.tolerance = 1e-9;
  double mass = integrate([this](double x) { return density(x, 0.0); }, q);
  if (std::abs(mass - 1.0) > 1e-6) throw QuadratureError("Gaussian density does not integrate to 1");
}

double GaussianModel::density(double x, double u) const { return std::exp(log_density(x, u)); }

double GaussianModel::log_density(double x, double u) const {
  const double z = (x - mean(u)) / sigma_;
  return -0.5 * z * z - std::log(sigma_) - 0.5 * std::log(2 * std::numbers::pi);
}

double GaussianModel::bound() const { return 1.0 / (kSigmaMin * std::sqrt(2 * std::numbers::pi)); }

std::string GaussianModel::name() const {
  std::ostringstream s;
  s << "gauss(" << intercept_ << "+" << slope_ << "u," << sigma_ << ")";
  return s.str();
}

double GaussianModel::sample(double u, Rng& rng) const { return mean(u) + sigma_ * rng.normal(); }

std::vector<double> GaussianModel::support_breaks(double u) const {
  const double m = mean(u);
  std::vector<double> b;
  for (int k = -14; k <= 14; k += 2) b.push_back(m + k * sigma_);
  return b;
}

PiecewiseConstantModel::PiecewiseConstantModel(std::vector<double> breaks, std::vector<double> values,
                                               std::string name)
    : breaks_(std::move(breaks)), values_(std::move(values)), name_(std::move(name)) {
  if (breaks_.size() != values_.size() + 1) throw ConfigError("piecewise density needs one more break than values");
  double mass = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || !(breaks_[i + 1] > breaks_[i])) throw ConfigError("malformed piecewise density");
    mass += values_[i] * (breaks_[i + 1] - breaks_[i]);
  }
  if (std::abs(mass - 1.0) > 1e-9) throw ConfigError("piecewise density does not integrate to 1");
}

double PiecewiseConstantModel::density(double x, double u) const {
  x -= u;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (x >= breaks_[i] && x < breaks_[i + 1]) return values_[i];
  }
  return 0.0;
}

double PiecewiseConstantModel::bound() const { return *std::max_element(values_.begin(), values_.end()); }

double PiecewiseConstantModel::sample(double u, Rng& rng) const {
  double r = rng.uniform();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double mass = values_[i] * (breaks_[i + 1] - breaks_[i]);
    if (r < mass || i + 1 == values_.size()) {
      double frac = mass > 0 ? std::min(1.0, r / mass) : 0.0;
      return u + breaks_[i] + frac * (breaks_[i + 1] - breaks_[i]);
    }
    r -= mass;
  }
  return u + breaks_.back();
}

std::vector<double> PiecewiseConstantModel::support_breaks(double u) const {
  std::vector<double> b;
  for (double v : breaks_) b.push_back(v + u);
  return b;
}

DensityPtr unit_box(double lo) {
  return std::make_shared<PiecewiseConstantModel>(std::vector<double>{lo, lo + 1}, std::vector<double>{1.0},
                                                  "box[" + std::to_string(lo) + "]");
}

std::size_t regression_map(const DensityClass& c, const std::vector<double>& inputs, const std::vector<double>& xs) {
  if (c.models.empty() || c.models.size() != c.weights.size()) throw ConfigError("malformed density class");
  if (inputs.size() != xs.size()) throw ConfigError("inputs and data differ in length");
  std::vector<double> score(c.models.size());
  for (std::size_t i = 0; i < c.models.size(); ++i) {
    double s = log_of(c.weights[i]);
    for (std::size_t t = 0; t < xs.size(); ++t) s += c.models[i]->log_density(xs[t], inputs[t]);
    score[i] = s;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double s : score) best = std::max(best, s);
  if (best == -std::numeric_limits<double>::infinity()) throw DegenerateLikelihood("every joint density is zero");
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (std::abs(score[i] - best) <= kLogTieTolerance * std::max(1.0, std::abs(best))) {
      if (!pick || c.weights[i] > c.weights[*pick]) pick = i;
    }
  }
  return *pick;
}

double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  if (spec.breaks.size() < 2) throw QuadratureError("quadrature needs at least two nodes");
  double total = 0;
  for (std::size_t i = 0; i + 1 < spec.breaks.size(); ++i) {
    const double a = spec.breaks[i], b = spec.breaks[i + 1];
    if (!(b > a)) continue;
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, spec.max_depth,
                                                                           spec.tolerance, &err);
    if (!std::isfinite(v) || err > std::max(spec.tolerance * std::max(1.0, std::abs(v)), 1e-14) * 1e3) {
      throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    total += v;
  }
  return total;
}

double hellinger_density(const std::function<double(double)>& f, const std::function<double(double)>& g,
                         const QuadratureSpec& spec) {
  return integrate(
      [&](double x) {
        double d = std::sqrt(f(x)) - std::sqrt(g(x));
        return d * d;
      },
      spec);
}

double hellinger_density(const BoundedDensityModel& f, const BoundedDensityModel& g, double u,
                         const QuadratureSpec* spec) {
  QuadratureSpec q;
  if (spec) {
    q = *spec;
  } else {
    q.breaks = f.support_breaks(u);
    auto gb = g.support_breaks(u);
    q.breaks.insert(q.breaks.end(), gb.begin(), gb.end());
    std::sort(q.breaks.begin(), q.breaks.end());
    q.breaks.erase(std::unique(q.breaks.begin(), q.breaks.end()), q.breaks.end());
  }
  return hellinger_density([&](double x) { return f.density(x, u); }, [&](double x) { return g.density(x, u); }, q);
}

double gaussian_hellinger(double m1, double s1, double m2, double s2) {
  const double v = s1 * s1 + s2 * s2;
  const double bc = std::sqrt(2 * s1 * s2 / v) * std::exp(-(m1 - m2) * (m1 - m2) / (4 * v));
  return 2 - 2 * bc;
}

StepDensityResult step_density_density_demo(unsigned n) {
  if (n < 1) throw ConfigError("step density needs n >= 1");
  const double w = 1.0 / n;
  auto f = [n, w](double x) {
    if (x >= -w && x <= 0) return n / 3.0;
    if (x > 0 && x <= w) return 2.0 * n / 3.0;
    return 0.0;
  };
  auto g = [&f](double x) { return f(-x); };
  QuadratureSpec q;
  q.breaks = {-w, 0.0, w};
  q.tolerance = 1e-13;
  StepDensityResult r;
  r.square_distance = integrate(
      [&](double x) {
        double d = f(x) - g(x);
        return d * d;
      },
      q);
  r.kl = integrate(
      [&](double x) {
        double fx = f(x), gx = g(x);
        return fx > 0 ? fx * std::log(fx / gx) : 0.0;
      },
      q);
  return r;
}

RegressionHellingerRun regression_hellinger_mc(const DensityClass& c, const std::vector<double>& inputs,
                                               std::size_t samples, std::uint64_t seed, std::size_t threads) {
  if (!c.true_index) throw ConfigError("density class has no true model");
  const auto& mu = *c.models.at(*c.true_index);
  std::vector<double> totals(samples);
  parallel_for(samples, threads, [&](std::size_t j) {
    Rng rng(derive_seed(seed, j));
    std::vector<double> xs, us;
    double H = 0;
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      std::size_t star = regression_map(c, us, xs);
      const auto& nu = *c.models[star];
      const double u = inputs[t];
      auto* g1 = dynamic_cast<const GaussianModel*>(&mu);
      auto* g2 = dynamic_cast<const GaussianModel*>(&nu);
      H += g1 && g2 ? gaussian_hellinger(g1->mean(u), g1->sigma(), g2->mean(u), g2->sigma())
                    : hellinger_density(mu, nu, u);
      us.push_back(u);
      xs.push_back(mu.sample(u, rng));
    }
    totals[j] = H;
  });
  RegressionHellingerRun r;
  r.samples = samples;
  double sum = 0, sumsq = 0;
  for (double v : totals) {
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(samples);
  r.mean = samples ? sum / n : 0;
  r.std_error = samples > 1 ? std::sqrt(std::max(0.0, (sumsq - n * r.mean * r.mean) / (n - 1)) / n) : 0;
  r.bound = 21 * to_double(Rational(1 / c.weights.at(*c.true_index)));
  r.pass = r.mean - 3 * r.std_error <= r.bound;
  return r;
}

}  // namespace mdl
