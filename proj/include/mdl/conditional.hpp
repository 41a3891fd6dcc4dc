#pragma once

// Input-conditioned models: finite-outcome classification and bounded
// densities on the real line for regression.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mdl/metrics.hpp"
#include "mdl/random.hpp"

namespace mdl {

// nu(x | u) on a finite outcome alphabet for inputs u in {0, .., inputs-1}.
class ConditionalModel {
 public:
  virtual ~ConditionalModel() = default;
  virtual std::size_t outcome_count() const = 0;
  virtual std::size_t input_count() const = 0;
  virtual Rational probability(Symbol x, std::size_t u) const = 0;
  virtual std::string name() const = 0;
};

using ConditionalPtr = std::shared_ptr<const ConditionalModel>;

// Binary outcome equal to the binary input with probability p.
class LabelNoiseModel final : public ConditionalModel {
 public:
  explicit LabelNoiseModel(Rational p);
  std::size_t outcome_count() const override { return 2; }
  std::size_t input_count() const override { return 2; }
  Rational probability(Symbol x, std::size_t u) const override;
  std::string name() const override { return "label_noise(" + to_string(p_) + ")"; }

 private:
  Rational p_;
};

// Ignores the input.
class InputFreeModel final : public ConditionalModel {
 public:
  InputFreeModel(std::vector<Rational> theta, std::size_t inputs);
  std::size_t outcome_count() const override { return theta_.size(); }
  std::size_t input_count() const override { return inputs_; }
  Rational probability(Symbol x, std::size_t) const override { return theta_.at(x); }
  std::string name() const override;

 private:
  std::vector<Rational> theta_;
  std::size_t inputs_;
};

// The sequence measure nu(x_{1:n} | u_{1:n}) = prod_t nu(x_t | u_t) for a fixed
// input sequence, so classification reuses the sequence predictors.
class InputConditionedSemimeasure final : public Semimeasure {
 public:
  InputConditionedSemimeasure(ConditionalPtr model, std::vector<std::size_t> inputs);

  std::size_t alphabet_size() const override { return model_->outcome_count(); }
  bool is_proper_measure() const override { return true; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override { return model_->name() + "|u"; }

  // Past the end of the input sequence the last input is reused.
  std::size_t input_at(std::size_t position) const;
  const ConditionalModel& model() const { return *model_; }

 private:
  ConditionalPtr model_;
  std::vector<std::size_t> inputs_;
};

struct ConditionalClass {
  std::vector<ConditionalPtr> models;
  std::vector<Rational> weights;
  std::optional<std::size_t> true_index;

  WeightedClass with_inputs(const std::vector<std::size_t>& inputs) const;
};

// inputs u_{1:t}, outputs x_{<t}.
PredictiveDistribution classify(const ConditionalClass& c, PredictorKind kind, const std::vector<std::size_t>& inputs,
                                SymbolSpan outputs, const TieBreak& tb = {});
PredictiveDistribution classify_static(const ConditionalClass& c, const std::vector<std::size_t>& inputs,
                                       SymbolSpan outputs, const TieBreak& tb = {});
PredictiveDistribution classify_dynamic(const ConditionalClass& c, const std::vector<std::size_t>& inputs,
                                        SymbolSpan outputs, const TieBreak& tb = {});

// Densities nu(x | u) on the real line with a uniform bound C.
class BoundedDensityModel {
 public:
  virtual ~BoundedDensityModel() = default;
  virtual double density(double x, double u) const = 0;
  virtual double log_density(double x, double u) const;
  virtual double bound() const = 0;
  virtual std::string name() const = 0;
  virtual double sample(double u, Rng& rng) const = 0;
  // Intervals where the density at input u can be nonzero, with breakpoints.
  virtual std::vector<double> support_breaks(double u) const = 0;
};

using DensityPtr = std::shared_ptr<const BoundedDensityModel>;

inline constexpr double kSigmaMin = 1e-3;

// N(intercept + slope u, sigma^2).
class GaussianModel final : public BoundedDensityModel {
 public:
  GaussianModel(double intercept, double slope, double sigma);
  double mean(double u) const { return intercept_ + slope_ * u; }
  double sigma() const { return sigma_; }
  double density(double x, double u) const override;
  double log_density(double x, double u) const override;
  double bound() const override;
  std::string name() const override;
  double sample(double u, Rng& rng) const override;
  std::vector<double> support_breaks(double u) const override;

 private:
  double intercept_, slope_, sigma_;
};

// Piecewise-constant density: value[i] on [breaks[i], breaks[i+1]), shifted by u.
class PiecewiseConstantModel final : public BoundedDensityModel {
 public:
  PiecewiseConstantModel(std::vector<double> breaks, std::vector<double> values, std::string name);
  double density(double x, double u) const override;
  double bound() const override;
  std::string name() const override { return name_; }
  double sample(double u, Rng& rng) const override;
  std::vector<double> support_breaks(double u) const override;

 private:
  std::vector<double> breaks_, values_;
  std::string name_;
};

DensityPtr unit_box(double lo);

struct DensityClass {
  std::vector<DensityPtr> models;
  std::vector<Rational> weights;
  std::optional<std::size_t> true_index;
};

// argmax_nu w_nu prod_t nu(x_t | u_t) in the log domain; ties by largest weight then lowest index.
std::size_t regression_map(const DensityClass& c, const std::vector<double>& inputs, const std::vector<double>& xs);

struct QuadratureSpec {
  std::vector<double> breaks;  // integration nodes; pieces between consecutive breaks
  double tolerance = 1e-10;
  unsigned max_depth = 15;
};

// Adaptive Gauss-Kronrod over each piece; throws QuadratureError when the
// estimated error exceeds the tolerance.
double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec);

// Integral of (sqrt f - sqrt g)^2 by quadrature.
double hellinger_density(const std::function<double(double)>& f, const std::function<double(double)>& g,
                         const QuadratureSpec& spec);
double hellinger_density(const BoundedDensityModel& f, const BoundedDensityModel& g, double u,
                         const QuadratureSpec* spec = nullptr);
// Closed form 2 - 2 sqrt(2 s1 s2 / (s1^2 + s2^2)) exp(-(m1 - m2)^2 / (4 (s1^2 + s2^2))).
double gaussian_hellinger(double m1, double s1, double m2, double s2);

struct StepDensityResult {
  double square_distance = 0;
  double kl = 0;
};
StepDensityResult step_density_density_demo(unsigned n);

struct RegressionHellingerRun {
  double mean = 0;
  double std_error = 0;
  double bound = 0;  // 21 / w_mu
  bool pass = false;  // mean - 3 std_error <= bound
  std::size_t samples = 0;
};
// Static MDL Hellinger sum along mu-sampled data at inputs u_1..u_n.
RegressionHellingerRun regression_hellinger_mc(const DensityClass& c, const std::vector<double>& inputs,
                                               std::size_t samples, std::uint64_t seed, std::size_t threads = 1);

}  // namespace mdl
