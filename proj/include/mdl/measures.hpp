#pragma once

// Semimeasures over finite alphabets and the concrete model families used
// by the experiments, including the adversarial constructions.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdl/numeric.hpp"
#include "mdl/sequence.hpp"

namespace mdl {

// Incremental evaluation along one path x; clone() forks the path.
class Cursor {
 public:
  virtual ~Cursor() = default;
  virtual std::unique_ptr<Cursor> clone() const = 0;
  // nu(a | x) = nu(xa) / nu(x), and 0 when nu(x) = 0.
  virtual Rational conditional(Symbol a) const = 0;
  virtual void advance(Symbol a) = 0;
};

class Semimeasure {
 public:
  virtual ~Semimeasure() = default;

  virtual std::size_t alphabet_size() const = 0;
  virtual bool is_proper_measure() const = 0;
  virtual std::unique_ptr<Cursor> start() const = 0;
  virtual std::string name() const = 0;

  // nu(epsilon).
  virtual Rational empty_mass() const { return Rational(1); }

  // Factorizable models expose the per-step distribution mu_i, i >= 1.
  virtual bool is_factorizable() const { return false; }
  virtual std::optional<std::vector<Rational>> step_distribution(std::size_t /*i*/) const { return std::nullopt; }
  // A delta with mu_i(a) > 0 => mu_i(a) >= delta for all i, when one exists.
  virtual std::optional<Rational> stochasticity_floor() const { return std::nullopt; }
};

using ModelPtr = std::shared_ptr<const Semimeasure>;

Value evaluate(const Semimeasure& model, SymbolSpan x, Mode mode = Mode::exact);
Value conditional(const Semimeasure& model, Symbol a, SymbolSpan x, Mode mode = Mode::exact);

struct SemimeasureReport {
  bool passed = true;
  bool all_equalities = true;  // sum_a nu(xa) == nu(x) at every checked node
  bool all_strict = true;      // sum_a nu(xa) <  nu(x) wherever nu(x) > 0
  std::size_t nodes_checked = 0;
  std::optional<Sequence> witness;
  std::string message;
};

// Exhaustive Exact-mode check of nu(eps) <= 1 and sum_a nu(xa) <= nu(x) for
// all l(x) < depth, with equality required for proper measures.
SemimeasureReport check_semimeasure(const Semimeasure& model, std::size_t depth);

// x_{1:n} drawn from a proper measure; throws NotAMeasure otherwise.
Sequence sample_sequence(const Semimeasure& model, std::size_t n, std::uint64_t seed);

// Draws one symbol from an exact conditional distribution given u in [0,1).
Symbol draw_symbol(const std::vector<Rational>& probabilities, double u);

class IidModel final : public Semimeasure {
 public:
  explicit IidModel(std::vector<Rational> theta);

  const std::vector<Rational>& theta() const { return theta_; }

  std::size_t alphabet_size() const override { return theta_.size(); }
  bool is_proper_measure() const override { return true; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override;
  bool is_factorizable() const override { return true; }
  std::optional<std::vector<Rational>> step_distribution(std::size_t) const override { return theta_; }
  std::optional<Rational> stochasticity_floor() const override;

 private:
  std::vector<Rational> theta_;
};

ModelPtr bernoulli(const Rational& p_one);
ModelPtr uniform_measure(std::size_t alphabet_size = 2);

// Point mass on the eventually periodic sequence preperiod . period^inf.
class DeterministicModel final : public Semimeasure {
 public:
  DeterministicModel(Sequence preperiod, Sequence period, std::size_t alphabet_size = 2);

  Symbol target(std::size_t position) const;

  std::size_t alphabet_size() const override { return alphabet_size_; }
  bool is_proper_measure() const override { return true; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override;
  bool is_factorizable() const override { return true; }
  std::optional<std::vector<Rational>> step_distribution(std::size_t i) const override;
  std::optional<Rational> stochasticity_floor() const override { return Rational(1); }

 private:
  Sequence preperiod_;
  Sequence period_;
  std::size_t alphabet_size_;
};

// nu(x) = prod_i mu_i(x_i) with mu_i produced by a rule (closed form or a
// cycled explicit list).
class FactorizableModel final : public Semimeasure {
 public:
  using Rule = std::function<std::vector<Rational>(std::size_t)>;

  FactorizableModel(std::size_t alphabet_size, Rule rule, std::string name,
                    std::optional<Rational> floor = std::nullopt);
  static std::shared_ptr<FactorizableModel> periodic(std::vector<std::vector<Rational>> steps, std::string name = "");

  std::size_t alphabet_size() const override { return alphabet_size_; }
  bool is_proper_measure() const override { return true; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override { return name_; }
  bool is_factorizable() const override { return true; }
  std::optional<std::vector<Rational>> step_distribution(std::size_t i) const override { return rule_(i); }
  std::optional<Rational> stochasticity_floor() const override { return floor_; }

  const Rule& rule() const { return rule_; }

 private:
  std::size_t alphabet_size_;
  Rule rule_;
  std::string name_;
  std::optional<Rational> floor_;
};

// Binary measure nu(x) = f(x) 2^{-l(x)} driven by a positive martingale f that
// oscillates around 3/4 on strings that stay alive.
class OscillatingMartingaleMeasure final : public Semimeasure {
 public:
  struct Node {
    Rational f;
    bool dead = false;
  };

  // Children of a node at length `length`.
  static Node child(const Node& parent, std::size_t length, Symbol a);
  static Node root() { return Node{Rational(1), false}; }

  Rational f_value(SymbolSpan x) const;
  bool is_dead(SymbolSpan x) const;

  std::size_t alphabet_size() const override { return 2; }
  bool is_proper_measure() const override { return true; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override { return "martingale"; }

 private:
  Node node(SymbolSpan x) const;

  mutable std::mutex cache_mutex_;
  mutable std::map<Sequence, Node> cache_;
};

// Strict semimeasure: sum_a nu(xa) = (1 - gamma) nu(x).
class LeakySemimeasure final : public Semimeasure {
 public:
  LeakySemimeasure(ModelPtr base, Rational gamma);

  std::size_t alphabet_size() const override { return base_->alphabet_size(); }
  bool is_proper_measure() const override { return false; }
  std::unique_ptr<Cursor> start() const override;
  std::string name() const override;

 private:
  ModelPtr base_;
  Rational keep_;
  Rational gamma_;
};

struct ModelPair {
  ModelPtr first;
  ModelPtr second;
};

// Factorizable mu, nu with mu_i(1) = 1 - 2^{-2 ceil(i/2)} and
// nu_i(1) = 1 - 2^{-2 ceil((i+1)/2) + 1}.
ModelPair make_example4_pair();

struct Example3Models {
  ModelPtr lambda;  // uniform
  ModelPtr nu;      // nu(1y) = 2^{-l(y)}, nu(0y) = 0
  Rational w_lambda = Rational(2, 3);
  Rational w_nu = Rational(1, 3);
};
Example3Models example3_pair();

}  // namespace mdl
