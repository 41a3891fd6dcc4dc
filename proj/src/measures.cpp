#include "mdl/measures.hpp"

#include <algorithm>
#include <sstream>

#include "mdl/errors.hpp"
#include "mdl/random.hpp"

namespace mdl {

namespace {

void check_symbols(const Semimeasure& model, SymbolSpan x) {
  for (Symbol s : x) {
    if (s >= model.alphabet_size()) {
      throw AlphabetMismatch("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(model.alphabet_size()));
    }
  }
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out;
}

void validate_distribution(const std::vector<Rational>& p, const char* what) {
  Rational total(0);
  for (const auto& q : p) {
    if (sgn(q) < 0) throw Error(std::string(what) + ": negative probability");
    total += q;
  }
  if (total != 1) throw Error(std::string(what) + ": probabilities sum to " + to_string(total));
}

}  // namespace

Value evaluate(const Semimeasure& model, SymbolSpan x, Mode mode) {
  check_symbols(model, x);
  auto cursor = model.start();
  Value v = Value::of(model.empty_mass(), mode);
  for (Symbol s : x) {
    if (v.is_zero()) return v;
    v = v * Value::of(cursor->conditional(s), mode);
    cursor->advance(s);
  }
  return v;
}

Value conditional(const Semimeasure& model, Symbol a, SymbolSpan x, Mode mode) {
  check_symbols(model, x);
  if (a >= model.alphabet_size()) throw AlphabetMismatch("conditional symbol outside alphabet");
  auto cursor = model.start();
  for (Symbol s : x) {
    if (sgn(cursor->conditional(s)) == 0) return Value::zero(mode);
    cursor->advance(s);
  }
  return Value::of(cursor->conditional(a), mode);
}

SemimeasureReport check_semimeasure(const Semimeasure& model, std::size_t depth) {
  SemimeasureReport report;
  const std::size_t k = model.alphabet_size();
  Rational root = model.empty_mass();
  if (root > 1 || (model.is_proper_measure() && root != 1)) {
    report.passed = false;
    report.witness = Sequence{};
    report.message = "nu(epsilon) = " + to_string(root);
    return report;
  }
  if (root != 1) report.all_equalities = false;

  struct Frame {
    Sequence x;
    Rational mass;
    std::unique_ptr<Cursor> cursor;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{Sequence{}, root, model.start()});
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (frame.x.size() >= depth) continue;
    ++report.nodes_checked;
    Rational children(0);
    std::vector<Rational> child_mass(k);
    for (Symbol a = 0; a < k; ++a) {
      child_mass[a] = frame.mass * frame.cursor->conditional(a);
      children += child_mass[a];
    }
    if (children > frame.mass) {
      report.passed = false;
      report.witness = frame.x;
      report.message = "sum of children exceeds parent";
      return report;
    }
    if (children != frame.mass) {
      report.all_equalities = false;
      if (model.is_proper_measure()) {
        report.passed = false;
        report.witness = frame.x;
        report.message = "measure loses mass";
        return report;
      }
    } else if (sgn(frame.mass) > 0) {
      report.all_strict = false;
    }
    for (Symbol a = k; a-- > 0;) {
      auto child = frame.cursor->clone();
      child->advance(a);
      stack.push_back(Frame{extended(frame.x, a), child_mass[a], std::move(child)});
    }
  }
  return report;
}

Symbol draw_symbol(const std::vector<Rational>& probabilities, double u) {
  double cumulative = 0.0;
  std::optional<Symbol> last_positive;
  for (std::size_t a = 0; a < probabilities.size(); ++a) {
    if (sgn(probabilities[a]) == 0) continue;
    last_positive = static_cast<Symbol>(a);
    cumulative += to_double(probabilities[a]);
    if (u < cumulative) return static_cast<Symbol>(a);
  }
  if (!last_positive) throw ZeroProbability("all continuations have probability zero");
  return *last_positive;
}

Sequence sample_sequence(const Semimeasure& model, std::size_t n, std::uint64_t seed) {
  if (!model.is_proper_measure()) throw NotAMeasure("cannot sample from a strict semimeasure: " + model.name());
  Rng rng(seed);
  auto cursor = model.start();
  Sequence x;
  x.reserve(n);
  std::vector<Rational> p(model.alphabet_size());
  for (std::size_t t = 0; t < n; ++t) {
    for (Symbol a = 0; a < p.size(); ++a) p[a] = cursor->conditional(a);
    Symbol s = draw_symbol(p, rng.uniform());
    cursor->advance(s);
    x.push_back(s);
  }
  return x;
}

// ---------------------------------------------------------------------------

namespace {

class IidCursor final : public Cursor {
 public:
  explicit IidCursor(const IidModel* model) : model_(model) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<IidCursor>(*this); }
  Rational conditional(Symbol a) const override { return model_->theta()[a]; }
  void advance(Symbol) override {}

 private:
  const IidModel* model_;
};

}  // namespace

IidModel::IidModel(std::vector<Rational> theta) : theta_(std::move(theta)) {
  if (theta_.size() < 2) throw Error("i.i.d. model needs an alphabet of size >= 2");
  validate_distribution(theta_, "IidModel");
}

std::unique_ptr<Cursor> IidModel::start() const { return std::make_unique<IidCursor>(this); }

std::string IidModel::name() const { return "iid(" + join_rationals(theta_) + ")"; }

std::optional<Rational> IidModel::stochasticity_floor() const {
  std::optional<Rational> floor;
  for (const auto& q : theta_) {
    if (sgn(q) > 0 && (!floor || q < *floor)) floor = q;
  }
  return floor;
}

ModelPtr bernoulli(const Rational& p_one) {
  return std::make_shared<IidModel>(std::vector<Rational>{Rational(1 - p_one), p_one});
}

ModelPtr uniform_measure(std::size_t alphabet_size) {
  return std::make_shared<IidModel>(
      std::vector<Rational>(alphabet_size, Rational(1, static_cast<unsigned long>(alphabet_size))));
}

// ---------------------------------------------------------------------------

namespace {

class DeterministicCursor final : public Cursor {
 public:
  explicit DeterministicCursor(const DeterministicModel* model) : model_(model) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<DeterministicCursor>(*this); }
  Rational conditional(Symbol a) const override {
    return Rational(matching_ && model_->target(position_) == a ? 1 : 0);
  }
  void advance(Symbol a) override {
    matching_ = matching_ && model_->target(position_) == a;
    ++position_;
  }

 private:
  const DeterministicModel* model_;
  std::size_t position_ = 0;
  bool matching_ = true;
};

}  // namespace

DeterministicModel::DeterministicModel(Sequence preperiod, Sequence period, std::size_t alphabet_size)
    : preperiod_(std::move(preperiod)), period_(std::move(period)), alphabet_size_(alphabet_size) {
  if (period_.empty()) throw Error("deterministic model needs a nonempty period");
  for (Symbol s : preperiod_) {
    if (s >= alphabet_size_) throw AlphabetMismatch("deterministic target outside alphabet");
  }
  for (Symbol s : period_) {
    if (s >= alphabet_size_) throw AlphabetMismatch("deterministic target outside alphabet");
  }
}

Symbol DeterministicModel::target(std::size_t position) const {
  if (position < preperiod_.size()) return preperiod_[position];
  return period_[(position - preperiod_.size()) % period_.size()];
}

std::unique_ptr<Cursor> DeterministicModel::start() const { return std::make_unique<DeterministicCursor>(this); }

std::string DeterministicModel::name() const {
  return "det(" + format_sequence(preperiod_) + "(" + format_sequence(period_) + ")^inf)";
}

std::optional<std::vector<Rational>> DeterministicModel::step_distribution(std::size_t i) const {
  std::vector<Rational> p(alphabet_size_, Rational(0));
  p[target(i - 1)] = 1;
  return p;
}

// ---------------------------------------------------------------------------

namespace {

class FactorizableCursor final : public Cursor {
 public:
  explicit FactorizableCursor(const FactorizableModel* model) : model_(model), step_(model->rule()(1)) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<FactorizableCursor>(*this); }
  Rational conditional(Symbol a) const override { return step_[a]; }
  void advance(Symbol) override {
    ++position_;
    step_ = model_->rule()(position_ + 1);
  }

 private:
  const FactorizableModel* model_;
  std::size_t position_ = 0;
  std::vector<Rational> step_;
};

}  // namespace

FactorizableModel::FactorizableModel(std::size_t alphabet_size, Rule rule, std::string name,
                                     std::optional<Rational> floor)
    : alphabet_size_(alphabet_size), rule_(std::move(rule)), name_(std::move(name)), floor_(std::move(floor)) {
  auto first = rule_(1);
  if (first.size() != alphabet_size_) throw AlphabetMismatch("factorizable rule has wrong arity");
  validate_distribution(first, "FactorizableModel");
}

std::shared_ptr<FactorizableModel> FactorizableModel::periodic(std::vector<std::vector<Rational>> steps,
                                                               std::string name) {
  if (steps.empty()) throw Error("periodic factorizable model needs at least one step");
  std::optional<Rational> floor;
  for (const auto& s : steps) {
    validate_distribution(s, "FactorizableModel::periodic");
    if (s.size() != steps.front().size()) throw AlphabetMismatch("inconsistent step arity");
    for (const auto& q : s) {
      if (sgn(q) > 0 && (!floor || q < *floor)) floor = q;
    }
  }
  if (name.empty()) {
    name = "fact[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (i) name += ";";
      name += join_rationals(steps[i]);
    }
    name += "]";
  }
  std::size_t k = steps.front().size();
  auto shared = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(steps));
  return std::make_shared<FactorizableModel>(
      k, [shared](std::size_t i) { return (*shared)[(i - 1) % shared->size()]; }, std::move(name), floor);
}

std::unique_ptr<Cursor> FactorizableModel::start() const { return std::make_unique<FactorizableCursor>(this); }

// ---------------------------------------------------------------------------

OscillatingMartingaleMeasure::Node OscillatingMartingaleMeasure::child(const Node& parent, std::size_t length,
                                                                       Symbol a) {
  // parent has length `length`; children have length m = length + 1.
  if (parent.dead) return parent;
  const std::int64_t m = static_cast<std::int64_t>(length) + 1;
  const Rational three_quarters(3, 4);
  const Rational offset = pow2(-m - 2);
  Node out;
  if (parent.f > three_quarters) {
    Rational low = three_quarters - offset;
    out.f = a == 0 ? low : Rational(2 * parent.f - low);
  } else {
    Rational high = three_quarters + offset;
    out.f = a == 1 ? high : Rational(2 * parent.f - high);
  }
  // The child is dead when it cannot be split again at length m + 1.
  out.dead = out.f < Rational(3, 8) + pow2(-(m + 1) - 3);
  return out;
}

namespace {

class MartingaleCursor final : public Cursor {
 public:
  MartingaleCursor() : node_(OscillatingMartingaleMeasure::root()) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<MartingaleCursor>(*this); }
  Rational conditional(Symbol a) const override {
    if (sgn(node_.f) == 0) return Rational(0);
    auto c = OscillatingMartingaleMeasure::child(node_, length_, a);
    return c.f / (2 * node_.f);
  }
  void advance(Symbol a) override {
    node_ = OscillatingMartingaleMeasure::child(node_, length_, a);
    ++length_;
  }

 private:
  OscillatingMartingaleMeasure::Node node_;
  std::size_t length_ = 0;
};

constexpr std::size_t kMartingaleCacheDepth = 24;
constexpr std::size_t kMartingaleCacheCap = 1 << 18;

}  // namespace

OscillatingMartingaleMeasure::Node OscillatingMartingaleMeasure::node(SymbolSpan x) const {
  for (Symbol s : x) {
    if (s > 1) throw AlphabetMismatch("martingale measure is binary");
  }
  std::lock_guard lock(cache_mutex_);
  // Walk down from the longest cached prefix.
  std::size_t known = 0;
  Node current = root();
  for (std::size_t len = std::min(x.size(), kMartingaleCacheDepth); len > 0; --len) {
    auto it = cache_.find(Sequence(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len)));
    if (it != cache_.end()) {
      known = len;
      current = it->second;
      break;
    }
  }
  for (std::size_t i = known; i < x.size(); ++i) {
    current = child(current, i, x[i]);
    if (i + 1 <= kMartingaleCacheDepth && cache_.size() < kMartingaleCacheCap) {
      cache_.emplace(Sequence(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i + 1)), current);
    }
  }
  return current;
}

Rational OscillatingMartingaleMeasure::f_value(SymbolSpan x) const { return node(x).f; }

bool OscillatingMartingaleMeasure::is_dead(SymbolSpan x) const { return node(x).dead; }

std::unique_ptr<Cursor> OscillatingMartingaleMeasure::start() const { return std::make_unique<MartingaleCursor>(); }

// ---------------------------------------------------------------------------

namespace {

class LeakyCursor final : public Cursor {
 public:
  LeakyCursor(std::unique_ptr<Cursor> base, const Rational* keep) : base_(std::move(base)), keep_(keep) {}
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<LeakyCursor>(base_->clone(), keep_); }
  Rational conditional(Symbol a) const override { return *keep_ * base_->conditional(a); }
  void advance(Symbol a) override { base_->advance(a); }

 private:
  std::unique_ptr<Cursor> base_;
  const Rational* keep_;
};

}  // namespace

LeakySemimeasure::LeakySemimeasure(ModelPtr base, Rational gamma)
    : base_(std::move(base)), keep_(1 - gamma), gamma_(std::move(gamma)) {
  if (!(sgn(gamma_) > 0 && gamma_ < 1)) throw Error("leak must lie in (0,1)");
}

std::unique_ptr<Cursor> LeakySemimeasure::start() const { return std::make_unique<LeakyCursor>(base_->start(), &keep_); }

std::string LeakySemimeasure::name() const { return "leaky(" + base_->name() + "," + to_string(gamma_) + ")"; }

// ---------------------------------------------------------------------------

namespace {

std::int64_t ceil_half(std::int64_t i) { return (i + 1) / 2; }

}  // namespace

ModelPair make_example4_pair() {
  auto mu = std::make_shared<FactorizableModel>(
      2,
      [](std::size_t i) {
        Rational p1 = 1 - pow2(-2 * ceil_half(static_cast<std::int64_t>(i)));
        return std::vector<Rational>{Rational(1 - p1), p1};
      },
      "example4_mu");
  auto nu = std::make_shared<FactorizableModel>(
      2,
      [](std::size_t i) {
        Rational p1 = 1 - pow2(-2 * ceil_half(static_cast<std::int64_t>(i) + 1) + 1);
        return std::vector<Rational>{Rational(1 - p1), p1};
      },
      "example4_nu");
  return {mu, nu};
}

Example3Models example3_pair() {
  Example3Models out;
  out.lambda = uniform_measure(2);
  out.nu = std::make_shared<FactorizableModel>(
      2,
      [](std::size_t i) {
        if (i == 1) return std::vector<Rational>{Rational(0), Rational(1)};
        return std::vector<Rational>{Rational(1, 2), Rational(1, 2)};
      },
      "example3_nu", Rational(1, 2));
  return out;
}

}  // namespace mdl
