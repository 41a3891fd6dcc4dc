#include "mdl/random_class.hpp"

#include <numeric>

namespace mdl {

Rational random_rational(Rng& rng, std::int64_t max_denominator, bool allow_zero) {
  const std::int64_t q = rng.uniform_int(1, max_denominator);
  const std::int64_t p = rng.uniform_int(allow_zero ? 0 : 1, q);
  Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
  r.canonicalize();
  return r;
}

namespace {

ModelPtr random_member(Rng& rng, const RandomClassOptions& opt) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
    case 1:
      return bernoulli(random_rational(rng, opt.max_denominator));
    case 2: {
      Sequence pre(static_cast<std::size_t>(rng.uniform_int(0, 3)));
      for (auto& s : pre) s = static_cast<Symbol>(rng.uniform_int(0, 1));
      Sequence period(static_cast<std::size_t>(rng.uniform_int(1, 3)));
      for (auto& s : period) s = static_cast<Symbol>(rng.uniform_int(0, 1));
      return std::make_shared<DeterministicModel>(pre, period);
    }
    default: {
      std::vector<std::vector<Rational>> steps(static_cast<std::size_t>(rng.uniform_int(2, 3)));
      for (auto& s : steps) {
        Rational p1 = random_rational(rng, opt.max_denominator);
        s = {1 - p1, p1};
      }
      return FactorizableModel::periodic(steps);
    }
  }
}

}  // namespace

WeightedClass random_class(std::uint64_t seed, const RandomClassOptions& opt) {
  Rng rng(derive_seed(seed, 0x5eed));
  const auto n = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(opt.min_size), static_cast<std::int64_t>(opt.max_size)));
  const auto truth = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
  std::vector<ModelPtr> models;
  for (std::size_t i = 0; i < n; ++i) {
    ModelPtr m = random_member(rng, opt);
    if (i != truth && opt.leaky_probability > 0 && rng.bernoulli(opt.leaky_probability)) {
      m = std::make_shared<LeakySemimeasure>(m, random_rational(rng, 4, false) / 2);
    }
    models.push_back(std::move(m));
  }
  std::vector<std::int64_t> raw(n);
  for (auto& r : raw) r = rng.uniform_int(1, 10);
  const std::int64_t total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
  Rational scale(1);
  if (opt.allow_deficient_weights && rng.bernoulli(0.5)) scale = Rational(rng.uniform_int(5, 9)) / 10;
  std::vector<Rational> weights;
  for (auto r : raw) {
    weights.push_back(Rational(Rational(static_cast<long>(r)) / static_cast<long>(total) * scale));
  }
  return WeightedClass(std::move(models), std::move(weights), truth);
}

LossFunction random_loss(std::uint64_t seed, std::int64_t max_denominator) {
  Rng rng(derive_seed(seed, 0x1055));
  Rational e[4];
  for (auto& v : e) v = random_rational(rng, max_denominator);
  return LossFunction::table(e[0], e[1], e[2], e[3]);
}

}  // namespace mdl
