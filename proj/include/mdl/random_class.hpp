#pragma once

// Seeded random binary classes and losses for the property suites.

#include <cstdint>

#include "mdl/decisions.hpp"
#include "mdl/model_class.hpp"
#include "mdl/random.hpp"

namespace mdl {

struct RandomClassOptions {
  std::size_t min_size = 2;
  std::size_t max_size = 6;
  std::int64_t max_denominator = 8;
  // probability that a non-true member is a leaky semimeasure
  double leaky_probability = 0.0;
  bool allow_deficient_weights = true;
};

// i.i.d., deterministic (eventually periodic) and periodic factorizable
// members with rational parameters; the true member is always a measure.
WeightedClass random_class(std::uint64_t seed, const RandomClassOptions& opt = {});

Rational random_rational(Rng& rng, std::int64_t max_denominator, bool allow_zero = true);

// Stationary loss table with rational entries in [0,1].
LossFunction random_loss(std::uint64_t seed, std::int64_t max_denominator = 8);

}  // namespace mdl
