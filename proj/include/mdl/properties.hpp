#pragma once

// Exhaustive inequality checks on random classes and random distribution pairs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdl {

struct PropertyCount {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<std::string> witness;
};

struct PropertySuite {
  std::vector<PropertyCount> checks;

  std::uint64_t violations() const;
  bool passed() const { return violations() == 0; }
  PropertyCount& entry(const std::string& name);
  void merge(const PropertySuite& other);
};

// Over all binary x with l(x) < depth, for `classes` random classes (half of
// them with leaky members):
//   xi - rho and xi - rho^x are semimeasures,
//   xi(x) >= rho(x) >= rho^y(x) for all x, y,
//   rho is an anti-semimeasure on measure classes,
//   square <= kl, hellinger <= kl and hellinger <= absolute for xi and
//   rho_norm against mu wherever mu(x) > 0.
PropertySuite lemma_tree_suite(std::size_t classes, std::size_t depth, std::uint64_t seed, std::size_t threads = 1);

// square <= kl, hellinger <= kl, hellinger <= absolute and nonnegativity on
// random distribution pairs over alphabets of size 2..4.
PropertySuite distance_pair_suite(std::size_t pairs, std::uint64_t seed);

// Relative slack allowed when comparing a rational square distance to a
// double-precision KL divergence.
inline constexpr double kKlRelativeTolerance = 1e-9;

}  // namespace mdl
