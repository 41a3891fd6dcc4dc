#pragma once

#include "mdl/experiments.hpp"

namespace mdl::runs {

// Declared parameters with defaults, overridden by --param values.
class Params {
 public:
  Params(const ExperimentInfo& info, const ExperimentConfig& cfg);

  const std::string& str(const std::string& key) const;
  std::size_t size(const std::string& key) const;
  double real(const std::string& key) const;
  Rational rational(const std::string& key) const;
  std::vector<Rational> rationals(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;

  std::size_t horizon = 0;
  std::size_t samples = 0;
  Mode mode = Mode::exact;

 private:
  std::map<std::string, std::string> values_;
};

void bound_suite(const ExperimentConfig&, ExperimentReport&);
void example1(const ExperimentConfig&, ExperimentReport&);
void example2_mc(const ExperimentConfig&, ExperimentReport&);
void example3_hybrid(const ExperimentConfig&, ExperimentReport&);
void example4_ratio(const ExperimentConfig&, ExperimentReport&);
void example5_martingale(const ExperimentConfig&, ExperimentReport&);
void stabilization_mc(const ExperimentConfig&, ExperimentReport&);
void loss_bounds(const ExperimentConfig&, ExperimentReport&);
void unit_square_scan(const ExperimentConfig&, ExperimentReport&);
void classification_demo(const ExperimentConfig&, ExperimentReport&);
void regression_demo(const ExperimentConfig&, ExperimentReport&);
void coding_roundtrip(const ExperimentConfig&, ExperimentReport&);

}  // namespace mdl::runs
