#include <doctest.h>

#include <cmath>

#include "mdl/decisions.hpp"
#include "mdl/errors.hpp"

using namespace mdl;

TEST_SUITE("decisions") {
  TEST_CASE("bayes optimal actions") {
    auto zo = LossFunction::zero_one();
    CHECK(bayes_optimal_action(Value(Rational(1, 3)), zo, {}) == 0);
    CHECK(bayes_optimal_action(Value(Rational(1, 2)), zo, {}) == 0);
    CHECK(bayes_optimal_action(Value(Rational(2, 3)), zo, {}) == 1);
    auto t = LossFunction::table(Rational(0), Rational(1), Rational(1, 4), Rational(0));
    CHECK(bayes_optimal_action(0.3, t, {}) == 0);
    CHECK(bayes_optimal_action(0.9, t, {}) == 1);
  }

  TEST_CASE("history dependent loss") {
    auto h = LossFunction::history_parity();
    CHECK_FALSE(h.stationary());
    auto odd = parse_sequence("1");
    auto even = parse_sequence("11");
    CHECK(h(even, 1, 0) == 1);
    CHECK(h(odd, 1, 0) == Rational(1, 2));
    CHECK(LossFunction::zero_one().stationary());
  }

  TEST_CASE("shifted loss") {
    auto t = LossFunction::table(Rational(1, 4), Rational(1), Rational(1, 2), Rational(1, 8));
    auto s = t.shifted();
    CHECK(s({}, 0, 0) == 0);
    CHECK(s({}, 0, 1) == Rational(3, 4));
    CHECK(s({}, 1, 0) == Rational(3, 8));
  }

  TEST_CASE("special functions") {
    auto same = special_functions(Rational(1, 3), Rational(1, 3));
    CHECK(same.delta == 0);
    auto corner = special_functions(1.0, 0.0);
    CHECK(corner.delta == doctest::Approx(1.0));
    CHECK(binary_hellinger(1.0, 0.0) == doctest::Approx(2.0));
    CHECK(binary_hellinger(0.5, 0.5) == 0);
  }

  TEST_CASE("unit square scan") {
    auto s = unit_square_scan(201, 2);
    CHECK(s.points == 201u * 201u);
    CHECK(s.max_violation <= 1e-12);
  }

  TEST_CASE("regret of the true model") {
    auto c = example2_class(3);
    auto tr = decision_trace(c, PredictorKind::mu, LossFunction::zero_one(), 6);
    CHECK(tr.regret.value == 0);
    CHECK(regret_report(c, tr).pass);
  }

  TEST_CASE("example 1 regret under zero-one loss") {
    auto c = example1_class(5);
    auto tr = decision_trace(c, PredictorKind::rho_norm, LossFunction::zero_one(), 4);
    REQUIRE(tr.cumulative_phi.exact);
    CHECK(*tr.cumulative_phi.exact == 4);
    CHECK(*tr.cumulative_mu.exact == 0);
    CHECK(*tr.regret.exact == 4);
    CHECK(tr.instantaneous_violations == 0);
    CHECK(regret_report(c, tr).pass);
    CHECK(cumulative_regret_report(tr).pass);
  }

  TEST_CASE("single model class has no regret") {
    auto c = bernoulli_class({Rational(2, 7)}, std::vector<Rational>{Rational(1)}, 0);
    auto t = LossFunction::table(Rational(0), Rational(1), Rational(1, 4), Rational(0));
    for (auto p : {PredictorKind::rho_norm, PredictorKind::rho, PredictorKind::static_mdl})
      CHECK(decision_trace(c, p, t, 5).regret.value == 0);
  }

  TEST_CASE("regret constants") {
    CHECK(regret_constant(PredictorKind::mu) == 2);
    CHECK(regret_constant(PredictorKind::rho_norm) == 2);
    CHECK(regret_constant(PredictorKind::rho) == 8);
    CHECK(regret_constant(PredictorKind::static_mdl) == 21);
    CHECK(regret_constant(PredictorKind::static_norm) == 32);
  }
}
