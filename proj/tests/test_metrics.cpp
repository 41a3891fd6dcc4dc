#include <doctest.h>

#include <cmath>
#include <limits>

#include "mdl/errors.hpp"
#include "mdl/metrics.hpp"
#include "mdl/tree.hpp"

using namespace mdl;

namespace {
std::vector<Value> dist(Rational a, Rational b) { return {Value(std::move(a)), Value(std::move(b))}; }
}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("step distances") {
    auto d = step_distances(dist(Rational(1, 2), Rational(1, 2)), dist(Rational(1, 4), Rational(3, 4)));
    REQUIRE(d.square_exact);
    CHECK(*d.square_exact == Rational(1, 8));
    CHECK(*d.absolute_exact == Rational(1, 2));
    CHECK(*d.mass_gap_exact == 0);
    CHECK(d.kl == doctest::Approx(0.5 * std::log(4.0 / 3)));
    const double h = std::pow(std::sqrt(0.5) - 0.5, 2) + std::pow(std::sqrt(0.5) - std::sqrt(0.75), 2);
    CHECK(d.hellinger == doctest::Approx(h));
    CHECK(d.log_mass_gap == 0);
  }

  TEST_CASE("kl conventions") {
    auto inf = step_distances(dist(Rational(1, 2), Rational(1, 2)), dist(Rational(1), Rational(0)));
    CHECK(std::isinf(inf.kl));
    auto zero = step_distances(dist(Rational(1), Rational(0)), dist(Rational(1, 2), Rational(1, 2)));
    CHECK(zero.kl == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("unnormalized hellinger uses raw entries") {
    auto d = step_distances(dist(Rational(1, 2), Rational(1, 2)), dist(Rational(1, 2), Rational(0)));
    CHECK(d.hellinger == doctest::Approx(0.5));
    CHECK(*d.mass_gap_exact == Rational(1, 2));
    CHECK(d.log_mass_gap == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("expectations over the tree") {
    auto fair = bernoulli_class({Rational(1, 2)}, std::vector<Rational>{Rational(1)}, 0);
    auto one = expect(fair, 3, [](SymbolSpan) { return Value(Rational(1)); });
    CHECK(one.rational() == 1);
    auto ones = expect(fair, 3, [](SymbolSpan x) {
      Rational n(0);
      for (auto s : x) n += s;
      return Value(n);
    });
    CHECK(ones.rational() == Rational(3, 2));
    auto e1 = example1_class(4);
    auto path = expect(e1, 5, [](SymbolSpan x) {
      for (auto s : x)
        if (s != 1) return Value(Rational(0));
      return Value(Rational(1));
    });
    CHECK(path.rational() == 1);
  }

  TEST_CASE("ledgers for the true model vanish") {
    auto c = example2_class(3);
    auto l = cumulative_distances(c, 6, Mode::exact, {}, {}, {PredictorKind::mu});
    for (auto m : kAllMetrics) CHECK(l.total(PredictorKind::mu, m).value == 0);
  }

  TEST_CASE("example 1 ledger") {
    auto c = example1_class(5);
    auto l = cumulative_distances(c, 8);
    for (std::size_t n = 4; n <= 8; ++n) {
      const auto& q = l.cumulative(PredictorKind::rho_norm, Metric::square, n);
      REQUIRE(q.exact);
      CHECK(*q.exact == 2);
    }
    CHECK(*l.cumulative(PredictorKind::rho_norm, Metric::square, 1).exact == Rational(1, 2));
  }

  TEST_CASE("static MDL can have infinite expected KL") {
    auto c = bernoulli_class({Rational(0), Rational(1, 2)}, std::nullopt, 1);
    for (std::size_t n : {1u, 3u}) {
      auto l = cumulative_distances(c, n, Mode::exact, {}, {}, {PredictorKind::static_mdl});
      CHECK(std::isinf(l.total(PredictorKind::static_mdl, Metric::kl).value));
    }
  }

  TEST_CASE("thread count does not change the exact ledger") {
    auto c = example2_class(4);
    auto a = cumulative_distances(c, 9, Mode::exact, {}, WalkOptions{1});
    auto b = cumulative_distances(c, 9, Mode::exact, {}, WalkOptions{4});
    for (auto p : default_predictors())
      for (auto m : kAllMetrics) {
        CHECK(a.total(p, m).value == b.total(p, m).value);
        CHECK(a.total(p, m).exact == b.total(p, m).exact);
      }
  }

  TEST_CASE("monte carlo on a deterministic measure") {
    auto c = example1_class(5);
    MonteCarloOptions opt;
    opt.samples = 1000;
    opt.seed = 3;
    auto l = monte_carlo_distances(c, 10, opt);
    const auto& q = l.total(PredictorKind::rho_norm, Metric::square);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(q.std_error == doctest::Approx(0.0));
    auto fair = bernoulli_class({Rational(1, 2)}, std::vector<Rational>{Rational(1)}, 0);
    auto z = monte_carlo_distances(fair, 10, opt);
    for (auto p : default_predictors()) CHECK(z.total(p, Metric::square).value == doctest::Approx(0.0));
  }

  TEST_CASE("bound table") {
    CHECK(bound_table().size() == 14);
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    for (const auto& r : check_bounds(single, 5)) {
      CHECK(r.pass);
      CHECK(r.measured == 0);
      CHECK(r.bound >= 0);
    }
    bool seen = false;
    for (const auto& r : check_bounds(example1_class(5), 5)) {
      CHECK(r.pass);
      if (r.predictor == "rho_norm" && r.metric == "square" && r.bound_name == "2 w^-1") {
        seen = true;
        CHECK(*r.bound_exact == 10);
        CHECK(*r.measured_exact == 2);
        CHECK(*r.slack_exact == 8);
      }
    }
    CHECK(seen);
  }

  TEST_CASE("bound values") {
    const Rational w(1, 7);
    for (const auto& spec : bound_table()) {
      double v = bound_value(spec, w);
      switch (spec.form) {
        case BoundForm::log_inverse: CHECK(v == doctest::Approx(std::log(7.0))); break;
        case BoundForm::inverse_plus_log: CHECK(v == doctest::Approx(7 + std::log(7.0))); break;
        case BoundForm::multiple: CHECK(v == doctest::Approx(7.0 * spec.constant)); break;
      }
    }
  }

  TEST_CASE("budget") {
    auto c = bernoulli_class({Rational(1, 3), Rational(1, 2)}, std::nullopt, 1);
    CHECK_THROWS_AS(cumulative_distances(c, 40), TooLarge);
  }
}
