#include <doctest.h>

#include <cmath>

#include "mdl/conditional.hpp"
#include "mdl/predictors.hpp"

using namespace mdl;

namespace {
ConditionalClass label_noise() {
  ConditionalClass c;
  c.models = {std::make_shared<LabelNoiseModel>(Rational(1, 4)), std::make_shared<LabelNoiseModel>(Rational(3, 4))};
  c.weights = {Rational(1, 2), Rational(1, 2)};
  c.true_index = 1;
  return c;
}
}  // namespace

TEST_SUITE("conditional") {
  TEST_CASE("label noise classification") {
    auto c = label_noise();
    auto s = classify_static(c, {0, 0, 0}, parse_sequence("00"));
    CHECK(s[0].rational() == Rational(3, 4));
    CHECK(s[1].rational() == Rational(1, 4));
    auto d = classify_dynamic(c, {0, 0, 0}, parse_sequence("00"));
    CHECK(d[0].rational() == Rational(3, 4));
    CHECK(d[1].rational() == Rational(1, 4));
  }

  TEST_CASE("single conditional model") {
    ConditionalClass c;
    c.models = {std::make_shared<LabelNoiseModel>(Rational(2, 3))};
    c.weights = {Rational(1)};
    auto s = classify_static(c, {1, 0}, parse_sequence("1"));
    CHECK(s[0].rational() == Rational(2, 3));
  }

  TEST_CASE("input free models reduce to sequence prediction") {
    ConditionalClass c;
    c.models = {std::make_shared<InputFreeModel>(std::vector<Rational>{Rational(3, 4), Rational(1, 4)}, 2),
                std::make_shared<InputFreeModel>(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}, 2)};
    c.weights = {Rational(1, 2), Rational(1, 2)};
    auto seqclass = bernoulli_class({Rational(1, 4), Rational(1, 2)}, std::nullopt, 0);
    auto x = parse_sequence("101");
    std::vector<std::size_t> u{1, 0, 1, 1};
    for (auto kind : {PredictorKind::static_mdl, PredictorKind::rho, PredictorKind::rho_norm}) {
      auto a = classify(c, kind, u, x);
      auto b = predict(seqclass, kind, x);
      CHECK(a[0].rational() == b[0].rational());
      CHECK(a[1].rational() == b[1].rational());
    }
  }

  TEST_CASE("regression map") {
    DensityClass c;
    c.models = {std::make_shared<GaussianModel>(0, 0, 1), std::make_shared<GaussianModel>(1, 0, 1)};
    c.weights = {Rational(1, 2), Rational(1, 2)};
    CHECK(regression_map(c, {0, 0}, {0.1, -0.2}) == 0);
    CHECK(regression_map(c, {0}, {0.9}) == 1);
    CHECK(regression_map(c, {0}, {0.5}) == 0);
    DensityClass one{{std::make_shared<GaussianModel>(2, 1, 0.5)}, {Rational(1)}, 0};
    CHECK(regression_map(one, {0.3}, {7.0}) == 0);
  }

  TEST_CASE("hellinger distance of densities") {
    GaussianModel a(0, 0, 1), b(1, 0, 1);
    CHECK(hellinger_density(a, a, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hellinger_density(*unit_box(0), *unit_box(2), 0) == doctest::Approx(2.0));
    CHECK(hellinger_density(a, b, 0) == doctest::Approx(2 - 2 * std::exp(-0.125)).epsilon(1e-9));
    CHECK(gaussian_hellinger(0, 1, 1, 1) == doctest::Approx(0.23500619483080909));
    CHECK(gaussian_hellinger(0, 1, 0, 2) == doctest::Approx(2 - 2 * std::sqrt(0.8)));
  }

  TEST_CASE("quadrature") {
    QuadratureSpec q;
    q.breaks = {0, 1};
    CHECK(integrate([](double x) { return x * x; }, q) == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("step densities") {
    for (unsigned n : {3u, 9u, 27u}) {
      auto r = step_density_density_demo(n);
      CHECK(std::abs(r.square_distance - 2.0 * n / 9) <= 1e-8);
      CHECK(std::abs(r.kl - std::log(2.0) / 3) <= 1e-8);
    }
    auto r3 = step_density_density_demo(3), r9 = step_density_density_demo(9);
    CHECK(r9.square_distance / r3.square_distance == doctest::Approx(3.0));
  }

  TEST_CASE("gaussian bound") {
    GaussianModel g(0, 0, 0.5);
    CHECK(g.bound() == doctest::Approx(1 / (kSigmaMin * std::sqrt(2 * M_PI))));
    CHECK(g.density(0, 0) == doctest::Approx(1 / (0.5 * std::sqrt(2 * M_PI))));
    CHECK(g.density(0, 0) <= g.bound());
    CHECK_THROWS(GaussianModel(0, 0, 1e-4));
  }
}
