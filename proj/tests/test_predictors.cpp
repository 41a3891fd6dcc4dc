#include <doctest.h>

#include "mdl/errors.hpp"
#include "mdl/predictors.hpp"

using namespace mdl;

namespace {
Sequence seq(const char* x) { return parse_sequence(x); }
Rational at(const PredictiveDistribution& d, std::size_t a) { return d[a].rational(); }
}  // namespace

TEST_SUITE("predictors") {
  TEST_CASE("bayes mixture") {
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK(bayes_mixture(single, seq("011")).rational() == Rational(2, 27));
    CHECK(bayes_mixture(example3_class(), seq("1")).rational() == Rational(2, 3));
    CHECK(bayes_mixture(example1_class(5), seq("111")).rational() == Rational(2, 5));
  }

  TEST_CASE("bayes predictions") {
    auto fair = bernoulli_class({Rational(1, 2)}, std::vector<Rational>{Rational(1)}, 0);
    auto f = predict_bayes(fair, seq("0110"));
    CHECK(at(f, 0) == Rational(1, 2));
    CHECK(at(f, 1) == Rational(1, 2));
    auto e3 = predict_bayes(example3_class(), {});
    CHECK(at(e3, 1) == Rational(2, 3));
    CHECK(at(e3, 0) == Rational(1, 3));
    auto e1 = predict_bayes(example1_class(5), seq("1"));
    CHECK(at(e1, 1) == Rational(3, 4));
    CHECK(at(e1, 0) == Rational(1, 4));
  }

  TEST_CASE("dynamic MDL") {
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    auto d = predict_dynamic(single, seq("10"));
    CHECK(at(d, 1) == Rational(1, 3));
    auto e1 = predict(example1_class(5), PredictorKind::rho_norm, seq("11"));
    CHECK(at(e1, 0) == Rational(1, 2));
    CHECK(at(e1, 1) == Rational(1, 2));
    auto raw = predict(example1_class(5), PredictorKind::rho, seq("11"));
    CHECK(at(raw, 0) == 1);
    CHECK(at(raw, 1) == 1);
  }

  TEST_CASE("static MDL") {
    auto c = bernoulli_class({Rational(0), Rational(1, 2)}, std::nullopt, 1);
    auto s = predict_static(c, seq("0"));
    CHECK(at(s, 0) == 1);
    CHECK(at(s, 1) == 0);
    auto e1 = predict_static(example1_class(5), seq("1"), {TiePolicy::lowest_index, 0});
    CHECK(at(e1, 0) == 1);
    CHECK(at(e1, 1) == 0);
    auto single = bernoulli_class({Rational(2, 5)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK(at(predict_static(single, seq("1")), 1) == Rational(2, 5));
  }

  TEST_CASE("static evaluates fewer maps than dynamic") {
    EvaluationCounts dyn, stat;
    auto c = example2_class(3);
    predict_dynamic(c, seq("0110"), {}, Mode::exact, &dyn);
    predict_static(c, seq("0110"), {}, Mode::exact, &stat);
    CHECK(dyn.map_searches == 3);
    CHECK(stat.map_searches == 1);
  }

  TEST_CASE("hybrid MDL") {
    auto c = example3_class();
    auto lw = predict_hybrid(c, seq("11"));
    CHECK(at(lw, 0) == Rational(1, 2));
    CHECK(at(lw, 1) == Rational(1, 2));
    auto single = bernoulli_class({Rational(1, 5)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK(at(predict_hybrid(single, seq("0")), 1) == Rational(1, 5));
  }

  TEST_CASE("normalization") {
    PredictiveDistribution ones{{Value(Rational(1)), Value(Rational(1))}, false};
    auto n = normalize(ones);
    CHECK(at(n, 0) == Rational(1, 2));
    CHECK(n.normalized);
    PredictiveDistribution p{{Value(Rational(3, 8)), Value(Rational(1, 8))}, false};
    auto q = normalize(p);
    CHECK(at(q, 0) == Rational(3, 4));
    CHECK(at(q, 1) == Rational(1, 4));
    CHECK(at(normalize(q), 0) == Rational(3, 4));
    PredictiveDistribution z{{Value(Rational(0)), Value(Rational(0))}, false};
    CHECK_THROWS(normalize(z));
  }

  TEST_CASE("normalizer product") {
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK(normalizer_product(single, seq("0101")).rational() == 1);
    // sum_a rho(xa) = 2 rho(x) while every model of example 1 survives
    CHECK(normalizer_product(example1_class(5), {}).rational() == 2);
  }

  TEST_CASE("zero history") {
    auto c = bernoulli_class({Rational(0)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK_THROWS_AS(predict_dynamic(c, seq("1")), ZeroHistory);
  }

  TEST_CASE("predict_all matches standalone predictors") {
    auto c = example2_class(4);
    auto x = seq("0111");
    auto all = predict_all(c, frontier_at(c, x), {});
    for (auto kind : kAllPredictors) {
      auto solo = predict(c, kind, x);
      for (std::size_t a = 0; a < 2; ++a) CHECK(at(all.at(kind), a) == at(solo, a));
    }
  }

  TEST_CASE("predictor names") {
    for (auto kind : kAllPredictors) CHECK(parse_predictor(to_string(kind)) == kind);
    CHECK(to_string(PredictorKind::static_mdl) == "static");
  }
}
