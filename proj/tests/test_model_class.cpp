#include <doctest.h>

#include <cmath>

#include "mdl/errors.hpp"
#include "mdl/model_class.hpp"

using namespace mdl;

namespace {
Sequence seq(const char* x) { return parse_sequence(x); }
}  // namespace

TEST_SUITE("model_class") {
  TEST_CASE("map estimator") {
    auto e1 = example1_class(3);
    CHECK(map_estimator(e1, seq("11")).index == 2);

    auto q = bernoulli_class({Rational(1, 4), Rational(1, 2), Rational(3, 4)}, std::nullopt, 1);
    auto m = map_estimator(q, seq("1100"));
    CHECK(m.index == 1);
    CHECK(m.value.rational() == Rational(1, 48));
    CHECK_FALSE(m.tied);
  }

  TEST_CASE("round robin alternates on the example 3 class") {
    auto c = example3_class();
    TieBreak rr{TiePolicy::round_robin, 0};
    CHECK(map_estimator(c, seq("1"), rr).index == 1);
    CHECK(map_estimator(c, seq("11"), rr).index == 0);
    CHECK(map_estimator(c, seq("111"), rr).index == 1);
    auto lw = map_estimator(c, seq("11"));
    CHECK(lw.index == 0);
    CHECK(lw.tied);
    CHECK(lw.tie_set.size() == 2);
    CHECK(map_estimator(c, seq("101"), rr).index == 1);
  }

  TEST_CASE("tie policies") {
    auto c = bernoulli_class({Rational(1, 2), Rational(1, 2), Rational(1, 3)},
                             std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)}, 0);
    auto x = seq("01");
    CHECK(map_estimator(c, x, {TiePolicy::largest_weight, 0}).index == 1);
    auto u = bernoulli_class({Rational(1, 2), Rational(1, 2)}, std::nullopt, 0);
    CHECK(map_estimator(u, x, {TiePolicy::lowest_index, 0}).index == 0);
    CHECK(map_estimator(u, x, {TiePolicy::largest_weight, 0}).index == 0);
    CHECK(map_estimator(u, x, {TiePolicy::round_robin, 1}).index == 1);
    CHECK(parse_tie_policy("round_robin") == TiePolicy::round_robin);
    CHECK_THROWS(parse_tie_policy("coin"));
  }

  TEST_CASE("log mode ties within tolerance") {
    auto c = example3_class();
    auto m = map_estimator(c, seq("11111111"), {TiePolicy::round_robin, 0}, Mode::log_float);
    CHECK(m.tied);
    CHECK(m.index == 0);
  }

  TEST_CASE("two-part values") {
    auto c = example1_class(5);
    auto x = seq("10");
    CHECK(two_part_value(c, x).rational() == Rational(1, 5));
    CHECK(two_part_value_at(c, x, x).rational() == two_part_value(c, x).rational());
    CHECK(two_part_value_at(c, seq("1"), x, {TiePolicy::lowest_index, 0}).rational() == Rational(1, 5));
    CHECK(two_part_value_at(c, seq("11"), x, {TiePolicy::lowest_index, 0}).rational() == 0);
  }

  TEST_CASE("complexity") {
    auto half = bernoulli_class({Rational(1, 3), Rational(2, 3)}, std::nullopt, 0);
    CHECK(complexity(half, 0) == doctest::Approx(1.0));
    auto fifth = bernoulli_class({Rational(1, 5), Rational(2, 5)}, std::vector<Rational>{Rational(1, 5), Rational(2, 3)}, 0);
    CHECK(complexity(fifth, 0) == doctest::Approx(std::log2(5.0)));
    CHECK(complexity(fifth, 1) == doctest::Approx(0.5849625007));
  }

  TEST_CASE("weight rules") {
    auto u = uniform_weights(4);
    CHECK(u.weights.size() == 4);
    CHECK(u.weights[2] == Rational(1, 4));
    auto g = geometric_weights(3, Rational(1, 2));
    CHECK(g.weights[0] == Rational(1, 2));
    CHECK(g.weights[2] == Rational(1, 8));
    REQUIRE(g.tail);
    CHECK(*g.tail == Rational(1, 8));
  }

  TEST_CASE("weights must not exceed one") {
    CHECK_THROWS(bernoulli_class({Rational(1, 3), Rational(2, 3)},
                                 std::vector<Rational>{Rational(2, 3), Rational(2, 3)}, 0));
  }

  TEST_CASE("example classes") {
    auto e2 = example2_class(6);
    CHECK(e2.size() == 7);
    CHECK(e2.true_weight() == Rational(1, 7));
    auto e4 = example4_class(Rational(1, 2), Rational(1, 2));
    CHECK(e4.size() == 2);
    auto e5 = example5_class();
    CHECK(e5.weight(0) == Rational(3, 7));
    CHECK(e5.weight(1) == Rational(4, 7));
    CHECK(e5.require_true_index() == 0);
  }
}
