// Values frozen from tests/oracles/oracle.py (fractions, brute force).
#include <doctest.h>

#include <cmath>

#include "mdl/coding.hpp"
#include "mdl/metrics.hpp"
#include "mdl/stabilization.hpp"

using namespace mdl;

TEST_SUITE("oracles") {
  TEST_CASE("example 1 normalized dynamic square sums") {
    const std::pair<std::size_t, Rational> expected[] = {{2, Rational(1, 2)}, {5, Rational(2)}, {16, Rational(15, 2)}};
    for (const auto& [n, s] : expected) {
      auto l = cumulative_distances(example1_class(n), n, Mode::exact, {}, {}, {PredictorKind::rho_norm});
      CHECK(*l.total(PredictorKind::rho_norm, Metric::square).exact == s);
    }
  }

  TEST_CASE("example 2 static square sum at horizon 14") {
    auto l = cumulative_distances(example2_class(6), 14, Mode::exact, {}, {}, {PredictorKind::static_mdl});
    CHECK(*l.total(PredictorKind::static_mdl, Metric::square).exact == Rational(389999, 1048576));
  }

  TEST_CASE("three-member i.i.d. class at horizon 4") {
    auto c = bernoulli_class({Rational(1, 4), Rational(1, 2), Rational(3, 4)}, std::nullopt, 1);
    auto l = cumulative_distances(c, 4, Mode::exact, {TiePolicy::lowest_index, 0}, {},
                                  {PredictorKind::xi, PredictorKind::rho_norm, PredictorKind::rho,
                                   PredictorKind::static_mdl});
    CHECK(*l.total(PredictorKind::xi, Metric::square).exact == Rational(187447, 3175200));
    CHECK(*l.total(PredictorKind::rho_norm, Metric::square).exact == Rational(1922431, 9999392));
    CHECK(*l.total(PredictorKind::rho, Metric::square).exact == Rational(2503, 6912));
    CHECK(*l.total(PredictorKind::static_mdl, Metric::square).exact == Rational(7, 16));
  }

  TEST_CASE("example 4 ratio and calibrated changes") {
    auto tr = ratio_trace(example4_class(Rational(1, 2), Rational(1, 2)), 60);
    CHECK(to_double(tr.ratio[60]) == doctest::Approx(0.74212674098414).epsilon(1e-13));
    CHECK(tr.argmax_changes == 0);
    const Rational q = ratio_trace(example4_class(Rational(1, 2), Rational(1, 2)), 40).ratio.back();
    auto cal = ratio_trace(example4_class(Rational(q / (1 + q)), Rational(1 / (1 + q))), 60);
    CHECK(cal.argmax_changes == 41);
  }

  TEST_CASE("two-part codes of 1100") {
    auto c = bernoulli_class({Rational(1, 4), Rational(1, 2), Rational(3, 4)}, std::nullopt, 1);
    auto x = parse_sequence("1100");
    CHECK(encode(c, 0, x).bits() == "0010010111110");
    CHECK(encode(c, 1, x).bits() == "100001011100");
    CHECK(encode(c, 2, x).bits() == "1100010101110");
  }

  TEST_CASE("kraft sum") { CHECK(kraft_sum(*bernoulli(Rational(1, 3)), 4) == Rational(81, 128)); }
}
